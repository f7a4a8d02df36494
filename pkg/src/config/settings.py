from pydantic.v1 import BaseSettings

from src.config.logging_config import init_logging, get_logger

# Initialize logging before anything else logs
init_logging()

# Get logger for this module
logger = get_logger(__name__)


class Settings(BaseSettings):
    class Config:
        env_file = ".env"

    debug: bool = False

    # Decision procedure
    DECISION_STEP_BUDGET: int = 2_000_000  # sequents expanded per query
    DECISION_CACHE_SIZE: int = 200_000

    # Henkin construction
    CANONICAL_FRAGMENT_BOUND: int = 14
    HENKIN_DEFAULT_STAGES: int = 3

    # Soundness fuzzing
    FUZZ_DEFAULT_ATOMS: int = 3

    # Command middleware
    SLOW_COMMAND_THRESHOLD_MS: float = 2000.0

    # Logging Configuration
    LOG_LEVEL: str = "WARNING"
    LOG_TO_FILE: bool = False
    LOG_TO_CONSOLE: bool = True
    LOG_JSON_FORMAT: bool = False
    LOG_FILE_PATH: str = "logs/iplkit.log"


settings = Settings()

logger.info("iplkit configuration loaded", extra={
    'config': {
        'debug': settings.debug,
        'decision_step_budget': settings.DECISION_STEP_BUDGET,
        'canonical_fragment_bound': settings.CANONICAL_FRAGMENT_BOUND,
        'henkin_default_stages': settings.HENKIN_DEFAULT_STAGES,
        'log_level': settings.LOG_LEVEL,
    }
})
