"""
Logging configuration for iplkit
Provides structured, contextual logging with proper formatting and handlers
"""
import logging
import logging.handlers
import json
import os
import sys
from datetime import datetime
from typing import Dict, Any, Optional
from pathlib import Path


ROOT_LOGGER_NAME = "iplkit"

# Extra fields carried over from `extra=` into both formatters
CONTEXT_FIELDS = (
    "run_id",
    "command",
    "exit_code",
    "formula",
    "context_size",
    "verdict",
    "stage",
    "code",
    "worlds",
)


class StructuredFormatter(logging.Formatter):
    """
    JSON formatter for file logs and machine-readable console output
    """

    def format(self, record: logging.LogRecord) -> str:
        log_data = {
            "timestamp": datetime.utcnow().isoformat() + "Z",
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "module": record.module,
            "function": record.funcName,
            "line": record.lineno,
        }

        if record.exc_info:
            log_data["exception"] = self.formatException(record.exc_info)

        for field in CONTEXT_FIELDS:
            if hasattr(record, field):
                log_data[field] = getattr(record, field)
        if hasattr(record, "execution_time"):
            log_data["execution_time_ms"] = record.execution_time

        return json.dumps(log_data, ensure_ascii=False, default=str)


class ConsoleFormatter(logging.Formatter):
    """
    Human-readable console formatter
    """

    COLORS = {
        'DEBUG': '\033[36m',     # Cyan
        'INFO': '\033[32m',      # Green
        'WARNING': '\033[33m',   # Yellow
        'ERROR': '\033[31m',     # Red
        'CRITICAL': '\033[35m',  # Magenta
        'RESET': '\033[0m'
    }

    def format(self, record: logging.LogRecord) -> str:
        levelname = record.levelname
        if hasattr(sys.stderr, 'isatty') and sys.stderr.isatty():
            color = self.COLORS.get(levelname, self.COLORS['RESET'])
            levelname = f"{color}{levelname}{self.COLORS['RESET']}"

        # Format: [TIMESTAMP] LEVEL [MODULE.FUNCTION:LINE] [context] MESSAGE
        timestamp = datetime.fromtimestamp(record.created).strftime('%Y-%m-%d %H:%M:%S')

        context = ""
        if hasattr(record, 'run_id'):
            context += f" [run:{str(record.run_id)[:8]}]"
        if hasattr(record, 'command'):
            context += f" [cmd:{record.command}]"

        base_msg = f"[{timestamp}] {levelname:<8} [{record.module}.{record.funcName}:{record.lineno}]{context} {record.getMessage()}"

        if record.exc_info:
            base_msg += f"\n{self.formatException(record.exc_info)}"

        return base_msg


def setup_logging(
    log_level: str = "WARNING",
    log_to_file: bool = False,
    log_to_console: bool = True,
    log_file_path: Optional[str] = None,
    max_file_size: int = 10 * 1024 * 1024,  # 10MB
    backup_count: int = 5,
    json_format: bool = False
) -> logging.Logger:
    """
    Setup logging for iplkit

    The console handler writes to stderr: stdout belongs to command results
    (model files, verdicts, traces).

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_to_file: Whether to log to file
        log_to_console: Whether to log to stderr
        log_file_path: Custom log file path
        max_file_size: Max size of log file before rotation
        backup_count: Number of backup files to keep
        json_format: Use JSON format on the console as well

    Returns:
        Configured root logger of the iplkit hierarchy
    """
    if log_to_file:
        if log_file_path is None:
            log_file_path = "logs/iplkit.log"
        Path(log_file_path).parent.mkdir(parents=True, exist_ok=True)

    level = getattr(logging, log_level.upper(), logging.WARNING)

    logger = logging.getLogger(ROOT_LOGGER_NAME)
    logger.setLevel(level)
    logger.handlers.clear()
    logger.propagate = False

    if log_to_console:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(level)
        if json_format:
            console_handler.setFormatter(StructuredFormatter())
        else:
            console_handler.setFormatter(ConsoleFormatter())
        logger.addHandler(console_handler)

    if log_to_file:
        file_handler = logging.handlers.RotatingFileHandler(
            log_file_path,
            maxBytes=max_file_size,
            backupCount=backup_count,
            encoding='utf-8'
        )
        file_handler.setLevel(level)
        # File logs are always structured
        file_handler.setFormatter(StructuredFormatter())
        logger.addHandler(file_handler)

        error_file_path = log_file_path.replace('.log', '-errors.log')
        error_handler = logging.handlers.RotatingFileHandler(
            error_file_path,
            maxBytes=max_file_size,
            backupCount=backup_count,
            encoding='utf-8'
        )
        error_handler.setLevel(logging.ERROR)
        error_handler.setFormatter(StructuredFormatter())
        logger.addHandler(error_handler)

    return logger


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """
    Get a logger instance for a specific module

    Args:
        name: Logger name (usually __name__)

    Returns:
        Logger inside the iplkit hierarchy
    """
    if name is None:
        return logging.getLogger(ROOT_LOGGER_NAME)

    if not name.startswith(ROOT_LOGGER_NAME):
        name = f"{ROOT_LOGGER_NAME}.{name}"

    return logging.getLogger(name)


def log_function_call(func_name: str, args: Optional[Dict[str, Any]] = None):
    """
    Log a library operation call at DEBUG level

    Args:
        func_name: Name of the operation being called
        args: Arguments to log (already rendered to text where they are formulas)
    """
    logger = get_logger("function_calls")
    if args:
        logger.debug(f"Calling {func_name} with args: {args}")
    else:
        logger.debug(f"Calling {func_name}")


def log_command_invocation(command: str, params: Dict[str, Any], run_id: str):
    """
    Log a CLI command invocation

    Args:
        command: Subcommand name
        params: Parsed command parameters
        run_id: Identifier shared by all records of this invocation
    """
    logger = get_logger("commands")
    logger.info(f"{command} invoked", extra={
        'command': command,
        'run_id': run_id,
        'params': params,
    })


def log_command_result(command: str, exit_code: int, execution_time: float, run_id: str):
    """
    Log the outcome of a CLI command

    Args:
        command: Subcommand name
        exit_code: Process exit code the command resolved to
        execution_time: Execution time in milliseconds
        run_id: Identifier shared by all records of this invocation
    """
    logger = get_logger("commands")
    extra = {
        'command': command,
        'exit_code': exit_code,
        'execution_time': execution_time,
        'run_id': run_id,
    }
    if exit_code >= 2:
        logger.error(f"{command} - exit {exit_code}", extra=extra)
    else:
        logger.info(f"{command} - exit {exit_code}", extra=extra)


def log_oracle_query(formula: str, context_size: int, verdict: str, execution_time: Optional[float] = None):
    """
    Log a derivability query answered by the decision service

    Args:
        formula: Queried formula, printed
        context_size: Number of context formulas
        verdict: provable / refuted
        execution_time: Execution time in milliseconds
    """
    logger = get_logger("oracle")
    extra = {
        'formula': formula,
        'context_size': context_size,
        'verdict': verdict,
    }
    if execution_time is not None:
        extra['execution_time'] = execution_time

    logger.debug(f"Derivability of {formula} from {context_size} formulas: {verdict}", extra=extra)


def init_logging():
    """Initialize logging with environment-based configuration"""
    log_level = os.getenv("LOG_LEVEL", "WARNING")
    log_to_file = os.getenv("LOG_TO_FILE", "false").lower() == "true"
    log_to_console = os.getenv("LOG_TO_CONSOLE", "true").lower() == "true"
    json_format = os.getenv("LOG_JSON_FORMAT", "false").lower() == "true"
    log_file_path = os.getenv("LOG_FILE_PATH", "logs/iplkit.log")

    return setup_logging(
        log_level=log_level,
        log_to_file=log_to_file,
        log_to_console=log_to_console,
        log_file_path=log_file_path,
        json_format=json_format
    )
