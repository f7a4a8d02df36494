import click

from src.config.logging_config import get_logger
from src.config.settings import settings
from src.middleware.command_logging import EXIT_NEGATIVE, EXIT_OK
from src.services.soundness_service import fuzz_soundness
from src.services.syntax_service import print_context, print_formula
from src.utils.model_file_util import format_model

# Get logger for this module
logger = get_logger(__name__)

soundness_commands = click.Group("soundness")


@soundness_commands.command("soundness-fuzz")
@click.option("--seeds", default=500, show_default=True, type=click.IntRange(min=0))
@click.option("--depth", default=6, show_default=True, type=click.IntRange(min=0))
@click.option("--max-worlds", default=3, show_default=True, type=click.IntRange(min=1))
@click.option("--atoms", default=settings.FUZZ_DEFAULT_ATOMS, show_default=True, type=click.IntRange(min=1))
def soundness_fuzz_command(seeds: int, depth: int, max_worlds: int, atoms: int) -> int:
    """
    Check random accepted derivations against every model up to MAX_WORLDS worlds
    """
    report = fuzz_soundness(seeds, depth, max_worlds, tuple(range(atoms)))
    for violation in report.violations:
        click.echo(f"seed {violation.seed}: {print_context(violation.context)} ⊢ "
                   f"{print_formula(violation.conclusion)} fails at world {violation.world} of")
        click.echo(format_model(violation.model), nl=False)
    click.echo(f"{report.derivations} derivations, {report.models_checked} models, "
               f"{len(report.violations)} violations")
    return EXIT_OK if report.ok else EXIT_NEGATIVE
