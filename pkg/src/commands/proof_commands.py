import click

from src.config.logging_config import get_logger
from src.middleware.command_logging import EXIT_NEGATIVE, EXIT_OK
from src.services.proof_service import check
from src.services.syntax_service import parse
from src.utils.formula_parser import parse_context
from src.utils.proof_file_util import load_proof

# Get logger for this module
logger = get_logger(__name__)

proof_commands = click.Group("proof")


@proof_commands.command("check-proof")
@click.argument("proof_file")
@click.argument("context")
@click.argument("goal")
def check_proof_command(proof_file: str, context: str, goal: str) -> int:
    """
    Check the derivation in PROOF_FILE against CONTEXT ⊢ GOAL
    """
    d = load_proof(proof_file)
    verdict = check(d, parse_context(context), parse(goal))
    if verdict.accepted:
        click.echo("accepted")
        return EXIT_OK

    logger.info(f"Derivation rejected at {verdict.path_text}", extra={'verdict': verdict.reason.value})
    click.echo(f"rejected at {verdict.path_text}: {verdict.reason.value}")
    return EXIT_NEGATIVE
