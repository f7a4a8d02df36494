import click

from src.config.logging_config import get_logger
from src.middleware.command_logging import EXIT_OK
from src.services.syntax_service import encode, parse, print_formula

# Get logger for this module
logger = get_logger(__name__)

syntax_commands = click.Group("syntax")


@syntax_commands.command("parse")
@click.argument("formula")
@click.option("--unicode", "use_unicode", is_flag=True, help="Print with ⊃ ∨ ∧ ⊥.")
@click.option("--code", "show_code", is_flag=True, help="Also print the Gödel code.")
def parse_command(formula: str, use_unicode: bool, show_code: bool) -> int:
    """
    Echo the canonical printing of FORMULA, or report the syntax error
    """
    p = parse(formula)
    click.echo(print_formula(p, unicode=use_unicode))
    if show_code:
        click.echo(encode(p))
    return EXIT_OK
