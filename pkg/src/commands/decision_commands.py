import click

from src.config.logging_config import get_logger
from src.middleware.command_logging import EXIT_NEGATIVE, EXIT_OK
from src.services.decision_service import derivable
from src.services.syntax_service import parse
from src.utils.formula_parser import parse_context
from src.utils.model_file_util import format_model, model_to_dot

# Get logger for this module
logger = get_logger(__name__)

decision_commands = click.Group("decision")


@decision_commands.command("decide")
@click.argument("context")
@click.argument("formula")
@click.option("--dot", is_flag=True, help="Print the countermodel as GraphViz DOT.")
def decide_command(context: str, formula: str, dot: bool) -> int:
    """
    Decide CONTEXT ⊢ FORMULA; print "provable" or a countermodel file
    """
    result = derivable(parse_context(context), parse(formula))
    if result.provable:
        click.echo("provable")
        return EXIT_OK

    render = model_to_dot if dot else format_model
    click.echo(render(result.model, result.world), nl=False)
    return EXIT_NEGATIVE
