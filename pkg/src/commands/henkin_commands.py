from typing import Optional

import click

from src.config.logging_config import get_logger
from src.config.settings import settings
from src.middleware.command_logging import EXIT_NEGATIVE, EXIT_OK
from src.models.Theory_Model import InsertionStep, Theory
from src.services.decision_service import is_derivable
from src.services.henkin_service import countermodel, prime_trace
from src.services.syntax_service import code_bound_for, fragment_of, parse, print_context, print_formula
from src.utils.formula_parser import parse_context
from src.utils.model_file_util import format_model, model_to_dot

# Get logger for this module
logger = get_logger(__name__)

henkin_commands = click.Group("henkin")


@henkin_commands.command("countermodel")
@click.argument("context")
@click.argument("formula")
@click.option("--dot", is_flag=True, help="Print the countermodel as GraphViz DOT.")
def countermodel_command(context: str, formula: str, dot: bool) -> int:
    """
    Refute CONTEXT ⊢ FORMULA in the canonical model of their fragment
    """
    found = countermodel(parse_context(context), parse(formula))
    if found is None:
        click.echo("provable")
        return EXIT_OK

    model, world = found
    render = model_to_dot if dot else format_model
    click.echo(render(model, world), nl=False)
    return EXIT_NEGATIVE


@henkin_commands.command("henkin-demo")
@click.argument("context")
@click.argument("formula")
@click.option("--stages", default=settings.HENKIN_DEFAULT_STAGES, show_default=True,
              type=click.IntRange(min=0), help="Number of stages of the tower.")
@click.option("--codes", default=None, type=click.IntRange(min=0),
              help="Code bound; defaults to max code over the fragment + 1.")
def henkin_demo_command(context: str, formula: str, stages: int, codes: Optional[int]) -> int:
    """
    Trace the prime extension of CONTEXT avoiding FORMULA stage by stage
    """
    ctx = parse_context(context)
    r = parse(formula)
    if is_derivable(ctx, r):
        click.echo("provable")
        return EXIT_OK

    code_bound = codes if codes is not None else code_bound_for(fragment_of(*ctx, r))
    click.echo(f"avoiding {print_formula(r, unicode=True)}, codes below {code_bound}")
    last = ctx
    for event in prime_trace(Theory(formulas=ctx, goal=r), r, stages, code_bound):
        if isinstance(event, InsertionStep):
            click.echo(f"  stage {event.stage} code {event.code}: "
                       f"{print_formula(event.disjunction, unicode=True)}, added {print_formula(event.added, unicode=True)}")
        else:
            stage, formulas = event
            click.echo(f"Γ{stage} = {print_context(formulas, unicode=True)}")
            last = formulas
    avoids = not is_derivable(last, r)
    click.echo(f"Γ{stages} ⊬ {print_formula(r, unicode=True)}: {'yes' if avoids else 'no'}")
    return EXIT_OK if avoids else EXIT_NEGATIVE
