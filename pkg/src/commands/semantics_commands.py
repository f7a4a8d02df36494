import click

from src.config.logging_config import get_logger
from src.middleware.command_logging import EXIT_OK
from src.models.Formula_Model import Atom, Neg, Or
from src.services.semantics_service import (
    ForcingEvaluator, build_lem_countermodel, designated_name, forces,
)
from src.services.syntax_service import parse, print_formula
from src.utils.model_file_util import load_model

# Get logger for this module
logger = get_logger(__name__)

semantics_commands = click.Group("semantics")


@semantics_commands.command("eval")
@click.argument("model_file")
@click.argument("world", type=int)
@click.argument("formula")
def eval_command(model_file: str, world: int, formula: str) -> int:
    """
    Print whether WORLD of the model in MODEL_FILE forces FORMULA
    """
    model, _ = load_model(model_file)
    if world not in model.worlds:
        raise click.BadParameter(f"world {world} is not in the model", param_hint="WORLD")
    click.echo("true" if forces(model, world, parse(formula)) else "false")
    return EXIT_OK


@semantics_commands.command("lem-demo")
@click.option("--atom", default=0, show_default=True, type=click.IntRange(min=0), help="Atom index of p.")
def lem_demo_command(atom: int) -> int:
    """
    Show the two-world model refuting excluded middle
    """
    model, root = build_lem_countermodel(atom)
    p = Atom(atom)
    click.echo("worlds: " + " ".join(designated_name(w) for w in model.worlds))
    click.echo("rel: " + " ".join(f"{designated_name(w)}->{designated_name(v)}" for w, v in sorted(model.rel)))
    click.echo("val: " + " ".join(f"p{a}@{designated_name(w)}" for a, w in sorted(model.val)))

    evaluator = ForcingEvaluator(model)
    for w in model.worlds:
        for q in (p, Neg(p), Or(p, Neg(p))):
            sign = "⊩" if evaluator.forces(w, q) else "⊮"
            click.echo(f"{designated_name(w)} {sign} {print_formula(q, unicode=True)}")
    logger.debug(f"Excluded middle fails at {designated_name(root)}")
    return EXIT_OK
