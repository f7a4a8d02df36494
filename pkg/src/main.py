import sys
from typing import List, Optional, Type

import click

from src.commands.decision_commands import decision_commands
from src.commands.henkin_commands import henkin_commands
from src.commands.proof_commands import proof_commands
from src.commands.semantics_commands import semantics_commands
from src.commands.soundness_commands import soundness_commands
from src.commands.syntax_commands import syntax_commands
from src.config.logging_config import get_logger
from src.config.settings import settings
from src.middleware.command_logging import (
    EXIT_USAGE, CommandLoggingMiddleware, CommandMiddleware, ErrorMappingMiddleware,
    PerformanceLoggingMiddleware,
)

# Get logger for this module
logger = get_logger(__name__)


@click.group("iplkit", context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option("1.0.0", prog_name="iplkit")
def cli() -> None:
    """
    Intuitionistic propositional logic toolkit: proofs, Kripke models,
    a decision procedure and the Henkin canonical model
    """


def add_middleware(command: click.Command, middleware_class: Type[CommandMiddleware], **options) -> None:
    command.callback = middleware_class(command.callback, command.name, **options)


def _exit_with_code(command: click.Command) -> None:
    handler = command.callback

    def callback(**params) -> None:
        exit_code = handler(**params)
        if exit_code:
            raise click.exceptions.Exit(exit_code)

    command.callback = callback


def include_commands(group: click.Group) -> None:
    for command in group.commands.values():
        # Innermost first: error mapping sees service exceptions, logging sees the mapped code
        add_middleware(command, ErrorMappingMiddleware)
        add_middleware(command, PerformanceLoggingMiddleware,
                       slow_command_threshold=settings.SLOW_COMMAND_THRESHOLD_MS)
        add_middleware(command, CommandLoggingMiddleware)
        _exit_with_code(command)
        cli.add_command(command)


include_commands(syntax_commands)
include_commands(proof_commands)
include_commands(semantics_commands)
include_commands(decision_commands)
include_commands(henkin_commands)
include_commands(soundness_commands)


def run(argv: Optional[List[str]] = None) -> int:
    """
    Run the CLI on argv (defaults to sys.argv[1:]) and return the exit code
    """
    args = sys.argv[1:] if argv is None else list(argv)
    try:
        result = cli.main(args=args, prog_name="iplkit", standalone_mode=False)
    except click.UsageError as e:
        e.show()
        return EXIT_USAGE
    except click.Abort:
        click.echo("Aborted!", err=True)
        return 1
    # --help and --version return None
    return result if isinstance(result, int) else 0


if __name__ == "__main__":
    sys.exit(run())
