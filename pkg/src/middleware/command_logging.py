"""
Command middleware for the iplkit CLI
Wraps every command callback with invocation logging, slow-command warnings
and the mapping from service errors to exit codes
"""
import time
import uuid
from typing import Any, Callable, Dict, Optional, Tuple, Type

import click

from src.config.logging_config import get_logger, log_command_invocation, log_command_result
from src.utils.errors import (
    DecisionBudgetExceeded, FormulaSyntaxError, FragmentTooLargeError, InputFileError, ModelFileError,
    ProofFileError,
)

# Get logger for this module
logger = get_logger(__name__)

CommandHandler = Callable[..., int]

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_BUDGET = 4

# First matching row wins
ERROR_EXIT_CODES: Tuple[Tuple[Tuple[Type[BaseException], ...], int], ...] = (
    ((click.UsageError, FormulaSyntaxError, ProofFileError, RecursionError), EXIT_USAGE),
    ((InputFileError, ModelFileError, OSError), EXIT_IO),
    ((DecisionBudgetExceeded, FragmentTooLargeError), EXIT_BUDGET),
)


class CommandMiddleware:
    """
    Base class: a middleware is itself a command handler wrapping the next one
    """

    def __init__(self, app: CommandHandler, command: str):
        self.app = app
        self.command = command

    def __call__(self, **params: Any) -> int:
        return self.dispatch(params, lambda: self.app(**params))

    def dispatch(self, params: Dict[str, Any], call_next: Callable[[], int]) -> int:
        raise NotImplementedError


class CommandLoggingMiddleware(CommandMiddleware):
    """
    Logs every command invocation and its exit code under a shared run id
    """

    def dispatch(self, params: Dict[str, Any], call_next: Callable[[], int]) -> int:
        run_id = str(uuid.uuid4())
        start_time = time.time()

        log_command_invocation(self.command, {k: str(v) for k, v in params.items()}, run_id)

        try:
            exit_code = call_next()
        except Exception as e:
            execution_time = (time.time() - start_time) * 1000
            logger.error(f"Command failed", extra={
                'run_id': run_id,
                'command': self.command,
                'error': str(e),
                'exception_type': type(e).__name__,
                'execution_time': execution_time,
            }, exc_info=True)
            raise

        execution_time = (time.time() - start_time) * 1000
        log_command_result(self.command, exit_code, execution_time, run_id)
        return exit_code


class PerformanceLoggingMiddleware(CommandMiddleware):
    """
    Warns about commands slower than the configured threshold
    """

    def __init__(self, app: CommandHandler, command: str, slow_command_threshold: float = 2000.0):
        super().__init__(app, command)
        self.slow_command_threshold = slow_command_threshold  # milliseconds

    def dispatch(self, params: Dict[str, Any], call_next: Callable[[], int]) -> int:
        start_time = time.time()

        exit_code = call_next()

        execution_time = (time.time() - start_time) * 1000
        if execution_time > self.slow_command_threshold:
            logger.warning(f"Slow command detected", extra={
                'command': self.command,
                'execution_time': execution_time,
                'threshold_ms': self.slow_command_threshold,
                'exit_code': exit_code,
            })

        logger.debug(f"Performance metrics", extra={
            'command': self.command,
            'execution_time': execution_time,
            'exit_code': exit_code,
        })
        return exit_code


class ErrorMappingMiddleware(CommandMiddleware):
    """
    Turns service errors into exit codes with a one-line message on stderr

    A syntax error is the negative answer of `parse`, so there it maps to 1.
    Formulas nested deeper than the interpreter stack are usage errors.
    Anything unmapped propagates.
    """

    def dispatch(self, params: Dict[str, Any], call_next: Callable[[], int]) -> int:
        try:
            return call_next()
        except Exception as e:
            exit_code = exit_code_for(e, self.command)
            if exit_code is None:
                raise
            if isinstance(e, RecursionError):
                message = "input nests too deeply"
            elif isinstance(e, click.ClickException):
                message = e.format_message()
            else:
                message = str(e)
            click.echo(f"Error: {message}", err=True)
            logger.debug(f"{type(e).__name__} mapped to exit {exit_code}", extra={
                'command': self.command,
                'exit_code': exit_code,
            })
            return exit_code


def exit_code_for(error: BaseException, command: str = "") -> Optional[int]:
    if isinstance(error, FormulaSyntaxError) and command == "parse":
        return EXIT_NEGATIVE
    for error_types, exit_code in ERROR_EXIT_CODES:
        if isinstance(error, error_types):
            return exit_code
    return None
