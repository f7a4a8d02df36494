"""
Formula grammar and parser

Precedence, tightest first: ~, &, |, ->. The arrow associates to the right,
& and | to the left. Unicode aliases ⊃ ∨ ∧ ⊥ ¬ are accepted on input.
"""
from pathlib import Path
from typing import FrozenSet

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from src.config.logging_config import get_logger
from src.models.Formula_Model import BOT, And, Atom, Formula, Impl, Or
from src.utils.errors import FormulaSyntaxError, InputFileError

# Get logger for this module
logger = get_logger(__name__)

FORMULA_GRAMMAR = r"""
    ?start: impl

    ?impl: disj
         | disj ARROW impl      -> implication

    ?disj: conj
         | disj OR conj         -> disjunction

    ?conj: neg
         | conj AND neg         -> conjunction

    ?neg: NOT neg               -> negation
        | atom

    ?atom: ATOM                 -> atom
         | FALSE                -> falsum
         | "(" impl ")"

    ARROW: "->" | "⊃"
    OR: "|" | "∨"
    AND: "&" | "∧"
    NOT: "~" | "¬"
    FALSE: "false" | "⊥"
    ATOM: "p" /[0-9]+/

    %import common.WS
    %ignore WS
"""


@v_args(inline=True)
class FormulaTransformer(Transformer):
    """Builds Formula nodes bottom-up from the parse tree"""

    def implication(self, lhs, _arrow, rhs):
        return Impl(lhs, rhs)

    def disjunction(self, lhs, _op, rhs):
        return Or(lhs, rhs)

    def conjunction(self, lhs, _op, rhs):
        return And(lhs, rhs)

    def negation(self, _op, body):
        return Impl(body, BOT)

    def atom(self, token):
        return Atom(int(token[1:]))

    def falsum(self, _token):
        return BOT


_parser = Lark(FORMULA_GRAMMAR, parser="lalr", transformer=FormulaTransformer())


def _byte_offset(text: str, char_offset: int) -> int:
    return len(text[:char_offset].encode("utf-8"))


def parse_formula(text: str) -> Formula:
    """
    Parse formula text

    Raises:
        FormulaSyntaxError: with the byte offset of the offending input and
            the names of the tokens that would have been accepted there
    """
    try:
        return _parser.parse(text)
    except UnexpectedEOF as e:
        raise FormulaSyntaxError(text, _byte_offset(text, len(text)), e.expected) from None
    except UnexpectedToken as e:
        position = e.token.start_pos if e.token.start_pos is not None else len(text)
        if e.token.type == "$END":
            position = len(text)
        raise FormulaSyntaxError(text, _byte_offset(text, position), e.expected) from None
    except UnexpectedCharacters as e:
        raise FormulaSyntaxError(text, _byte_offset(text, e.pos_in_stream), e.allowed or ()) from None
    except UnexpectedInput as e:
        position = getattr(e, "pos_in_stream", None)
        position = len(text) if position is None or position < 0 else position
        raise FormulaSyntaxError(text, _byte_offset(text, position), ()) from None


def parse_context(argument: str) -> FrozenSet[Formula]:
    """
    Parse a context argument

    An argument naming an existing file is read as one formula per non-empty
    line ('#' starts a comment line). Anything else is the inline syntax:
    comma-separated formulas, the empty string being the empty context.
    """
    path = Path(argument) if argument and "," not in argument else None
    if path is not None and path.is_file():
        logger.debug(f"Reading context from file {argument}")
        try:
            lines = path.read_text(encoding="utf-8").splitlines()
        except OSError as e:
            raise InputFileError(f"cannot read context file {argument}: {e.strerror}") from None
        except UnicodeDecodeError:
            raise InputFileError(f"context file {argument} is not UTF-8 text") from None
        return frozenset(
            parse_formula(line) for line in lines
            if line.strip() and not line.lstrip().startswith("#")
        )

    return frozenset(parse_formula(part) for part in argument.split(",") if part.strip())
