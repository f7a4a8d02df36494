"""
Proof file format

S-expressions with one constructor per node and formulas as quoted grammar
strings, e.g.

    (mp (mp (s "p0" "p0 -> p0" "p0") (k "p0" "p0 -> p0")) (k "p0" "p0"))

(ax "p0") refers to a context member.
"""
import json
from dataclasses import fields
from pathlib import Path
from typing import Union

from lark import Lark, Transformer
from lark.exceptions import LarkError, VisitError

from src.config.logging_config import get_logger
from src.models.Proof_Model import (
    NODE_NAMES, Ax, Case, Derivation, Exf, Inl, Inr, K, Mp, Pair, Pr1, Pr2, S,
)
from src.services.syntax_service import print_formula
from src.utils.errors import FormulaSyntaxError, InputFileError, ProofFileError
from src.utils.formula_parser import parse_formula

# Get logger for this module
logger = get_logger(__name__)

PROOF_GRAMMAR = r"""
    start: node
    node: "(" NAME arg* ")"
    ?arg: node
        | ESCAPED_STRING   -> formula

    NAME: /[a-z][a-z0-9]*/

    %import common.ESCAPED_STRING
    %import common.WS
    %ignore WS
"""

_CONSTRUCTORS = {name: cls for cls, name in NODE_NAMES.items()}

# number of formula parameters per scheme constructor
_ARITY = {Ax: 1, K: 2, S: 3, Exf: 1, Pr1: 2, Pr2: 2, Pair: 2, Inr: 2, Inl: 2, Case: 3}


class ProofTransformer(Transformer):
    """Turns the s-expression tree into Derivation nodes"""

    def formula(self, children):
        (token,) = children
        try:
            text = json.loads(token)
        except ValueError:
            raise ProofFileError(f"bad string literal {token}") from None
        return parse_formula(text)

    def node(self, children):
        name, *args = children
        constructor = _CONSTRUCTORS.get(str(name))
        if constructor is None:
            raise ProofFileError(f"unknown constructor '{name}'")
        if constructor is Mp:
            if len(args) != 2 or not all(isinstance(a, Derivation) for a in args):
                raise ProofFileError("mp takes exactly two sub-derivations")
            return Mp(*args)
        if len(args) != _ARITY[constructor] or any(isinstance(a, Derivation) for a in args):
            raise ProofFileError(f"{name} takes exactly {_ARITY[constructor]} formula arguments")
        return constructor(*args)

    def start(self, children):
        return children[0]


_parser = Lark(PROOF_GRAMMAR, parser="lalr")
_transformer = ProofTransformer()


def parse_proof(text: str) -> Derivation:
    """
    Parse a proof s-expression

    Raises:
        ProofFileError: malformed s-expression, unknown constructor, wrong
            arity or a formula argument that does not parse
    """
    try:
        tree = _parser.parse(text)
    except LarkError as e:
        raise ProofFileError(f"malformed proof: {e}") from None
    try:
        return _transformer.transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, ProofFileError):
            raise e.orig_exc from None
        if isinstance(e.orig_exc, FormulaSyntaxError):
            raise ProofFileError(f"bad formula argument: {e.orig_exc}") from None
        raise ProofFileError(f"malformed proof: {e.orig_exc}") from None


def load_proof(path: Union[str, Path]) -> Derivation:
    logger.debug(f"Loading proof file {path}")
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputFileError(f"cannot read proof file {path}: {e.strerror}") from None
    except UnicodeDecodeError:
        raise InputFileError(f"proof file {path} is not UTF-8 text") from None
    return parse_proof(text)


def format_derivation(d: Derivation) -> str:
    name = NODE_NAMES[type(d)]
    if isinstance(d, Mp):
        return f"({name} {format_derivation(d.left)} {format_derivation(d.right)})"
    params = " ".join(json.dumps(print_formula(p)) for p in (getattr(d, f.name) for f in fields(d)))
    return f"({name} {params})"
