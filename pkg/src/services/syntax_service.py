"""
Syntax service: printing, Gödel coding and subformula fragments

Gödel coding
------------
Codes enumerate formulas by increasing *weight*:

    weight(Atom i) = i + 1                          for i < 16
    weight(Atom i) = 16 + bit_length(i - 15)        for i >= 16
    weight(Bot)    = 1
    weight(A ∘ B)  = 1 + weight(A) + weight(B)     for ∘ in {Impl, And, Or}

There are finitely many formulas of each weight. Inside one weight the order
is: Bot (weight 1 only), the atoms of that weight by index, then the Impl
block, the And block and the Or block. Up to weight 16 there is exactly one
atom per weight; weight w >= 17 holds the 2 ** (w - 17) atoms starting at
p(15 + 2 ** (w - 17)), so the tables behind the code of pN grow with log N
only. Inside a block, pairs (A, B) are ordered by weight(A), then by A's
rank inside its weight, then by B's rank. The code
of a formula is the number of formulas preceding it in this order.

The scheme is a bijection between formulas and naturals, so decode never
returns None for n >= 0. The first codes are:

    0 Bot   1 p0   2 p1   3 p2   4 Bot -> Bot   ...   7 p0 -> p0
    8..11 And block, 12..15 Or block (15 = p0 | p0), 16 p3, 26 p0 | p1

Every formula with at most five nodes over atoms p0, p1 has weight <= 8 and
therefore a code below the offset of weight 9 (a few thousand), which keeps
the code-driven prime extension runs bounded.
"""
import random
import threading
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence

from src.config.logging_config import get_logger, log_function_call
from src.models.Formula_Model import BOT, And, Atom, Bot, Formula, Fragment, Impl, Or, is_neg
from src.utils.formula_parser import parse_formula

# Get logger for this module
logger = get_logger(__name__)

_BINARY = (Impl, And, Or)

# atoms below this index have weight index + 1
_LINEAR_ATOMS = 16


def parse(text: str) -> Formula:
    return parse_formula(text)


# Printing

_PREC_IMPL, _PREC_OR, _PREC_AND, _PREC_NEG, _PREC_ATOM = 1, 2, 3, 4, 5

_ASCII = {"impl": "->", "or": "|", "and": "&", "bot": "false"}
_UNICODE = {"impl": "⊃", "or": "∨", "and": "∧", "bot": "⊥"}


def _precedence(p: Formula) -> int:
    if isinstance(p, (Atom, Bot)):
        return _PREC_ATOM
    if is_neg(p):
        return _PREC_NEG
    if isinstance(p, Impl):
        return _PREC_IMPL
    if isinstance(p, Or):
        return _PREC_OR
    return _PREC_AND


def _render(p: Formula, ops: dict, min_prec: int) -> str:
    match p:
        case Atom(index):
            text = f"p{index}"
        case Bot():
            text = ops["bot"]
        case Impl(lhs, Bot()):
            text = "~" + _render(lhs, ops, _PREC_NEG)
        case Impl(lhs, rhs):
            text = f"{_render(lhs, ops, _PREC_OR)} {ops['impl']} {_render(rhs, ops, _PREC_IMPL)}"
        case Or(lhs, rhs):
            text = f"{_render(lhs, ops, _PREC_OR)} {ops['or']} {_render(rhs, ops, _PREC_AND)}"
        case And(lhs, rhs):
            text = f"{_render(lhs, ops, _PREC_AND)} {ops['and']} {_render(rhs, ops, _PREC_NEG)}"
        case _:
            raise TypeError(f"not a formula: {p!r}")
    if _precedence(p) < min_prec:
        return f"({text})"
    return text


def print_formula(p: Formula, unicode: bool = False) -> str:
    """
    Render a formula with the fewest parentheses that still parse back to it

    Negation sugar is preferred: Impl(p, Bot) prints as "~p".
    """
    return _render(p, _UNICODE if unicode else _ASCII, _PREC_IMPL)


def print_context(ctx: Iterable[Formula], unicode: bool = False) -> str:
    return "{" + ", ".join(print_formula(p, unicode) for p in sort_by_code(ctx)) + "}"


# Structure

def node_count(p: Formula) -> int:
    if isinstance(p, _BINARY):
        return 1 + node_count(p.lhs) + node_count(p.rhs)
    return 1


def atoms_of(*formulas: Formula) -> frozenset:
    found = set()
    stack = list(formulas)
    while stack:
        p = stack.pop()
        if isinstance(p, Atom):
            found.add(p.index)
        elif isinstance(p, _BINARY):
            stack.extend((p.lhs, p.rhs))
    return frozenset(found)


def weight(p: Formula) -> int:
    match p:
        case Atom(index):
            return _atom_weight(index)
        case Bot():
            return 1
        case Impl(lhs, rhs) | And(lhs, rhs) | Or(lhs, rhs):
            return 1 + weight(lhs) + weight(rhs)
    raise TypeError(f"not a formula: {p!r}")


# Gödel coding

def _atom_weight(index: int) -> int:
    if index < _LINEAR_ATOMS:
        return index + 1
    return _LINEAR_ATOMS + (index - _LINEAR_ATOMS + 1).bit_length()


def _first_atom(w: int) -> int:
    """Smallest atom index of weight w (w >= 1)."""
    if w <= _LINEAR_ATOMS:
        return w - 1
    return _LINEAR_ATOMS - 1 + 2 ** (w - _LINEAR_ATOMS - 1)


# _COUNTS[w] = number of formulas of weight exactly w; grown on demand
_COUNTS: List[int] = [0, 2]
_OFFSETS: List[int] = [0, 0]  # _OFFSETS[w] = number of formulas of weight < w
_table_lock = threading.Lock()


def _leaves(w: int) -> int:
    if w == 1:
        return 2
    if w <= _LINEAR_ATOMS:
        return 1
    return 2 ** (w - _LINEAR_ATOMS - 1)


def _block_size(w: int) -> int:
    """Number of (A, B) pairs with weight(A) + weight(B) = w - 1."""
    return sum(_COUNTS[w1] * _COUNTS[w - 1 - w1] for w1 in range(1, w - 1))


def _ensure_weight(w: int) -> None:
    if w < len(_COUNTS):
        return
    with _table_lock:
        while len(_COUNTS) <= w:
            nxt = len(_COUNTS)
            count = _leaves(nxt) + 3 * _block_size(nxt)
            _OFFSETS.append(_OFFSETS[-1] + _COUNTS[-1])
            _COUNTS.append(count)


def count_of_weight(w: int) -> int:
    _ensure_weight(w)
    return _COUNTS[w]


def offset_of_weight(w: int) -> int:
    _ensure_weight(w)
    return _OFFSETS[w]


def _rank(p: Formula, w: int) -> int:
    """Position of p among formulas of weight w."""
    if isinstance(p, Bot):
        return 0
    if isinstance(p, Atom):
        return (1 if w == 1 else 0) + p.index - _first_atom(w)
    tag = _BINARY.index(type(p))
    block = _block_size(w)
    position = _leaves(w) + tag * block
    wa = weight(p.lhs)
    for w1 in range(1, wa):
        position += _COUNTS[w1] * _COUNTS[w - 1 - w1]
    wb = w - 1 - wa
    return position + _rank(p.lhs, wa) * _COUNTS[wb] + _rank(p.rhs, wb)


def _unrank(w: int, k: int) -> Formula:
    leaves = _leaves(w)
    if k < leaves:
        if w == 1:
            return BOT if k == 0 else Atom(0)
        return Atom(_first_atom(w) + k)
    k -= leaves
    block = _block_size(w)
    tag, k = divmod(k, block)
    for w1 in range(1, w - 1):
        span = _COUNTS[w1] * _COUNTS[w - 1 - w1]
        if k < span:
            ra, rb = divmod(k, _COUNTS[w - 1 - w1])
            return _BINARY[tag](_unrank(w1, ra), _unrank(w - 1 - w1, rb))
        k -= span
    raise AssertionError("rank outside of its weight block")


@lru_cache(maxsize=65536)
def encode(p: Formula) -> int:
    """Total, injective code of a formula (see module docstring)."""
    w = weight(p)
    _ensure_weight(w)
    return _OFFSETS[w] + _rank(p, w)


@lru_cache(maxsize=65536)
def decode(n: int) -> Optional[Formula]:
    """Partial inverse of encode; total on naturals, None only for negative n."""
    if n < 0:
        return None
    w = 1
    while True:
        _ensure_weight(w)
        if n < _OFFSETS[w] + _COUNTS[w]:
            return _unrank(w, n - _OFFSETS[w])
        w += 1


def code_bound_for(formulas: Iterable[Formula]) -> int:
    """Smallest bound such that every given formula has a code below it."""
    return max((encode(p) for p in formulas), default=-1) + 1


def sort_by_code(formulas: Iterable[Formula]) -> List[Formula]:
    return sorted(formulas, key=encode)


# Fragments

def fragment_of(*formulas: Formula) -> Fragment:
    """Least subformula-closed set containing the given formulas and Bot."""
    members = {BOT}
    stack = list(formulas)
    while stack:
        p = stack.pop()
        if p in members:
            continue
        members.add(p)
        if isinstance(p, _BINARY):
            stack.extend((p.lhs, p.rhs))
    return Fragment(formulas=tuple(sort_by_code(members)))


def subformulas(p: Formula) -> Fragment:
    log_function_call("subformulas", {"formula": print_formula(p)})
    return fragment_of(p)


# Random generation

def random_formula(rng: random.Random, size: int, atoms: Sequence[int]) -> Formula:
    """
    Deterministic random formula with at most `size` nodes

    Leaves are atoms from `atoms` or Bot (Bot with probability 1/8).
    """
    if size <= 2 or rng.random() < 0.25:
        if not atoms or rng.random() < 0.125:
            return BOT
        return Atom(rng.choice(list(atoms)))
    left_size = rng.randint(1, size - 2)
    connective = rng.choice(_BINARY)
    return connective(
        random_formula(rng, left_size, atoms),
        random_formula(rng, size - 1 - left_size, atoms),
    )


def enumerate_formulas(max_nodes: int, atoms: Sequence[int]) -> List[Formula]:
    """All formulas with at most `max_nodes` nodes over the given atoms (and Bot)."""
    by_size: List[List[Formula]] = [[], [BOT] + [Atom(a) for a in atoms]]
    for size in range(2, max_nodes + 1):
        layer = []
        for left in range(1, size - 1):
            right = size - 1 - left
            for connective in _BINARY:
                for a in by_size[left]:
                    for b in by_size[right]:
                        layer.append(connective(a, b))
        by_size.append(layer)
    return [p for layer in by_size[: max_nodes + 1] for p in layer]
