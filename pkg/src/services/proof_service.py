"""
Hilbert proof service

Conclusions of scheme nodes:

    K(p,q)      p ⊃ (q ⊃ p)
    S(p,q,r)    (p ⊃ (q ⊃ r)) ⊃ ((p ⊃ q) ⊃ (p ⊃ r))
    Exf(p)      ⊥ ⊃ p
    Pr1(p,q)    (p ∧ q) ⊃ p
    Pr2(p,q)    (p ∧ q) ⊃ q
    Pair(p,q)   p ⊃ (q ⊃ (p ∧ q))
    Inr(p,q)    p ⊃ (p ∨ q)
    Inl(p,q)    q ⊃ (p ∨ q)
    Case(p,q,r) (p ⊃ r) ⊃ ((q ⊃ r) ⊃ ((p ∨ q) ⊃ r))

Mp(d1, d2) concludes b when d1 concludes a ⊃ b and d2 concludes a. Ax(p) is
valid only when p belongs to the context.
"""
import random
from typing import AbstractSet, List, Optional, Sequence, Tuple

from src.config.logging_config import get_logger, log_function_call
from src.models.Formula_Model import BOT, And, Formula, Impl, Or
from src.models.Proof_Model import (
    Ax, Case, Derivation, Exf, Inl, Inr, K, Mp, Pair, Pr1, Pr2, ProofVerdict, RejectReason, S,
)
from src.services.syntax_service import print_formula, random_formula
from src.utils.errors import DerivationPreconditionError

# Get logger for this module
logger = get_logger(__name__)


def scheme_conclusion(d: Derivation) -> Formula:
    """Conclusion of a scheme node (every kind except Mp and Ax)."""
    match d:
        case K(p, q):
            return Impl(p, Impl(q, p))
        case S(p, q, r):
            return Impl(Impl(p, Impl(q, r)), Impl(Impl(p, q), Impl(p, r)))
        case Exf(p):
            return Impl(BOT, p)
        case Pr1(p, q):
            return Impl(And(p, q), p)
        case Pr2(p, q):
            return Impl(And(p, q), q)
        case Pair(p, q):
            return Impl(p, Impl(q, And(p, q)))
        case Inr(p, q):
            return Impl(p, Or(p, q))
        case Inl(p, q):
            return Impl(q, Or(p, q))
        case Case(p, q, r):
            return Impl(Impl(p, r), Impl(Impl(q, r), Impl(Or(p, q), r)))
    raise TypeError(f"not a scheme node: {d!r}")


class _Rejection(Exception):
    def __init__(self, path: Tuple[int, ...], reason: RejectReason):
        self.path = path
        self.reason = reason


def _infer(d: Derivation, ctx: AbstractSet[Formula], path: Tuple[int, ...]) -> Formula:
    # Pre-order: the major premise of an Mp is inspected before the minor one
    if isinstance(d, Ax):
        if d.p not in ctx:
            raise _Rejection(path, RejectReason.AX_NOT_IN_CONTEXT)
        return d.p
    if isinstance(d, Mp):
        major = _infer(d.left, ctx, path + (0,))
        minor = _infer(d.right, ctx, path + (1,))
        if not isinstance(major, Impl) or major.lhs != minor:
            raise _Rejection(path, RejectReason.MP_MISMATCH)
        return major.rhs
    return scheme_conclusion(d)


def conclusion(d: Derivation, ctx: AbstractSet[Formula]) -> Optional[Formula]:
    """Conclusion of d against ctx, or None when d is not well formed there."""
    try:
        return _infer(d, ctx, ())
    except _Rejection:
        return None


def check(d: Derivation, ctx: AbstractSet[Formula], goal: Formula) -> ProofVerdict:
    """
    Check that d derives goal from ctx

    Returns:
        Accept, or Reject with the path to the first violation in pre-order
    """
    try:
        derived = _infer(d, ctx, ())
    except _Rejection as rejection:
        logger.debug(f"Derivation rejected at {rejection.path}: {rejection.reason.value}")
        return ProofVerdict.reject(rejection.path, rejection.reason)
    if derived != goal:
        logger.debug(f"Derivation concludes {print_formula(derived)}, not {print_formula(goal)}")
        return ProofVerdict.reject((), RejectReason.CONCLUSION_MISMATCH)
    return ProofVerdict.accept()


def id_proof(p: Formula) -> Derivation:
    """The identity of implication: mp (mp (s p (p ⊃ p) p) (k p (p ⊃ p))) (k p p)."""
    pp = Impl(p, p)
    return Mp(Mp(S(p, pp, p), K(p, pp)), K(p, p))


def weaken(d: Derivation, ctx: AbstractSet[Formula], ctx2: AbstractSet[Formula]) -> Derivation:
    """
    Transport a derivation from ctx to a larger context ctx2

    Trees only mention the context at Ax leaves, so the tree itself is kept;
    the result is re-validated against ctx2.

    Raises:
        DerivationPreconditionError: ctx is not a subset of ctx2, or d is not
            a derivation from ctx
    """
    if not set(ctx) <= set(ctx2):
        raise DerivationPreconditionError("weakening needs the source context to be a subset of the target")
    goal = conclusion(d, ctx)
    if goal is None:
        raise DerivationPreconditionError("weakening needs a derivation accepted against the source context")
    verdict = check(d, ctx2, goal)
    if not verdict.accepted:
        raise DerivationPreconditionError(f"weakened derivation rejected: {verdict.reason}")
    return d


def _lifts(rng: random.Random, a: Formula, atoms: Sequence[int]) -> List[Derivation]:
    """Scheme nodes whose conclusion is an implication with antecedent a."""
    q = random_formula(rng, 3, atoms)
    options: List[Derivation] = [K(a, q), Pair(a, q), Inr(a, q), Inl(q, a)]
    match a:
        case Impl(x, Impl(y, z)):
            options.append(S(x, y, z))
    match a:
        case Impl(x, z):
            options.append(Case(x, q, z))
        case And(x, y):
            options.extend((Pr1(x, y), Pr2(x, y)))
    if a == BOT:
        options.append(Exf(q))
    return options


def _leaf(rng: random.Random, ctx: Sequence[Formula], atoms: Sequence[int]) -> Tuple[Derivation, Formula]:
    if ctx and rng.random() < 0.3:
        p = rng.choice(ctx)
        return Ax(p), p
    p, q, r = (random_formula(rng, 3, atoms) for _ in range(3))
    node = rng.choice([K(p, q), S(p, q, r), Exf(p), Pr1(p, q), Pr2(p, q), Pair(p, q), Inr(p, q), Inl(p, q), Case(p, q, r)])
    return node, scheme_conclusion(node)


def _grow(rng: random.Random, ctx: Sequence[Formula], atoms: Sequence[int], depth: int) -> Tuple[Derivation, Formula]:
    if depth == 0 or rng.random() < 0.15:
        return _leaf(rng, ctx, atoms)
    if depth >= 2 and rng.random() < 0.25:
        # a, b ⟹ a ∧ b through two modus ponens steps
        da, a = _grow(rng, ctx, atoms, depth - 2)
        db, b = _grow(rng, ctx, atoms, depth - 2)
        return Mp(Mp(Pair(a, b), da), db), And(a, b)
    minor, a = _grow(rng, ctx, atoms, depth - 1)
    major = rng.choice(_lifts(rng, a, atoms))
    implication = scheme_conclusion(major)
    return Mp(major, minor), implication.rhs


def random_derivation(ctx: AbstractSet[Formula], depth: int, seed: int,
                      atoms: Sequence[int] = (0, 1, 2)) -> Tuple[Derivation, Formula]:
    """
    Deterministic random derivation from ctx of height at most depth

    Returns:
        The derivation together with its conclusion; it is always accepted by
        check against ctx.
    """
    rng = random.Random(seed)
    ordered_ctx = sorted(ctx, key=print_formula)
    d, p = _grow(rng, ordered_ctx, atoms, depth)
    log_function_call("random_derivation", {"seed": seed, "depth": depth, "conclusion": print_formula(p)})
    return d, p


def derivation_height(d: Derivation) -> int:
    if isinstance(d, Mp):
        return 1 + max(derivation_height(d.left), derivation_height(d.right))
    return 0
