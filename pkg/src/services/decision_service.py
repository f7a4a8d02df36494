"""
Derivability oracle for Γ ⊢ p

Provability is decided with the contraction-free sequent calculus G4ip.
Rule order is fixed:

  1. axioms: ⊥ in Γ, or the goal itself in Γ
  2. invertible left rules on the first applicable context formula, context
     formulas taken in code order: A∧B; A∨B; P⊃B with atom P in Γ;
     ⊥⊃B (dropped); (A∧B)⊃C; (A∨B)⊃C
  3. invertible right rules: A∧B, A⊃B
  4. ∨ on the right (left disjunct first), then (A⊃B)⊃C on the left for each
     such context formula in code order

Refutations carry a countermodel built inside the fragment of Γ ∪ {p}: the
root is the greedy maximal extension of Γ that still avoids p, and each world
missing an implication a ⊃ b of the fragment gets the maximal extension of
itself plus a that avoids b as a successor. Worlds are ordered by inclusion
and atoms hold where they are members.
"""
import time
from functools import lru_cache
from typing import AbstractSet, Dict, FrozenSet, Iterable, List, Tuple

from src.config.logging_config import get_logger, log_oracle_query
from src.config.settings import settings
from src.models.Formula_Model import BOT, And, Atom, Bot, Formula, Fragment, Impl, Or
from src.models.Kripke_Model import KripkeModel
from src.models.Theory_Model import DecisionResult, DecisionStatus
from src.services.semantics_service import ForcingEvaluator, validate_frame
from src.services.syntax_service import encode, fragment_of, print_formula, sort_by_code
from src.utils.errors import DecisionBudgetExceeded, HenkinInvariantError

# Get logger for this module
logger = get_logger(__name__)

Sequent = Tuple[FrozenSet[Formula], Formula]


class G4ipProver:
    """
    One G4ip search with its own memo table and step budget

    Not shared between threads; the module-level cache below is.
    """

    def __init__(self, budget: int):
        self.budget = budget
        self.steps = 0
        self._memo: Dict[Sequent, bool] = {}

    def prove(self, gamma: FrozenSet[Formula], goal: Formula) -> bool:
        key = (gamma, goal)
        known = self._memo.get(key)
        if known is not None:
            return known
        self.steps += 1
        if self.steps > self.budget:
            raise DecisionBudgetExceeded(self.budget)
        result = self._search(gamma, goal)
        self._memo[key] = result
        return result

    def _search(self, gamma: FrozenSet[Formula], goal: Formula) -> bool:
        if BOT in gamma or goal in gamma:
            return True

        ordered = sorted(gamma, key=encode)

        for f in ordered:
            rest = gamma - {f}
            match f:
                case And(a, b):
                    return self.prove(rest | {a, b}, goal)
                case Or(a, b):
                    return self.prove(rest | {a}, goal) and self.prove(rest | {b}, goal)
                case Impl(Atom() as a, b) if a in gamma:
                    return self.prove(rest | {b}, goal)
                case Impl(Bot(), _):
                    return self.prove(rest, goal)
                case Impl(And(a, b), c):
                    return self.prove(rest | {Impl(a, Impl(b, c))}, goal)
                case Impl(Or(a, b), c):
                    return self.prove(rest | {Impl(a, c), Impl(b, c)}, goal)

        match goal:
            case And(a, b):
                return self.prove(gamma, a) and self.prove(gamma, b)
            case Impl(a, b):
                return self.prove(gamma | {a}, b)
            case Or(a, b):
                if self.prove(gamma, a) or self.prove(gamma, b):
                    return True

        for f in ordered:
            match f:
                case Impl(Impl(a, b), c):
                    rest = gamma - {f}
                    if self.prove(rest | {Impl(b, c), a}, b) and self.prove(rest | {c}, goal):
                        return True
        return False


@lru_cache(maxsize=settings.DECISION_CACHE_SIZE)
def _provable(gamma: FrozenSet[Formula], goal: Formula) -> bool:
    return G4ipProver(settings.DECISION_STEP_BUDGET).prove(gamma, goal)


def is_derivable(ctx: Iterable[Formula], p: Formula) -> bool:
    """
    Verdict-only derivability, cached across calls

    Raises:
        DecisionBudgetExceeded: the search expanded more sequents than
            DECISION_STEP_BUDGET
    """
    return _provable(frozenset(ctx), p)


def consistent(ctx: Iterable[Formula]) -> bool:
    return not is_derivable(ctx, BOT)


def saturate(base: AbstractSet[Formula], avoid: Formula, fragment: Fragment) -> FrozenSet[Formula]:
    """
    Greedy maximal extension of base inside the fragment that does not derive avoid

    One pass in code order is enough: a formula rejected early stays
    rejected once the theory grows. The result is closed in the fragment,
    has the disjunction property there and is consistent.
    """
    theory = frozenset(base)
    for q in fragment:
        if q not in theory and not is_derivable(theory | {q}, avoid):
            theory = theory | {q}
    return theory


def _theory_order(theory: FrozenSet[Formula]) -> Tuple[int, List[int]]:
    return len(theory), sorted(encode(q) for q in theory)


def _countermodel(ctx: FrozenSet[Formula], p: Formula) -> Tuple[KripkeModel, int]:
    fragment = fragment_of(*ctx, p)
    root = saturate(ctx, p, fragment)
    theories = {root}
    pending = [root]
    while pending:
        world = pending.pop()
        for implication in fragment.implications:
            if implication in world:
                continue
            successor = saturate(world | {implication.lhs}, implication.rhs, fragment)
            if successor not in theories:
                theories.add(successor)
                pending.append(successor)

    ordered = sorted(theories, key=_theory_order)
    ids = {theory: i for i, theory in enumerate(ordered)}
    rel = frozenset((ids[w], ids[v]) for w in ordered for v in ordered if w <= v)
    val = frozenset((q.index, ids[w]) for w in ordered for q in w if isinstance(q, Atom))
    model = KripkeModel(worlds=tuple(range(len(ordered))), rel=rel, val=val)
    return model, ids[root]


def derivable(ctx: Iterable[Formula], p: Formula) -> DecisionResult:
    """
    Decide ctx ⊢ p

    Returns:
        Provable, or Refuted with a countermodel that has been checked by the
        semantics service before it is returned
    """
    ctx = frozenset(ctx)
    start_time = time.time()
    if is_derivable(ctx, p):
        log_oracle_query(print_formula(p), len(ctx), "provable", (time.time() - start_time) * 1000)
        return DecisionResult(status=DecisionStatus.PROVABLE)

    model, world = _countermodel(ctx, p)
    evaluator = ForcingEvaluator(model, check_frame=False)
    if not validate_frame(model).ok or not evaluator.forces_ctx(world, ctx) or evaluator.forces(world, p):
        logger.error(f"Countermodel self-check failed for {print_formula(p)}")
        raise HenkinInvariantError("reconstructed countermodel does not refute the query")

    log_oracle_query(print_formula(p), len(ctx), "refuted", (time.time() - start_time) * 1000)
    return DecisionResult(status=DecisionStatus.REFUTED, model=model, world=world)


def clear_cache() -> None:
    _provable.cache_clear()
