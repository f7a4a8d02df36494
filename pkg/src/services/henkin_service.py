"""
Henkin service: prime extensions, the finite canonical model and countermodels

Two renditions of the prime extension lemma live here.

The code-driven tower follows the enumeration of the whole language:

    insert_form(Γ, p, q, r) = Γ ∪ {q}  if Γ ∪ {p} ⊢ r  else  Γ ∪ {p}
    insert_code(Γ, r, n)    = insert_form(Γ, p, q, r)  if decode(n) = p ∨ q and Γ ⊢ p ∨ q
                              Γ                        otherwise
    insertn(Γ, r, n)        = insert_code folded over codes 0 .. n-1
    primen(Γ, r, 0)         = Γ
    primen(Γ, r, k+1)       = ⋃ i ≤ code_bound, insertn(primen(Γ, r, k), r, i)

Every stage treats every disjunction of the language again, truncated at
code_bound; the infinite union over stages is truncated at `stages`.

The fragment-restricted rendition runs the same insertions over the
disjunctions of a finite fragment, interleaved with closure inside the
fragment, and its results are exactly the worlds of the canonical model.
"""
from typing import FrozenSet, Iterable, Iterator, List, Optional, Tuple, Union

from src.config.logging_config import get_logger, log_function_call
from src.config.settings import settings
from src.models.Formula_Model import BOT, Atom, Formula, Fragment, Or
from src.models.Kripke_Model import KripkeModel
from src.models.Theory_Model import (
    CanonicalModel, InsertionStep, PrimeTheoryCert, StageSnapshot, Theory, TruthLemmaVerdict,
)
from src.services.decision_service import consistent, is_derivable
from src.services.semantics_service import ForcingEvaluator, validate_frame
from src.services.syntax_service import decode, encode, fragment_of, print_context, print_formula
from src.utils.errors import (
    FragmentTooLargeError, HenkinInvariantError, PrimeExtensionPreconditionError,
)

# Get logger for this module
logger = get_logger(__name__)

StageEvent = Union[InsertionStep, StageSnapshot]


# Prime theory predicates

def is_closed(t: Theory, f: Fragment) -> bool:
    """Every fragment formula derivable from t is a member of t."""
    return all(q in t or not is_derivable(t.formulas, q) for q in f)


def has_disj(t: Theory, f: Optional[Fragment] = None) -> bool:
    """Every member disjunction (inside f when given) has a member disjunct."""
    for p in t.formulas:
        if isinstance(p, Or) and (f is None or p in f):
            if p.lhs not in t and p.rhs not in t:
                return False
    return True


def certify(t: Theory, f: Fragment) -> PrimeTheoryCert:
    return PrimeTheoryCert(
        theory=t,
        fragment=f,
        closed=is_closed(t, f),
        disj=has_disj(t, f),
        consistent=consistent(t.formulas),
    )


# Code-driven tower

def _chosen_disjunct(t: Theory, p: Formula, q: Formula, r: Formula) -> Formula:
    # prefer p unless adding it derives r
    return q if is_derivable(t.formulas | {p}, r) else p


def insert_form(t: Theory, p: Formula, q: Formula, r: Formula) -> Theory:
    return t.with_formulas(_chosen_disjunct(t, p, q, r))


def _treat_code(t: Theory, r: Formula, n: int) -> Tuple[Theory, Optional[InsertionStep]]:
    candidate = decode(n)
    if isinstance(candidate, Or) and is_derivable(t.formulas, candidate):
        added = _chosen_disjunct(t, candidate.lhs, candidate.rhs, r)
        return t.with_formulas(added), InsertionStep(stage=0, code=n, disjunction=candidate, added=added)
    return t, None


def insert_code(t: Theory, r: Formula, n: int) -> Theory:
    """Treat the formula with code n; anything but a derivable disjunction leaves t unchanged."""
    return _treat_code(t, r, n)[0]


def insertn(t: Theory, r: Formula, n: int) -> Theory:
    for code in range(n):
        t = insert_code(t, r, code)
    return t


def _stage_steps(t: Theory, r: Formula, codes: Iterable[int], stage: int) -> Iterator[Union[InsertionStep, Theory]]:
    """Fold insert_code over codes, yielding each effective insertion and finally the theory."""
    for code in codes:
        extended, step = _treat_code(t, r, code)
        if step is not None and step.added not in t:
            yield step.model_copy(update={"stage": stage})
        t = extended
    yield t


def _run_stage(t: Theory, r: Formula, codes: Iterable[int], stage: int) -> Tuple[Theory, List[InsertionStep]]:
    steps: List[InsertionStep] = []
    for event in _stage_steps(t, r, codes, stage):
        if isinstance(event, Theory):
            return event, steps
        steps.append(event)
    raise AssertionError("stage fold yields its theory last")


def primen(t: Theory, r: Formula, n: int, code_bound: int) -> Theory:
    """
    Stage n of the tower

    The union over i ≤ code_bound of insertn(stage, r, i) is a union of an
    increasing chain, so it equals its last member.
    """
    for stage in range(1, n + 1):
        t, _ = _run_stage(t, r, range(code_bound), stage)
    return t


def prime_trace(t: Theory, r: Formula, stages: int, code_bound: int) -> Iterator[StageEvent]:
    """
    Yield (0, Γ0), then per stage its insertion steps followed by (k, Γk)

    Raises:
        PrimeExtensionPreconditionError: t already derives r
    """
    if is_derivable(t.formulas, r):
        raise PrimeExtensionPreconditionError(f"theory already derives {print_formula(r)}")
    yield 0, t.formulas
    for stage in range(1, stages + 1):
        t, steps = _run_stage(t, r, range(code_bound), stage)
        yield from steps
        yield stage, t.formulas


def prime_up_to(t: Theory, r: Formula, stages: int, code_bound: int) -> Theory:
    """
    Bounded prime extension of t avoiding r

    Runs `stages` stages of the tower, then further stages until one adds
    nothing: that fixpoint is the union over all stages for this code bound.
    Guarantees: t is a subset of the result; the result does not derive r;
    every member disjunction with code below code_bound has a member disjunct.

    Raises:
        PrimeExtensionPreconditionError: t already derives r
    """
    log_function_call("prime_up_to", {"theory": print_context(t.formulas), "avoid": print_formula(r),
                                      "stages": stages, "code_bound": code_bound})
    if is_derivable(t.formulas, r):
        raise PrimeExtensionPreconditionError(f"theory already derives {print_formula(r)}")
    result = primen(t, r, stages, code_bound)
    stage = stages
    while True:
        stage += 1
        extended, _ = _run_stage(result, r, range(code_bound), stage)
        if extended == result:
            break
        result = extended
    logger.debug(f"Prime extension grew {len(t.formulas)} -> {len(result.formulas)} formulas",
                 extra={'stage': stage - 1, 'code': code_bound})
    return result


# Fragment-restricted construction

def _close_in(t: Theory, f: Fragment) -> Theory:
    derived = [q for q in f if q not in t and is_derivable(t.formulas, q)]
    return t.with_formulas(*derived) if derived else t


def prime_within(t: Theory, r: Formula, f: Fragment) -> Theory:
    """
    Prime extension of t avoiding r whose new members all come from f

    Stages over the fragment's disjunction codes alternate with closure in f
    until nothing changes. With t inside f the result is a canonical world.

    Raises:
        PrimeExtensionPreconditionError: t already derives r
    """
    if is_derivable(t.formulas, r):
        raise PrimeExtensionPreconditionError(f"theory already derives {print_formula(r)}")
    codes = sorted(encode(d) for d in f.disjunctions)
    stage = 0
    while True:
        stage += 1
        extended, _ = _run_stage(t, r, codes, stage)
        extended = _close_in(extended, f)
        if extended == t:
            return t
        t = extended


# Canonical model

def _check_size(f: Fragment) -> None:
    if len(f) > settings.CANONICAL_FRAGMENT_BOUND:
        raise FragmentTooLargeError(len(f), settings.CANONICAL_FRAGMENT_BOUND)


def canonical_worlds(f: Fragment) -> List[FrozenSet[Formula]]:
    """
    All subsets of f that are consistent, closed in f and prime in f

    Depth-first over f in code order. A formula derivable from what is
    already included is forced in; otherwise both choices are explored, and
    an inclusion is dropped when it derives Bot or a formula already left out.
    """
    order = list(f)
    worlds: List[FrozenSet[Formula]] = []

    def search(i: int, included: FrozenSet[Formula], excluded: Tuple[Formula, ...]) -> None:
        if i == len(order):
            if has_disj(Theory(formulas=included, goal=BOT), f):
                worlds.append(included)
            return
        q = order[i]
        if is_derivable(included, q):
            if q != BOT:
                search(i + 1, included | {q}, excluded)
            return
        search(i + 1, included, excluded + (q,))
        if q == BOT:
            return
        widened = included | {q}
        if any(is_derivable(widened, e) for e in excluded + (BOT,)):
            return
        search(i + 1, widened, excluded)

    search(0, frozenset(), ())
    return worlds


def build_canonical(f: Fragment) -> CanonicalModel:
    """
    Finite canonical model over f: prime theories of f ordered by inclusion

    Raises:
        FragmentTooLargeError: f exceeds CANONICAL_FRAGMENT_BOUND
    """
    _check_size(f)
    theories = sorted(canonical_worlds(f), key=lambda w: (len(w), sorted(encode(q) for q in w)))
    ids = range(len(theories))
    rel = frozenset((i, j) for i in ids for j in ids if theories[i] <= theories[j])
    val = frozenset((q.index, i) for i in ids for q in theories[i] if isinstance(q, Atom))
    model = KripkeModel(worlds=tuple(ids), rel=rel, val=val)
    if not validate_frame(model).ok:
        raise HenkinInvariantError("canonical model breaks a frame law")
    logger.info(f"Canonical model over {len(f)} formulas has {len(theories)} worlds",
                extra={'worlds': len(theories)})
    return CanonicalModel(model=model, labels=dict(zip(ids, theories)), fragment=f)


def truth_lemma_check(canonical: CanonicalModel) -> TruthLemmaVerdict:
    """Forcing at a world coincides with membership for every fragment formula."""
    evaluator = ForcingEvaluator(canonical.model)
    for w in canonical.model.worlds:
        label = canonical.labels[w]
        for p in canonical.fragment:
            forced = evaluator.forces(w, p)
            member = p in label
            if forced != member:
                direction = "forced-not-member" if forced else "member-not-forced"
                logger.warning(f"Truth lemma fails at world {w} for {print_formula(p)} ({direction})")
                return TruthLemmaVerdict(ok=False, world=w, formula=p, direction=direction)
    return TruthLemmaVerdict(ok=True)


def countermodel(ctx: Iterable[Formula], p: Formula) -> Optional[Tuple[KripkeModel, int]]:
    """
    Countermodel to ctx ⊢ p through the canonical model of their fragment

    The verdict is semantic: None exactly when no canonical world forces ctx
    without forcing p. Otherwise the designated world is the fragment prime
    extension of ctx avoiding p.

    Raises:
        FragmentTooLargeError: the fragment exceeds CANONICAL_FRAGMENT_BOUND
        HenkinInvariantError: the oracle and the canonical model disagree
    """
    ctx = frozenset(ctx)
    f = fragment_of(*ctx, p)
    _check_size(f)
    canonical = build_canonical(f)
    evaluator = ForcingEvaluator(canonical.model)
    candidates = [w for w in canonical.model.worlds
                  if evaluator.forces_ctx(w, ctx) and not evaluator.forces(w, p)]
    derivable = is_derivable(ctx, p)

    if not candidates:
        if not derivable:
            raise HenkinInvariantError(f"no canonical world refutes underivable {print_formula(p)}")
        return None
    if derivable:
        raise HenkinInvariantError(f"canonical world refutes derivable {print_formula(p)}")

    extension = prime_within(Theory(formulas=ctx, goal=p), p, f)
    world = canonical.world_of(extension.formulas)
    if world is None or world not in candidates:
        raise HenkinInvariantError("prime extension of the context is not a refuting canonical world")
    logger.debug(f"Countermodel for {print_formula(p)} at world {world} of {len(candidates)} candidates")
    return canonical.model, world
