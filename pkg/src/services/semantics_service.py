"""
Kripke semantics service

Forcing, frame validation, persistence, bounded model enumeration and the
two-world countermodel to excluded middle. Forcing is computed for all
worlds of a model at once as bitmasks over the model's world order.
"""
import itertools
from typing import AbstractSet, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from src.config.logging_config import get_logger, log_function_call
from src.models.Formula_Model import And, Atom, Bot, Formula, Impl, Or
from src.models.Kripke_Model import (
    ConsequenceVerdict, FrameLaw, FrameVerdict, KripkeModel, PersistenceVerdict,
)
from src.services.syntax_service import print_formula
from src.utils.errors import FramePreconditionError

# Get logger for this module
logger = get_logger(__name__)


def validate_frame(model: KripkeModel) -> FrameVerdict:
    """Check reflexivity, transitivity and monotone valuation, in that order."""
    for w in model.worlds:
        if (w, w) not in model.rel:
            return FrameVerdict(ok=False, kind=FrameLaw.REFL, witness=(w,))
    for (w, v) in sorted(model.rel):
        for u in model.worlds:
            if (v, u) in model.rel and (w, u) not in model.rel:
                return FrameVerdict(ok=False, kind=FrameLaw.TRANS, witness=(w, v, u))
    for (a, w) in sorted(model.val):
        for v in model.worlds:
            if (w, v) in model.rel and (a, v) not in model.val:
                return FrameVerdict(ok=False, kind=FrameLaw.MONO, witness=(a, w, v))
    return FrameVerdict(ok=True)


class ForcingEvaluator:
    """
    Forcing over one model, memoised per subformula

    Instances are confined to the thread that uses them; the model itself is
    immutable and may be shared.
    """

    def __init__(self, model: KripkeModel, check_frame: bool = True):
        if check_frame:
            verdict = validate_frame(model)
            if not verdict.ok:
                raise FramePreconditionError(f"forcing needs a valid frame: {verdict.describe()}")
        self.model = model
        self._index = {w: i for i, w in enumerate(model.worlds)}
        self._full = (1 << len(model.worlds)) - 1
        self._up = [0] * len(model.worlds)
        for (w, v) in model.rel:
            self._up[self._index[w]] |= 1 << self._index[v]
        self._atoms: Dict[int, int] = {}
        for (a, w) in model.val:
            self._atoms[a] = self._atoms.get(a, 0) | (1 << self._index[w])
        self._cache: Dict[Formula, int] = {}

    def truth_mask(self, p: Formula) -> int:
        cached = self._cache.get(p)
        if cached is not None:
            return cached
        match p:
            case Atom(index):
                mask = self._atoms.get(index, 0)
            case Bot():
                mask = 0
            case And(lhs, rhs):
                mask = self.truth_mask(lhs) & self.truth_mask(rhs)
            case Or(lhs, rhs):
                mask = self.truth_mask(lhs) | self.truth_mask(rhs)
            case Impl(lhs, rhs):
                # w forces lhs ⊃ rhs iff no successor forces lhs without rhs
                bad = self.truth_mask(lhs) & ~self.truth_mask(rhs) & self._full
                mask = 0
                for i, up in enumerate(self._up):
                    if not up & bad:
                        mask |= 1 << i
            case _:
                raise TypeError(f"not a formula: {p!r}")
        self._cache[p] = mask
        return mask

    def _bit(self, w: int) -> int:
        try:
            return 1 << self._index[w]
        except KeyError:
            raise FramePreconditionError(f"world {w} is not in the model") from None

    def forces(self, w: int, p: Formula) -> bool:
        return bool(self.truth_mask(p) & self._bit(w))

    def forces_ctx(self, w: int, ctx: Iterable[Formula]) -> bool:
        bit = self._bit(w)
        return all(self.truth_mask(p) & bit for p in ctx)

    def forcing_worlds(self, p: Formula) -> Tuple[int, ...]:
        mask = self.truth_mask(p)
        return tuple(w for i, w in enumerate(self.model.worlds) if mask >> i & 1)


def forces(model: KripkeModel, w: int, p: Formula) -> bool:
    """
    Forcing relation

    Raises:
        FramePreconditionError: the model breaks a frame law or w is unknown
    """
    return ForcingEvaluator(model).forces(w, p)


def forces_ctx(model: KripkeModel, w: int, ctx: Iterable[Formula]) -> bool:
    return ForcingEvaluator(model).forces_ctx(w, ctx)


def persistence_check(model: KripkeModel, p: Formula) -> PersistenceVerdict:
    """
    Check that forcing of p persists along every accessibility pair

    The frame laws are not required here, so invalid models can be checked too.
    """
    evaluator = ForcingEvaluator(model, check_frame=False)
    for (w, v) in sorted(model.rel):
        if evaluator.forces(w, p) and not evaluator.forces(v, p):
            return PersistenceVerdict(ok=False, edge=(w, v), formula=p)
    return PersistenceVerdict(ok=True)


def _preorders(n: int) -> List[frozenset]:
    """Reflexive-transitive closures of every edge set on n worlds, first-seen order."""
    worlds = range(n)
    edges = [(w, v) for w in worlds for v in worlds if w != v]
    seen: Dict[frozenset, None] = {}
    for mask in range(1 << len(edges)):
        rel = {(w, w) for w in worlds}
        rel.update(e for i, e in enumerate(edges) if mask >> i & 1)
        changed = True
        while changed:
            changed = False
            for (w, v) in list(rel):
                for u in worlds:
                    if (v, u) in rel and (w, u) not in rel:
                        rel.add((w, u))
                        changed = True
        seen.setdefault(frozenset(rel), None)
    return list(seen)


def count_preorders(n: int) -> int:
    return len(_preorders(n))


def _up_sets(n: int, rel: AbstractSet[Tuple[int, int]]) -> List[frozenset]:
    up_sets = []
    for mask in range(1 << n):
        members = {w for w in range(n) if mask >> w & 1}
        if all(v in members for (w, v) in rel if w in members):
            up_sets.append(frozenset(members))
    return up_sets


def enumerate_models(max_worlds: int, atoms: Sequence[int]) -> Iterator[KripkeModel]:
    """
    Every valid model over worlds {0..n-1}, 1 <= n <= max_worlds

    Relations are the distinct preorders in first-seen order of their edge
    sets; valuations assign every atom an up-set. No isomorph pruning.
    """
    atoms = list(atoms)
    log_function_call("enumerate_models", {"max_worlds": max_worlds, "atoms": atoms})
    for n in range(1, max_worlds + 1):
        worlds = tuple(range(n))
        for rel in _preorders(n):
            up_sets = _up_sets(n, rel)
            for choice in itertools.product(up_sets, repeat=len(atoms)):
                val = frozenset((a, w) for a, members in zip(atoms, choice) for w in members)
                yield KripkeModel(worlds=worlds, rel=rel, val=val)


def check_consequence_on(models: Iterable[KripkeModel], ctx: Iterable[Formula], p: Formula) -> ConsequenceVerdict:
    """First (model, world) in stream order forcing ctx but not p, if any."""
    ctx = list(ctx)
    for model in models:
        evaluator = ForcingEvaluator(model)
        for w in model.worlds:
            if evaluator.forces_ctx(w, ctx) and not evaluator.forces(w, p):
                logger.debug(f"Counterexample to {print_formula(p)} at world {w}", extra={'worlds': len(model.worlds)})
                return ConsequenceVerdict(counterexample=True, model=model, world=w)
    return ConsequenceVerdict.none_found()


# Worlds of the excluded-middle countermodel
FF, TT = 0, 1


def build_lem_countermodel(atom: int = 0) -> Tuple[KripkeModel, int]:
    """
    Two worlds ff ≤ tt with the atom true only at tt

    The root ff forces neither the atom nor its negation.
    """
    model = KripkeModel(
        worlds=(FF, TT),
        rel=frozenset({(FF, FF), (TT, TT), (FF, TT)}),
        val=frozenset({(atom, TT)}),
    )
    return model, FF


def designated_name(w: Optional[int]) -> str:
    return {FF: "ff", TT: "tt"}.get(w, str(w))
