from enum import Enum
from typing import FrozenSet, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing_extensions import Annotated

from src.models.Formula_Model import Formula

WorldId = Annotated[int, Field(ge=0)]


class KripkeModel(BaseModel):
    """Finite Kripke model: worlds, accessibility pairs and atom valuation.

    Structural well-formedness (pairs mention known worlds) is enforced here.
    The frame laws (reflexivity, transitivity, monotone valuation) are not:
    they are reported by ``validate_frame`` so that invalid models can still
    be inspected.
    """
    model_config = ConfigDict(frozen=True)

    worlds: Tuple[WorldId, ...]
    rel: FrozenSet[Tuple[WorldId, WorldId]] = frozenset()
    val: FrozenSet[Tuple[Annotated[int, Field(ge=0)], WorldId]] = frozenset()  # (atom, world)

    @model_validator(mode="after")
    def _pairs_mention_known_worlds(self) -> "KripkeModel":
        known = set(self.worlds)
        if len(known) != len(self.worlds):
            raise ValueError("duplicate world id")
        for w, v in self.rel:
            if w not in known or v not in known:
                raise ValueError(f"rel pair {w}->{v} mentions an unknown world")
        for a, w in self.val:
            if w not in known:
                raise ValueError(f"valuation p{a}@{w} mentions an unknown world")
        return self

    def successors(self, w: int) -> Tuple[int, ...]:
        return tuple(v for v in self.worlds if (w, v) in self.rel)

    def true_atoms(self, w: int) -> Tuple[int, ...]:
        return tuple(sorted(a for a, u in self.val if u == w))

    @property
    def atoms(self) -> Tuple[int, ...]:
        return tuple(sorted({a for a, _ in self.val}))


class FrameLaw(str, Enum):
    REFL = "Refl"
    TRANS = "Trans"
    MONO = "Mono"


class FrameVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    ok: bool
    kind: Optional[FrameLaw] = None
    # Refl: (w,); Trans: (w, v, u); Mono: (atom, w, v)
    witness: Optional[Tuple[int, ...]] = None

    def describe(self) -> str:
        if self.ok:
            return "ok"
        return f"{self.kind.value} violated at {self.witness}"


class PersistenceVerdict(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    ok: bool
    edge: Optional[Tuple[int, int]] = None
    formula: Optional[Formula] = None


class ConsequenceVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    counterexample: bool
    model: Optional[KripkeModel] = None
    world: Optional[int] = None

    @classmethod
    def none_found(cls) -> "ConsequenceVerdict":
        return cls(counterexample=False)
