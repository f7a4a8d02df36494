from enum import Enum
from typing import Dict, FrozenSet, Iterable, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from src.models.Formula_Model import Formula, Fragment
from src.models.Kripke_Model import KripkeModel


class DecisionStatus(str, Enum):
    PROVABLE = "provable"
    REFUTED = "refuted"


class DecisionResult(BaseModel):
    """Verdict of the derivability oracle.

    A refutation always carries a validated countermodel and the world at
    which the context is forced and the queried formula is not.
    """
    model_config = ConfigDict(frozen=True)

    status: DecisionStatus
    model: Optional[KripkeModel] = None
    world: Optional[int] = None

    @property
    def provable(self) -> bool:
        return self.status is DecisionStatus.PROVABLE

    @property
    def refuted(self) -> bool:
        return self.status is DecisionStatus.REFUTED


class Theory(BaseModel):
    """Finite theory together with the formula r it must keep avoiding."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    formulas: FrozenSet[Formula]
    goal: Formula

    def __contains__(self, p: object) -> bool:
        return p in self.formulas

    def with_formulas(self, *ps: Formula) -> "Theory":
        return Theory(formulas=self.formulas.union(ps), goal=self.goal)

    def issubset(self, other: "Theory") -> bool:
        return self.formulas <= other.formulas

    @classmethod
    def of(cls, formulas: Iterable[Formula], goal: Formula) -> "Theory":
        return cls(formulas=frozenset(formulas), goal=goal)


class PrimeTheoryCert(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    theory: Theory
    fragment: Fragment
    closed: bool
    disj: bool
    consistent: bool

    @property
    def is_prime(self) -> bool:
        return self.closed and self.disj and self.consistent


class InsertionStep(BaseModel):
    """One treated disjunction of the prime extension tower."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    stage: int
    code: int
    disjunction: Formula
    added: Formula


class CanonicalModel(BaseModel):
    """Finite canonical model over a fragment; labels map world ids to theories."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    model: KripkeModel
    labels: Dict[int, FrozenSet[Formula]]
    fragment: Fragment

    def world_of(self, formulas: FrozenSet[Formula]) -> Optional[int]:
        for w, label in self.labels.items():
            if label == formulas:
                return w
        return None


class TruthLemmaVerdict(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    ok: bool
    world: Optional[int] = None
    formula: Optional[Formula] = None
    # "forced-not-member" or "member-not-forced"
    direction: Optional[str] = None


StageSnapshot = Tuple[int, FrozenSet[Formula]]
