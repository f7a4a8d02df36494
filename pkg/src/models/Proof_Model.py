from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict

from src.models.Formula_Model import Formula


class Derivation:
    """Hilbert derivation tree node.

    One node kind per constructor of the proof relation: ax, k, s, exf, mp,
    pr1, pr2, pair, inr, inl, case. Scheme nodes carry their formula
    parameters explicitly, so checking never has to unify.

    Note the disjunction introductions keep their historical orientation:
    ``Inr(p, q)`` concludes ``p ⊃ (p ∨ q)`` and ``Inl(p, q)`` concludes
    ``q ⊃ (p ∨ q)``.
    """
    __slots__ = ()


@dataclass(frozen=True)
class Ax(Derivation):
    p: Formula


@dataclass(frozen=True)
class K(Derivation):
    p: Formula
    q: Formula


@dataclass(frozen=True)
class S(Derivation):
    p: Formula
    q: Formula
    r: Formula


@dataclass(frozen=True)
class Exf(Derivation):
    p: Formula


@dataclass(frozen=True)
class Mp(Derivation):
    left: Derivation   # concludes a ⊃ b
    right: Derivation  # concludes a


@dataclass(frozen=True)
class Pr1(Derivation):
    p: Formula
    q: Formula


@dataclass(frozen=True)
class Pr2(Derivation):
    p: Formula
    q: Formula


@dataclass(frozen=True)
class Pair(Derivation):
    p: Formula
    q: Formula


@dataclass(frozen=True)
class Inr(Derivation):
    p: Formula
    q: Formula


@dataclass(frozen=True)
class Inl(Derivation):
    p: Formula
    q: Formula


@dataclass(frozen=True)
class Case(Derivation):
    p: Formula
    q: Formula
    r: Formula


# Constructor names as they appear in proof files
NODE_NAMES = {
    Ax: "ax", K: "k", S: "s", Exf: "exf", Mp: "mp", Pr1: "pr1",
    Pr2: "pr2", Pair: "pair", Inr: "inr", Inl: "inl", Case: "case",
}


class RejectReason(str, Enum):
    AX_NOT_IN_CONTEXT = "AxNotInContext"
    MP_MISMATCH = "MpMismatch"
    CONCLUSION_MISMATCH = "ConclusionMismatch"


class ProofVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    accepted: bool
    path: Optional[Tuple[int, ...]] = None  # child indices from the root, 0 = major premise
    reason: Optional[RejectReason] = None

    @classmethod
    def accept(cls) -> "ProofVerdict":
        return cls(accepted=True)

    @classmethod
    def reject(cls, path: Tuple[int, ...], reason: RejectReason) -> "ProofVerdict":
        return cls(accepted=False, path=path, reason=reason)

    @property
    def path_text(self) -> str:
        return ".".join(["root", *(str(i) for i in self.path or ())])
