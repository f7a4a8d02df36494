from dataclasses import dataclass
from typing import FrozenSet, Iterator, Tuple

from pydantic import BaseModel, ConfigDict, PrivateAttr, model_validator


class Formula:
    """Base class of intuitionistic propositional formulas.

    Nodes are immutable and compared structurally. Negation has no node of
    its own: ``Neg(p)`` builds ``Impl(p, Bot())``.
    """
    __slots__ = ()


@dataclass(frozen=True)
class Atom(Formula):
    index: int


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Impl(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class And(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Or(Formula):
    lhs: Formula
    rhs: Formula


BOT = Bot()


def Neg(p: Formula) -> Impl:
    return Impl(p, BOT)


def is_neg(p: Formula) -> bool:
    return isinstance(p, Impl) and p.rhs == BOT


# Contexts are plain sets of formulas; "Γ , p" is set insertion
Context = FrozenSet[Formula]


class Fragment(BaseModel):
    """Finite subformula-closed set of formulas, ordered by code.

    Always contains Bot so consistency can be stated inside the fragment.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    formulas: Tuple[Formula, ...]

    _members: FrozenSet[Formula] = PrivateAttr(default=frozenset())

    @model_validator(mode="after")
    def _closed_under_subformulas(self) -> "Fragment":
        members = set(self.formulas)
        if len(members) != len(self.formulas):
            raise ValueError("fragment lists a formula twice")
        if BOT not in members:
            raise ValueError("fragment must contain Bot")
        for p in self.formulas:
            if isinstance(p, (Impl, And, Or)):
                if p.lhs not in members or p.rhs not in members:
                    raise ValueError("fragment is not closed under immediate subformulas")
        return self

    def model_post_init(self, __context) -> None:
        self._members = frozenset(self.formulas)

    def __contains__(self, p: object) -> bool:
        return p in self.members

    def __iter__(self) -> Iterator[Formula]:
        return iter(self.formulas)

    def __len__(self) -> int:
        return len(self.formulas)

    @property
    def members(self) -> FrozenSet[Formula]:
        return self._members

    @property
    def disjunctions(self) -> Tuple[Or, ...]:
        return tuple(p for p in self.formulas if isinstance(p, Or))

    @property
    def implications(self) -> Tuple[Impl, ...]:
        return tuple(p for p in self.formulas if isinstance(p, Impl))
