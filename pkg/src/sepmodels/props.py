"""Proposition syntax trees for the store logic and the probabilistic logic.

Both logics share ``Top``, ``Star``, ``And`` and ``Or``; the store logic adds
``PointsTo`` atoms and the probabilistic logic adds ``Dist`` atoms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from .errors import InputError
from .exact import to_rat


@dataclass(frozen=True)
class PMF:
    """Finitely supported probability mass function on the integers.

    Zero-mass points are dropped, so two PMFs are equal iff they agree everywhere.
    """

    support: tuple[tuple[int, Fraction], ...]

    def __init__(self, masses: Mapping[int, object]):
        items = []
        for k, m in masses.items():
            m = to_rat(m)
            if m < 0:
                raise InputError(f"negative probability {m} at {k}")
            if m:
                items.append((int(k), m))
        items.sort()
        if sum(m for _, m in items) != 1:
            raise InputError("probabilities must sum to 1")
        object.__setattr__(self, "support", tuple(items))

    @classmethod
    def bernoulli(cls, p) -> PMF:
        p = to_rat(p)
        if not 0 <= p <= 1:
            raise InputError(f"Bernoulli parameter {p} outside [0, 1]")
        return cls({0: 1 - p, 1: p})

    def __call__(self, k: int) -> Fraction:
        return dict(self.support).get(k, Fraction(0))

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.support)

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {m}" for k, m in self.support)
        return f"PMF({{{body}}})"


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class PointsTo:
    var: str
    value: int


@dataclass(frozen=True)
class Dist:
    var: str
    pmf: PMF


@dataclass(frozen=True)
class Star:
    left: "Prop"
    right: "Prop"


@dataclass(frozen=True)
class And:
    left: "Prop"
    right: "Prop"


@dataclass(frozen=True)
class Or:
    left: "Prop"
    right: "Prop"


Prop = Union[Top, PointsTo, Dist, Star, And, Or]
BINARY = (Star, And, Or)


def free_vars(prop: Prop) -> frozenset[str]:
    if isinstance(prop, (PointsTo, Dist)):
        return frozenset([prop.var])
    if isinstance(prop, BINARY):
        return free_vars(prop.left) | free_vars(prop.right)
    return frozenset()


def depth(prop: Prop) -> int:
    if isinstance(prop, BINARY):
        return 1 + max(depth(prop.left), depth(prop.right))
    return 0


def size(prop: Prop) -> int:
    if isinstance(prop, BINARY):
        return 1 + size(prop.left) + size(prop.right)
    return 1


def kind_of(prop: Prop) -> str | None:
    """``"store"``, ``"prob"`` or ``None`` for atom-free propositions.

    Raises :class:`InputError` on a mixture of both atom kinds.
    """
    if isinstance(prop, PointsTo):
        return "store"
    if isinstance(prop, Dist):
        return "prob"
    if isinstance(prop, BINARY):
        kinds = {kind_of(prop.left), kind_of(prop.right)} - {None}
        if len(kinds) > 1:
            raise InputError("proposition mixes store and probability atoms")
        return kinds.pop() if kinds else None
    return None
