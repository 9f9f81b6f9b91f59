"""Exact rationals and canonical finite unions of half-open subintervals of [0, 1).

Every measure-theoretic object in the package is built from :class:`IntervalSet`.
Sets are kept in a canonical form (sorted, disjoint, non-adjacent half-open
pieces), so almost-everywhere equality is plain equality of representations.
"""

from __future__ import annotations

import bisect
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Tuple

from .errors import InputError

Rat = Fraction
Piece = Tuple[Fraction, Fraction]


def to_rat(value) -> Fraction:
    """Coerce ``value`` to an exact :class:`Fraction`.

    Accepts ints, Fractions and strings like ``"3/4"``. Floats are refused because
    they would silently smuggle rounding error into the exact layer.
    """
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    raise InputError(f"not a rational: {value!r}")


def format_rat(q: Fraction) -> str:
    return str(Fraction(q))


def _canonical(pieces: list[Piece]) -> tuple[Piece, ...]:
    pieces.sort()
    out: list[Piece] = []
    for a, b in pieces:
        if out and a <= out[-1][1]:
            if b > out[-1][1]:
                out[-1] = (out[-1][0], b)
        else:
            out.append((a, b))
    return tuple(out)


class IntervalSet:
    """A finite union of half-open intervals ``[a, b)`` inside ``[0, 1)``.

    The constructor accepts any list of endpoint pairs (overlapping, unsorted,
    degenerate) and stores the canonical form.
    """

    __slots__ = ("pieces", "_hash")

    def __init__(self, raw: Iterable = ()):
        pieces = []
        for pair in raw:
            try:
                a, b = pair
            except (TypeError, ValueError) as exc:
                raise InputError(f"expected an endpoint pair, got {pair!r}") from exc
            a, b = to_rat(a), to_rat(b)
            if not (0 <= a <= b <= 1):
                raise InputError(f"bad interval [{a}, {b}): need 0 <= a <= b <= 1")
            if a < b:
                pieces.append((a, b))
        self.pieces: tuple[Piece, ...] = _canonical(pieces)
        self._hash = None

    @classmethod
    def _trusted(cls, pieces: tuple[Piece, ...]) -> IntervalSet:
        obj = cls.__new__(cls)
        obj.pieces = pieces
        obj._hash = None
        return obj

    @classmethod
    def interval(cls, a, b) -> IntervalSet:
        return cls([(a, b)])

    # -- Boolean algebra -------------------------------------------------

    def intersect(self, other: IntervalSet) -> IntervalSet:
        xs, ys = self.pieces, other.pieces
        out = []
        i = j = 0
        while i < len(xs) and j < len(ys):
            lo = max(xs[i][0], ys[j][0])
            hi = min(xs[i][1], ys[j][1])
            if lo < hi:
                out.append((lo, hi))
            if xs[i][1] < ys[j][1]:
                i += 1
            else:
                j += 1
        return IntervalSet._trusted(tuple(out))

    def union(self, other: IntervalSet) -> IntervalSet:
        if not other.pieces:
            return self
        if not self.pieces:
            return other
        return IntervalSet._trusted(_canonical(list(self.pieces) + list(other.pieces)))

    def complement(self) -> IntervalSet:
        out = []
        cursor = Fraction(0)
        for a, b in self.pieces:
            if cursor < a:
                out.append((cursor, a))
            cursor = b
        if cursor < 1:
            out.append((cursor, Fraction(1)))
        return IntervalSet._trusted(tuple(out))

    def difference(self, other: IntervalSet) -> IntervalSet:
        return self.intersect(other.complement())

    def symm_diff(self, other: IntervalSet) -> IntervalSet:
        return self.difference(other).union(other.difference(self))

    __and__ = intersect
    __or__ = union
    __sub__ = difference
    __xor__ = symm_diff

    def __invert__(self) -> IntervalSet:
        return self.complement()

    # -- queries -------------------------------------------------------

    def measure(self) -> Fraction:
        return sum((b - a for a, b in self.pieces), Fraction(0))

    def ae_equal(self, other: IntervalSet) -> bool:
        return self.pieces == other.pieces

    def is_empty(self) -> bool:
        return not self.pieces

    def issubset(self, other: IntervalSet) -> bool:
        return self.intersect(other).pieces == self.pieces

    def isdisjoint(self, other: IntervalSet) -> bool:
        return not self.intersect(other).pieces

    def contains(self, x) -> bool:
        x = Fraction(x)
        k = bisect.bisect_right(self.pieces, (x, Fraction(2))) - 1
        return k >= 0 and self.pieces[k][0] <= x < self.pieces[k][1]

    @property
    def leftmost(self) -> Fraction:
        if not self.pieces:
            raise InputError("empty IntervalSet has no leftmost point")
        return self.pieces[0][0]

    def breakpoints(self) -> set[Fraction]:
        return {e for piece in self.pieces for e in piece}

    # -- dunder ----------------------------------------------------------

    def __iter__(self) -> Iterator[Piece]:
        return iter(self.pieces)

    def __len__(self) -> int:
        return len(self.pieces)

    def __bool__(self) -> bool:
        return bool(self.pieces)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntervalSet) and self.pieces == other.pieces

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.pieces)
        return self._hash

    def __lt__(self, other: IntervalSet) -> bool:
        # canonical cell order: by leftmost endpoint, then piecewise
        return self.pieces < other.pieces

    def __repr__(self) -> str:
        if not self.pieces:
            return "IntervalSet(∅)"
        body = " ∪ ".join(f"[{a},{b})" for a, b in self.pieces)
        return f"IntervalSet({body})"


EMPTY = IntervalSet()
UNIT = IntervalSet.interval(0, 1)


def make_interval_set(raw: Iterable) -> IntervalSet:
    return IntervalSet(raw)


def equal_cells(n: int) -> list[IntervalSet]:
    """Split [0, 1) into ``n`` consecutive equal-length cells."""
    if n < 1:
        raise InputError("need at least one cell")
    return [IntervalSet.interval(Fraction(k, n), Fraction(k + 1, n)) for k in range(n)]
