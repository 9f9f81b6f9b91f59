"""Symmetry groups acting on stores and on measured partitions.

* :class:`FinPerm` -- permutations of the naturals moving finitely many points.
* :class:`PwAffine` -- bijections of [0, 1) made of finitely many increasing
  affine pieces. They preserve negligible sets but not length.

Both act on the right: ``x . (pi o sigma) == (x . pi) . sigma``, so
``compose(a, b)`` is ``a o b`` (apply ``b`` first).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import InputError
from .exact import IntervalSet, to_rat
from .partitions import MeasuredPartition, MPartition, is_coarser
from .prob import Decoder, StepFn

Interval = tuple[Fraction, Fraction]
AffinePiece = tuple[Interval, Interval]


class FinPerm:
    """A finitely supported permutation of the naturals."""

    __slots__ = ("mapping", "_hash")

    def __init__(self, pairs: Iterable[tuple[int, int]] | Mapping[int, int] = ()):
        if isinstance(pairs, Mapping):
            pairs = pairs.items()
        mapping = {}
        for n, m in pairs:
            if isinstance(n, bool) or isinstance(m, bool) or int(n) != n or int(m) != m or n < 0 or m < 0:
                raise InputError(f"permutation entries must be naturals, got {(n, m)!r}")
            n, m = int(n), int(m)
            if n in mapping and mapping[n] != m:
                raise InputError(f"{n} is mapped twice")
            mapping[n] = m
        if len(set(mapping.values())) != len(mapping) or set(mapping.values()) != set(mapping):
            raise InputError("not a bijection on its support")
        self.mapping = {n: m for n, m in sorted(mapping.items()) if n != m}
        self._hash = None

    @classmethod
    def identity(cls) -> FinPerm:
        return cls()

    @classmethod
    def swap(cls, a: int, b: int) -> FinPerm:
        return cls({a: b, b: a})

    @classmethod
    def cycle(cls, *points: int) -> FinPerm:
        """``cycle(0, 1, 2)`` sends 0 to 1, 1 to 2 and 2 to 0."""
        return cls({p: points[(i + 1) % len(points)] for i, p in enumerate(points)})

    def __call__(self, n: int) -> int:
        return self.mapping.get(n, n)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.mapping)

    def compose(self, other: FinPerm) -> FinPerm:
        points = self.support | other.support
        return FinPerm({n: self(other(n)) for n in points})

    def inverse(self) -> FinPerm:
        return FinPerm({m: n for n, m in self.mapping.items()})

    def __mul__(self, other: FinPerm) -> FinPerm:
        return self.compose(other)

    def __eq__(self, other) -> bool:
        return isinstance(other, FinPerm) and self.mapping == other.mapping

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self.mapping.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"FinPerm({self.mapping!r})"


def compose_perm(a: FinPerm, b: FinPerm) -> FinPerm:
    return a.compose(b)


def invert_perm(a: FinPerm) -> FinPerm:
    return a.inverse()


def _check_tiling(intervals: list[Interval], what: str) -> None:
    cursor = Fraction(0)
    for a, b in sorted(intervals):
        if a != cursor or not a < b:
            raise InputError(f"{what} intervals do not tile [0, 1)")
        cursor = b
    if cursor != 1:
        raise InputError(f"{what} intervals do not tile [0, 1)")


def _slope(piece: AffinePiece) -> Fraction:
    (a, b), (c, d) = piece
    return (d - c) / (b - a)


class PwAffine:
    """A bijection of [0, 1) acting by increasing affine maps ``src -> dst`` on pieces.

    The canonical form sorts pieces by source and fuses neighbours that continue
    one another with the same slope, so equal maps have equal representations.
    """

    __slots__ = ("pieces", "_hash")

    def __init__(self, pieces: Iterable):
        norm = []
        for src, dst in pieces:
            a, b = (to_rat(v) for v in src)
            c, d = (to_rat(v) for v in dst)
            if not (0 <= a < b <= 1 and 0 <= c < d <= 1):
                raise InputError(f"bad affine piece [{a},{b}) -> [{c},{d})")
            norm.append(((a, b), (c, d)))
        _check_tiling([p[0] for p in norm], "source")
        _check_tiling([p[1] for p in norm], "target")
        norm.sort()
        fused: list[AffinePiece] = []
        for piece in norm:
            if fused:
                (pa, pb), (pc, pd) = fused[-1]
                (a, b), (c, d) = piece
                if pb == a and pd == c and _slope(fused[-1]) == _slope(piece):
                    fused[-1] = ((pa, b), (pc, d))
                    continue
            fused.append(piece)
        self.pieces: tuple[AffinePiece, ...] = tuple(fused)
        self._hash = None

    @classmethod
    def identity(cls) -> PwAffine:
        return cls([((0, 1), (0, 1))])

    def __call__(self, x) -> Fraction:
        x = to_rat(x)
        for (a, b), (c, d) in self.pieces:
            if a <= x < b:
                return c + (x - a) * (d - c) / (b - a)
        raise InputError(f"{x} is outside [0, 1)")

    def preimage(self, s: IntervalSet) -> IntervalSet:
        out = []
        for (a, b), (c, d) in self.pieces:
            scale = (b - a) / (d - c)
            for u, v in s.pieces:
                lo, hi = max(u, c), min(v, d)
                if lo < hi:
                    out.append((a + (lo - c) * scale, a + (hi - c) * scale))
        return IntervalSet(out)

    def image(self, s: IntervalSet) -> IntervalSet:
        return self.inverse().preimage(s)

    def inverse(self) -> PwAffine:
        return PwAffine([(dst, src) for src, dst in self.pieces])

    def compose(self, other: PwAffine) -> PwAffine:
        """``self o other``: apply ``other`` first."""
        out = []
        for (a, b), (c, d) in other.pieces:
            back = (b - a) / (d - c)
            for (e, f), (g, h) in self.pieces:
                lo, hi = max(c, e), min(d, f)
                if lo >= hi:
                    continue
                fwd = (h - g) / (f - e)
                src = (a + (lo - c) * back, a + (hi - c) * back)
                dst = (g + (lo - e) * fwd, g + (hi - e) * fwd)
                out.append((src, dst))
        return PwAffine(out)

    def __mul__(self, other: PwAffine) -> PwAffine:
        return self.compose(other)

    def __eq__(self, other) -> bool:
        return isinstance(other, PwAffine) and self.pieces == other.pieces

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.pieces)
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"[{a},{b})->[{c},{d})" for (a, b), (c, d) in self.pieces)
        return f"PwAffine({body})"


def compose_aff(a: PwAffine, b: PwAffine) -> PwAffine:
    return a.compose(b)


def invert_aff(a: PwAffine) -> PwAffine:
    return a.inverse()


def preimage_set(pi: PwAffine, s: IntervalSet) -> IntervalSet:
    return pi.preimage(s)


def _point_at_length(s: IntervalSet, length: Fraction) -> Fraction:
    """Point where the cumulative length of ``s`` reaches ``length``, on the right of any gap."""
    acc = Fraction(0)
    for a, b in s.pieces:
        if acc + (b - a) > length:
            return a + (length - acc)
        acc += b - a
    return s.pieces[-1][1]


def match_sets(src: IntervalSet, dst: IntervalSet) -> list[AffinePiece]:
    """Increasing piecewise-affine map of ``src`` onto ``dst`` by proportional length.

    A point at relative cumulative length ``t`` inside ``src`` goes to the point at
    relative cumulative length ``t`` inside ``dst``.
    """
    if src.is_empty() or dst.is_empty():
        raise InputError("cannot match an empty set")
    ls, ld = src.measure(), dst.measure()

    def cuts(s, total):
        acc, out = Fraction(0), {Fraction(0)}
        for a, b in s.pieces:
            acc += b - a
            out.add(acc / total)
        return out

    ts = sorted(cuts(src, ls) | cuts(dst, ld))
    pieces = []
    for t0, t1 in zip(ts, ts[1:]):
        x = _point_at_length(src, t0 * ls)
        y = _point_at_length(dst, t0 * ld)
        pieces.append(((x, x + (t1 - t0) * ls), (y, y + (t1 - t0) * ld)))
    return pieces


def swap_sets(s1: IntervalSet, s2: IntervalSet) -> PwAffine:
    """Exchange two disjoint nonempty sets proportionally; identity elsewhere."""
    if not s1.isdisjoint(s2):
        raise InputError("sets to swap must be disjoint")
    rest = s1.union(s2).complement()
    pieces = match_sets(s1, s2) + match_sets(s2, s1)
    pieces += [((a, b), (a, b)) for a, b in rest.pieces]
    return PwAffine(pieces)


# -- actions -----------------------------------------------------------------

def act_on_nom_store(s: Mapping[int, int], pi: FinPerm) -> dict[int, int]:
    """``s . pi = s o pi``."""
    inv = pi.inverse()
    return {inv(n): v for n, v in s.items()}


def act_on_nom_subst(gamma: Mapping[str, int], pi: FinPerm) -> dict[str, int]:
    """``gamma . pi = pi^-1 o gamma``."""
    inv = pi.inverse()
    return {x: inv(n) for x, n in gamma.items()}


def act_on_measured_partition(p: MeasuredPartition, pi: PwAffine) -> MeasuredPartition:
    return MeasuredPartition._trusted([pi.preimage(c) for c in p.cells], p.masses)


def act_on_partition(a: MPartition, pi: PwAffine) -> MPartition:
    return MPartition._trusted([pi.preimage(c) for c in a.cells])


def act_on_step_fn(x: StepFn, pi: PwAffine) -> StepFn:
    """``X . pi = X o pi``."""
    return StepFn({k: pi.preimage(s) for k, s in x.levels})


def act_on_random_subst(G: Mapping[str, StepFn], pi: PwAffine) -> dict[str, StepFn]:
    return {x: act_on_step_fn(rv, pi) for x, rv in G.items()}


def fixes_partition(pi: PwAffine, a: MPartition) -> bool:
    return all(pi.preimage(c) == c for c in a.cells)


# -- constructive witnesses ----------------------------------------------------

def homogeneity_auto(p: Mapping, dec_prime: Decoder, dec: Decoder) -> PwAffine:
    """An automorphism ``pi`` with ``dec(pi(x)) == p(dec_prime(x))`` almost everywhere.

    For each target point the union of the fibers of its ``p``-preimages is
    matched onto its own fiber by proportional length.
    """
    if set(p) != set(dec_prime.omega):
        raise InputError("surjection domain differs from the source decoder's sample space")
    image = set(p.values())
    if not image <= set(dec.omega):
        raise InputError("surjection leaves the target decoder's sample space")
    if image != set(dec.omega):
        raise InputError("map is not surjective")
    pieces = []
    for w in dec.omega:
        src = dec_prime.preimage([v for v in dec_prime.omega if p[v] == w])
        pieces += match_sets(src, dec.fibers[w])
    return PwAffine(pieces)


def correspondence_witness(a: MPartition, b: MPartition) -> PwAffine:
    """An automorphism fixing ``a`` but not ``b``; requires ``a`` not finer than ``b``.

    Takes the first cell of ``a`` meeting two cells ``B1, B2`` of ``b`` and swaps
    its two pieces inside ``B1`` and ``B2``.
    """
    if is_coarser(b, a):
        raise InputError("first partition is finer than the second; every automorphism "
                         "fixing it also fixes the second")
    for cell in a.cells:
        hits = [cell.intersect(big) for big in b.cells]
        hits = [h for h in hits if not h.is_empty()]
        if len(hits) >= 2:
            return swap_sets(hits[0], hits[1])
    raise AssertionError("unreachable: a not finer than b but no split cell")
