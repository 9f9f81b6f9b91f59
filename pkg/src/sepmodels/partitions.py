"""Finite measurable and measured partitions of [0, 1).

Cells are canonical :class:`IntervalSet` values kept in canonical order (by
leftmost endpoint), so partition equality up to negligible sets is tuple
equality. Masses are exact and may be zero; only cells must be nonnegligible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from .errors import InputError
from .exact import UNIT, IntervalSet, equal_cells, to_rat


def set_partitions(items: Sequence) -> Iterator[list[list]]:
    """Yield every set partition of ``items`` (blocks keep input order)."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in set_partitions(rest):
        yield [[first]] + smaller
        for k in range(len(smaller)):
            yield smaller[:k] + [[first] + smaller[k]] + smaller[k + 1:]


class MPartition:
    """A finite partition of [0, 1) into nonempty canonical cells."""

    __slots__ = ("cells", "_hash")

    def __init__(self, cells: Iterable[IntervalSet]):
        cells = sorted(cells)
        seen = IntervalSet()
        for c in cells:
            if not isinstance(c, IntervalSet):
                raise InputError(f"cell must be an IntervalSet, got {c!r}")
            if c.is_empty():
                raise InputError("partition cells must be nonnegligible")
            if not seen.isdisjoint(c):
                raise InputError("partition cells overlap")
            seen = seen.union(c)
        if seen != UNIT:
            raise InputError("partition cells do not cover [0, 1)")
        self.cells: tuple[IntervalSet, ...] = tuple(cells)
        self._hash = None

    @classmethod
    def _trusted(cls, cells) -> MPartition:
        obj = cls.__new__(cls)
        obj.cells = tuple(sorted(cells))
        obj._hash = None
        return obj

    @classmethod
    def equal(cls, n: int) -> MPartition:
        return cls._trusted(equal_cells(n))

    @classmethod
    def unit(cls) -> MPartition:
        return cls._trusted([UNIT])

    def index_of(self, cell: IntervalSet) -> int:
        return self.cells.index(cell)

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def __eq__(self, other) -> bool:
        return isinstance(other, MPartition) and self.cells == other.cells

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.cells)
        return self._hash

    def __repr__(self) -> str:
        return f"MPartition({list(self.cells)!r})"


class MeasuredPartition:
    """A partition of [0, 1) with an exact mass per cell; masses sum to 1."""

    __slots__ = ("partition", "masses", "_hash")

    def __init__(self, cells, masses):
        """``masses`` align with ``cells``; an :class:`MPartition` is taken as already sorted."""
        masses = [to_rat(m) for m in masses]
        if isinstance(cells, MPartition):
            partition = cells
            ms = tuple(masses)
        else:
            cells = list(cells)
            partition = MPartition(cells)
            lookup = dict(zip(cells, masses))
            ms = tuple(lookup[c] for c in partition.cells)
        if len(masses) != len(partition.cells):
            raise InputError("one mass per cell is required")
        if any(m < 0 for m in ms):
            raise InputError("masses must be nonnegative")
        if sum(ms) != 1:
            raise InputError(f"masses sum to {sum(ms)}, not 1")
        self.partition = partition
        self.masses: tuple[Fraction, ...] = ms
        self._hash = None

    @classmethod
    def _trusted(cls, cells, masses) -> MeasuredPartition:
        pairs = sorted(zip(cells, masses))
        obj = cls.__new__(cls)
        obj.partition = MPartition._trusted([c for c, _ in pairs])
        obj.masses = tuple(m for _, m in pairs)
        obj._hash = None
        return obj

    @classmethod
    def unit(cls) -> MeasuredPartition:
        return cls._trusted([UNIT], [Fraction(1)])

    @classmethod
    def equal(cls, n: int, masses=None) -> MeasuredPartition:
        if masses is None:
            masses = [Fraction(1, n)] * n
        return cls(equal_cells(n), masses)

    @property
    def cells(self) -> tuple[IntervalSet, ...]:
        return self.partition.cells

    def mass_of(self, cell: IntervalSet) -> Fraction:
        return self.masses[self.partition.index_of(cell)]

    def items(self):
        return zip(self.partition.cells, self.masses)

    def measurable_mass(self, s: IntervalSet) -> Optional[Fraction]:
        """Mass of ``s`` if it is (a.e.) a union of cells, else ``None``."""
        total = Fraction(0)
        for cell, m in self.items():
            inter = cell.intersect(s)
            if inter.is_empty():
                continue
            if inter != cell:
                return None
            total += m
        return total

    def __len__(self) -> int:
        return len(self.masses)

    def __eq__(self, other) -> bool:
        return (isinstance(other, MeasuredPartition)
                and self.partition == other.partition
                and self.masses == other.masses)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.partition, self.masses))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{c!r}: {m}" for c, m in self.items())
        return f"MeasuredPartition({{{body}}})"


def parteq(a: MPartition, b: MPartition) -> bool:
    return a.cells == b.cells


def is_coarser(a: MPartition, b: MPartition) -> bool:
    """True iff every cell of ``a`` is a union of cells of ``b``."""
    for cell in b.cells:
        hits = sum(1 for big in a.cells if not big.isdisjoint(cell))
        if hits != 1:
            return False
    return True


def common_refinement(a: MPartition, b: MPartition) -> MPartition:
    cells = []
    for x in a.cells:
        for y in b.cells:
            inter = x.intersect(y)
            if inter:
                cells.append(inter)
    return MPartition._trusted(cells)


def dorder(p: MeasuredPartition, q: MeasuredPartition) -> bool:
    """``p`` is coarser than ``q`` and ``q``'s masses restrict to ``p``'s."""
    sums = [Fraction(0)] * len(p.masses)
    for cell, m in q.items():
        owners = [i for i, big in enumerate(p.cells) if not big.isdisjoint(cell)]
        if len(owners) != 1 or not cell.issubset(p.cells[owners[0]]):
            return False
        sums[owners[0]] += m
    return tuple(sums) == p.masses


def dicom(p: MeasuredPartition, q: MeasuredPartition) -> Optional[MeasuredPartition]:
    """Independent combination of ``p`` and ``q``, or ``None`` if not combinable.

    Empty intersections are dropped but force the product of the two masses to
    vanish.
    """
    cells, masses = [], []
    for a, ma in p.items():
        for b, mb in q.items():
            inter = a.intersect(b)
            if inter.is_empty():
                if ma * mb != 0:
                    return None
            else:
                cells.append(inter)
                masses.append(ma * mb)
    return MeasuredPartition._trusted(cells, masses)


def _check_grouping(grouping, n: int) -> list[list[int]]:
    groups = [sorted(int(i) for i in g) for g in grouping]
    flat = [i for g in groups for i in g]
    if any(not g for g in groups) or sorted(flat) != list(range(n)):
        raise InputError(f"grouping {grouping!r} is not a set partition of range({n})")
    return groups


def coarsen(p: MeasuredPartition, grouping) -> MeasuredPartition:
    """Merge the cells of ``p`` according to ``grouping`` (blocks of cell indices)."""
    groups = _check_grouping(grouping, len(p.masses))
    cells, masses = [], []
    for g in groups:
        cell = IntervalSet()
        for i in g:
            cell = cell.union(p.cells[i])
        cells.append(cell)
        masses.append(sum((p.masses[i] for i in g), Fraction(0)))
    return MeasuredPartition._trusted(cells, masses)


def coarsenings(p: MeasuredPartition) -> Iterator[MeasuredPartition]:
    """Every coarsening of ``p`` (one per set partition of its cells)."""
    for grouping in set_partitions(range(len(p.masses))):
        yield coarsen(p, grouping)
