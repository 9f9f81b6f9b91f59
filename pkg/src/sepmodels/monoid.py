"""Affine resource monoids and a seeded law-checking harness.

A resource monoid is a poset with least element ``unit`` and a monotone
partial commutative join. Three instances ship here: nominal stores under
disjoint union, measured partitions under independent combination, and
probability spaces on a fixed finite sample space under independent join.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from random import Random
from typing import Any, Callable, Optional

from .exact import IntervalSet
from .partitions import MeasuredPartition, coarsen, dicom, dorder
from .prob import FinProbSpace, subspace_leq


@dataclass(frozen=True)
class ResourceMonoid:
    """Operations plus random generators used by :func:`check_laws`.

    ``pjoin`` returns ``None`` when undefined. ``sample_joinable(rng, k)`` returns
    ``k`` elements that are jointly joinable by construction; ``sample_below(rng, x)``
    returns some element below ``x``.
    """

    name: str
    leq: Callable[[Any, Any], bool]
    unit: Any
    pjoin: Callable[[Any, Any], Optional[Any]]
    sample: Callable[[Random], Any]
    sample_joinable: Callable[[Random, int], tuple]
    sample_below: Callable[[Random, Any], Any]


@dataclass
class Violation:
    law: str
    elements: tuple[str, ...]
    seed: int
    case: int

    def to_json(self) -> dict:
        return {"law": self.law, "elements": list(self.elements), "seed": self.seed, "case": self.case}


@dataclass
class LawReport:
    instance: str
    seed: int
    cases: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def merge(self, other: LawReport) -> LawReport:
        return LawReport(self.instance, self.seed, self.cases + other.cases,
                         self.violations + other.violations)

    def to_json(self) -> dict:
        return {"instance": self.instance, "seed": self.seed, "cases": self.cases,
                "violations": [v.to_json() for v in self.violations]}

    def summary(self) -> str:
        return f"{self.cases} cases, {len(self.violations)} violations"


def _pair(inst: ResourceMonoid, rng: Random) -> tuple:
    # biased: half the time joinable by construction, otherwise independent draws
    if rng.random() < 0.5:
        return inst.sample_joinable(rng, 2)
    return inst.sample(rng), inst.sample(rng)


def _triple(inst: ResourceMonoid, rng: Random) -> tuple:
    if rng.random() < 0.5:
        return inst.sample_joinable(rng, 3)
    if rng.random() < 0.5:
        x, y = inst.sample_joinable(rng, 2)
        return x, y, inst.sample(rng)
    return inst.sample(rng), inst.sample(rng), inst.sample(rng)


def _check_case(inst: ResourceMonoid, rng: Random, seed: int, case: int) -> list[Violation]:
    leq, join, unit = inst.leq, inst.pjoin, inst.unit
    found = []

    def bad(law, *elements):
        found.append(Violation(law, tuple(repr(e) for e in elements), seed, case))

    x = inst.sample(rng)
    for law, joined in (("unit-left", join(unit, x)), ("unit-right", join(x, unit))):
        if joined is None or joined != x:
            bad(law, x)

    x, y = _pair(inst, rng)
    xy, yx = join(x, y), join(y, x)
    if (xy is None) != (yx is None) or (xy is not None and xy != yx):
        bad("commutativity", x, y)

    x, y, z = _triple(inst, rng)
    xy, yz = join(x, y), join(y, z)
    left = join(xy, z) if xy is not None else None
    right = join(x, yz) if yz is not None else None
    if left is not None and (right is None or right != left):
        bad("associativity", x, y, z)
    if right is not None and (left is None or left != right):
        bad("associativity", x, y, z)

    x = inst.sample(rng)
    if not leq(x, x):
        bad("reflexivity", x)
    if not leq(unit, x):
        bad("least-element", x)
    y = inst.sample_below(rng, x)
    z = inst.sample_below(rng, y)
    if leq(x, y) and leq(y, x) and x != y:
        bad("antisymmetry", x, y)
    if leq(z, y) and leq(y, x) and not leq(z, x):
        bad("transitivity", z, y, x)

    x2, y2 = _pair(inst, rng)
    x1 = inst.sample_below(rng, x2)
    y1 = unit if rng.random() < 0.25 else inst.sample_below(rng, y2)
    big = join(x2, y2)
    if big is not None:
        small = join(x1, y1)
        if small is None or not leq(small, big):
            bad("monotonicity", x1, y1, x2, y2)
    return found


def check_laws(inst: ResourceMonoid, seed: int, cases: int) -> LawReport:
    """Run ``cases`` randomized cases (deterministic per ``seed``) of every law."""
    if cases < 0:
        raise ValueError("cases must be nonnegative")
    report = LawReport(inst.name, seed)
    for case in range(cases):
        rng = Random(seed * 1_000_003 + case)
        report.violations.extend(_check_case(inst, rng, seed, case))
        report.cases += 1
    return report


# -- shared random helpers ----------------------------------------------------

def _random_masses(rng: Random, k: int) -> list[Fraction]:
    while True:
        weights = [rng.choice((0, 1, 1, 2, 3)) if rng.random() < 0.3 else rng.randint(1, 4)
                   for _ in range(k)]
        if sum(weights):
            return [Fraction(w, sum(weights)) for w in weights]


def _random_labels(rng: Random, n: int, k: int) -> list[int]:
    """A surjective labelling of ``n`` items onto ``range(k)`` (requires k <= n)."""
    labels = list(range(k)) + [rng.randrange(k) for _ in range(n - k)]
    rng.shuffle(labels)
    return labels


def _lay_out(rng: Random, labels: list) -> dict:
    """Lay pieces with random lengths along [0, 1); union the pieces sharing a label."""
    lengths = [rng.randint(1, 3) for _ in labels]
    total = sum(lengths)
    cells: dict[Any, list] = {}
    cursor = 0
    for label, length in zip(labels, lengths):
        cells.setdefault(label, []).append((Fraction(cursor, total), Fraction(cursor + length, total)))
        cursor += length
    return {label: IntervalSet(pieces) for label, pieces in cells.items()}


def _product_layout(rng: Random, dims: list[int], masses: list[list[Fraction]]) -> list[dict]:
    """Index tuples of a product grid, each owning one or two pieces of [0, 1).

    Tuples whose product mass vanishes may be absorbed by a neighbour, which
    leaves an empty intersection that the join must tolerate.
    """
    tuples = list(itertools.product(*(range(d) for d in dims)))
    owner = {t: t for t in tuples}
    for t in tuples:
        prod = Fraction(1)
        for f, j in enumerate(t):
            prod *= masses[f][j]
        if prod == 0 and rng.random() < 0.5:
            owner[t] = rng.choice(tuples)
    for f, d in enumerate(dims):
        used = {owner[t][f] for t in tuples}
        if len(used) < d:
            owner = {t: t for t in tuples}
            break
    labels = []
    for t in tuples:
        labels += [owner[t]] * rng.choice((1, 1, 2))
    rng.shuffle(labels)
    return labels


# -- nominal stores -------------------------------------------------------------

def _store_join(s1: dict, s2: dict) -> Optional[dict]:
    if set(s1) & set(s2):
        return None
    return {**s1, **s2}


def _store_leq(s1: dict, s2: dict) -> bool:
    return all(k in s2 and s2[k] == v for k, v in s1.items())


def store_rm() -> ResourceMonoid:
    """Finite partial stores on the naturals; join is disjoint union, order is inclusion."""

    def sample(rng):
        locs = rng.sample(range(6), rng.randint(0, 4))
        return {n: rng.randint(0, 3) for n in sorted(locs)}

    def sample_joinable(rng, k):
        whole = {n: rng.randint(0, 3) for n in rng.sample(range(8), rng.randint(0, 6))}
        parts = [dict() for _ in range(k)]
        for n, v in whole.items():
            parts[rng.randrange(k)][n] = v
        return tuple(parts)

    def sample_below(rng, s):
        return {n: v for n, v in s.items() if rng.random() < 0.5}

    return ResourceMonoid("store", _store_leq, {}, _store_join, sample, sample_joinable, sample_below)


# -- measured partitions ----------------------------------------------------------

def _sample_partition(rng: Random) -> MeasuredPartition:
    k = rng.randint(1, 4)
    labels = _random_labels(rng, rng.randint(k, k + 2), k)
    cells = _lay_out(rng, labels)
    masses = _random_masses(rng, k)
    return MeasuredPartition([cells[j] for j in range(k)], masses)


def _sample_joinable_partitions(rng: Random, k: int) -> tuple:
    top = 3 if k <= 2 else 2
    dims = [rng.randint(1, top) for _ in range(k)]
    masses = [_random_masses(rng, d) for d in dims]
    cells = _lay_out(rng, _product_layout(rng, dims, masses))
    out = []
    for f, d in enumerate(dims):
        factor = []
        for j in range(d):
            s = IntervalSet()
            for t, piece in cells.items():
                if t[f] == j:
                    s = s.union(piece)
            factor.append(s)
        out.append(MeasuredPartition(factor, masses[f]))
    return tuple(out)


def _sample_coarsening(rng: Random, p):
    n = len(p.masses)
    k = rng.randint(1, n)
    labels = _random_labels(rng, n, k)
    return coarsen(p, [[i for i in range(n) if labels[i] == g] for g in range(k)])


def partition_rm() -> ResourceMonoid:
    """Measured partitions of [0, 1) under independent combination and refinement order."""
    return ResourceMonoid("partition", dorder, MeasuredPartition.unit(), dicom,
                          _sample_partition, _sample_joinable_partitions, _sample_coarsening)


def _sloppy_dicom(p: MeasuredPartition, q: MeasuredPartition) -> MeasuredPartition:
    cells, masses = [], []
    for a, ma in p.items():
        for b, mb in q.items():
            inter = a.intersect(b)
            if inter:
                cells.append(inter)
                masses.append(ma * mb)
    return MeasuredPartition._trusted(cells, masses)


def buggy_partition_rm() -> ResourceMonoid:
    """Canary: the join never checks the product-mass condition on empty intersections."""
    good = partition_rm()
    return ResourceMonoid("partition-canary", good.leq, good.unit, _sloppy_dicom,
                          good.sample, good.sample_joinable, good.sample_below)


# -- probability spaces on a fixed finite sample space ------------------------------

def fin_prob_join(P: FinProbSpace, Q: FinProbSpace) -> Optional[FinProbSpace]:
    """Independent join on a common sample space, or ``None`` when not independent."""
    atoms, masses = [], []
    for A, ma in zip(P.atoms, P.masses):
        for B, mb in zip(Q.atoms, Q.masses):
            inter = A & B
            if not inter:
                if ma * mb != 0:
                    return None
            else:
                atoms.append(inter)
                masses.append(ma * mb)
    return FinProbSpace(P.omega, atoms, masses)


def fin_prob_rm(omega=None) -> ResourceMonoid:
    """Probability spaces on ``omega`` (default: eight points) under independent join."""
    omega = list(omega) if omega is not None else [f"w{i}" for i in range(8)]
    n = len(omega)

    def from_labels(labels, masses):
        atoms = {}
        for w, label in zip(omega, labels):
            atoms.setdefault(label, []).append(w)
        keys = sorted(atoms)
        return FinProbSpace(omega, [atoms[k] for k in keys], [masses[k] for k in keys])

    def sample(rng):
        k = rng.randint(1, min(n, 4))
        return from_labels(_random_labels(rng, n, k), _random_masses(rng, k))

    def sample_joinable(rng, k):
        while True:
            dims = [rng.randint(1, 3) for _ in range(k)]
            size = 1
            for d in dims:
                size *= d
            if size <= n:
                break
        masses = [_random_masses(rng, d) for d in dims]
        owners = sorted(set(_product_layout(rng, dims, masses)))
        labels = owners + [rng.choice(owners) for _ in range(n - len(owners))]
        rng.shuffle(labels)
        return tuple(from_labels([t[f] for t in labels], dict(enumerate(masses[f])))
                     for f in range(k))

    def sample_below(rng, P):
        m = len(P.atoms)
        labels = _random_labels(rng, m, rng.randint(1, m))
        return P.coarsen(labels)

    return ResourceMonoid("finprob", subspace_leq, FinProbSpace.trivial(omega), fin_prob_join,
                          sample, sample_joinable, sample_below)


INSTANCES = {"store": store_rm, "partition": partition_rm, "finprob": fin_prob_rm}
