"""Seeded random instance generators shared by the property and acceptance tests."""

from __future__ import annotations

from fractions import Fraction
from random import Random

from sepmodels.exact import IntervalSet
from sepmodels.groups import FinPerm, PwAffine
from sepmodels.partitions import MPartition, MeasuredPartition, coarsenings, dorder
from sepmodels.prob import Decoder, FinProbSpace, StepFn
from sepmodels.props import PMF, And, Dist, Or, PointsTo, Star, Top

STORE_VARS = ("x", "y", "z")
PROB_VARS = ("X", "Y")


def random_cuts(rng: Random, k: int, denom: int = 12) -> list[Fraction]:
    """``k - 1`` distinct interior cut points, sorted, plus the ends 0 and 1."""
    inner = rng.sample(range(1, denom), k - 1)
    return [Fraction(0)] + sorted(Fraction(c, denom) for c in inner) + [Fraction(1)]


def random_masses(rng: Random, k: int, allow_zero: bool = False) -> list[Fraction]:
    lo = 0 if allow_zero else 1
    weights = [rng.randint(lo, 4) for _ in range(k)]
    if sum(weights) == 0:
        weights[rng.randrange(k)] = 1
    total = sum(weights)
    return [Fraction(w, total) for w in weights]


def random_labels(rng: Random, n: int, k: int) -> list[int]:
    """A surjection ``range(n) -> range(k)`` as a label list (needs n >= k)."""
    labels = list(range(k)) + [rng.randrange(k) for _ in range(n - k)]
    rng.shuffle(labels)
    return labels


def random_cells(rng: Random, k: int, pieces: int | None = None) -> list[IntervalSet]:
    """``k`` nonempty interval sets tiling [0, 1), each possibly a union of pieces."""
    pieces = pieces if pieces is not None else rng.randint(k, k + 3)
    cuts = random_cuts(rng, pieces, denom=max(12, 2 * pieces))
    labels = random_labels(rng, pieces, k)
    cells = [IntervalSet() for _ in range(k)]
    for i, label in enumerate(labels):
        cells[label] = cells[label] | IntervalSet.interval(cuts[i], cuts[i + 1])
    return cells


def random_mpartition(rng: Random, max_cells: int = 5) -> MPartition:
    return MPartition(random_cells(rng, rng.randint(1, max_cells)))


def random_measured(rng: Random, max_cells: int = 4, allow_zero: bool = False) -> MeasuredPartition:
    k = rng.randint(1, max_cells)
    return MeasuredPartition(random_cells(rng, k), random_masses(rng, k, allow_zero))


def random_pwaffine(rng: Random, max_pieces: int = 5) -> PwAffine:
    """A random interval exchange, possibly rescaling: sources and targets tile [0, 1)."""
    k = rng.randint(1, max_pieces)
    src = random_cuts(rng, k)
    dst = random_cuts(rng, k, denom=rng.choice((10, 12, 15)))
    order = list(range(k))
    rng.shuffle(order)
    return PwAffine([((src[i], src[i + 1]), (dst[order[i]], dst[order[i] + 1])) for i in range(k)])


def random_finperm(rng: Random, n: int = 8) -> FinPerm:
    image = list(range(n))
    rng.shuffle(image)
    return FinPerm(list(zip(range(n), image)))


def random_decoder(rng: Random, omega) -> Decoder:
    omega = list(omega)
    return Decoder(dict(zip(omega, random_cells(rng, len(omega)))))


# -- propositions -------------------------------------------------------------------

def random_store_prop(rng: Random, depth: int, variables=STORE_VARS, values: int = 3):
    if depth == 0 or rng.random() < 0.3:
        if rng.random() < 0.15:
            return Top()
        return PointsTo(rng.choice(variables), rng.randrange(values))
    node = rng.choice((Star, Star, And, Or))
    return node(random_store_prop(rng, depth - 1, variables, values),
                random_store_prop(rng, depth - 1, variables, values))


def _law(space: FinProbSpace, rv: dict):
    """The distribution of ``rv`` under ``space`` if every level set is measurable."""
    masses = {}
    for k in set(rv.values()):
        m = space.mass_of_set([w for w in space.omega if rv[w] == k])
        if m is None:
            return None
        masses[k] = m
    return PMF(masses)


def random_pmf(rng: Random, values: int = 2) -> PMF:
    ks = sorted(rng.sample(range(values + 1), rng.randint(1, values)))
    return PMF(dict(zip(ks, random_masses(rng, len(ks)))))


def random_prob_prop(rng: Random, depth: int, space: FinProbSpace | None = None,
                     G: dict | None = None, variables=PROB_VARS):
    """Random prop; leaves often state the true law of a variable so SAT is common."""
    if depth == 0 or rng.random() < 0.3:
        if rng.random() < 0.15:
            return Top()
        x = rng.choice(variables)
        pmf = None
        if space is not None and rng.random() < 0.6:
            pmf = _law(space, G[x])
        if pmf is None and rng.random() < 0.5:
            pmf = PMF.bernoulli(Fraction(1, 2))
        return Dist(x, pmf if pmf is not None else random_pmf(rng))
    node = rng.choice((Star, Star, And, Or))
    return node(random_prob_prop(rng, depth - 1, space, G, variables),
                random_prob_prop(rng, depth - 1, space, G, variables))


# -- instances --------------------------------------------------------------------

def random_store_m1(rng: Random, max_locs: int = 6, variables=STORE_VARS):
    n = rng.randint(1, max_locs)
    names = rng.sample(["a", "b", "c", "d", "e", "f", "0x0", "0x1", "0x2", "q7"], n)
    store = {loc: rng.randrange(3) for loc in names if rng.random() < 0.7}
    gamma = {x: rng.choice(names) for x in variables}
    return frozenset(names), store, gamma


def random_store_m2(rng: Random, locs: int = 8, variables=STORE_VARS):
    store = {n: rng.randrange(3) for n in range(locs) if rng.random() < 0.5}
    gamma = {x: rng.randrange(locs) for x in variables}
    return store, gamma


def random_prob_m1(rng: Random, max_points: int = 4, max_atoms: int = 4, allow_zero: bool = True,
                   variables=PROB_VARS, values: int = 2):
    n = rng.randint(1, max_points)
    omega = [f"w{i}" for i in range(n)]
    k = rng.randint(1, min(n, max_atoms))
    labels = random_labels(rng, n, k)
    atoms = [[w for w, lab in zip(omega, labels) if lab == j] for j in range(k)]
    space = FinProbSpace(omega, atoms, random_masses(rng, k, allow_zero and rng.random() < 0.2))
    G = {}
    for x in variables:
        if rng.random() < 0.6:
            # measurable by construction: constant on atoms
            per_atom = [rng.randrange(values) for _ in range(k)]
            G[x] = {w: per_atom[lab] for w, lab in zip(omega, labels)}
        else:
            G[x] = {w: rng.randrange(values) for w in omega}
    return space, G


def random_step_fn(rng: Random, values: int = 2) -> StepFn:
    k = rng.randint(1, values)
    return StepFn(dict(zip(rng.sample(range(values + 1), k), random_cells(rng, k))))


# -- oracles ----------------------------------------------------------------------

def dicom_oracle(p: MeasuredPartition, q: MeasuredPartition):
    """Brute-force independent combination, found by search instead of construction.

    Candidates are all coarsenings of the nonempty pairwise intersections, each
    cell weighted by the sum of its intersections' mass products. Survivors must
    extend both ``p`` and ``q``, make every intersection measurable with its
    product mass, and carry total mass 1. Returns the list of survivors.
    """
    pieces, products, empty_ok = [], [], True
    for a, ma in p.items():
        for b, mb in q.items():
            inter = a & b
            if inter.is_empty():
                empty_ok = empty_ok and ma * mb == 0
            else:
                pieces.append(inter)
                products.append(ma * mb)
    if sum(products) != 1 or not empty_ok:
        return []
    base = MeasuredPartition(pieces, products)
    survivors = []
    for r in coarsenings(base):
        if not (dorder(p, r) and dorder(q, r)):
            continue
        if all(r.measurable_mass(s) == m for s, m in zip(pieces, products)):
            survivors.append(r)
    return survivors


def square_grid(pi: PwAffine, dec_prime: Decoder, dec: Decoder) -> list[Fraction]:
    """Midpoints of the common refinement of every breakpoint the square depends on."""
    pts = {Fraction(0), Fraction(1)}
    for (a, b), _ in pi.pieces:
        pts |= {a, b}
    for s in dec_prime.fibers.values():
        pts |= s.breakpoints()
    for s in dec.fibers.values():
        pts |= pi.preimage(s).breakpoints()
    pts = sorted(pts)
    return [(a + b) / 2 for a, b in zip(pts, pts[1:])]


def square_commutes(pi: PwAffine, p, dec_prime: Decoder, dec: Decoder) -> bool:
    """Exact check of ``dec o pi == p o dec_prime`` on the midpoint grid."""
    return all(dec(pi(x)) == p[dec_prime(x)] for x in square_grid(pi, dec_prime, dec))


def random_surjection(rng: Random, n_src: int, n_dst: int) -> dict:
    labels = random_labels(rng, n_src, n_dst)
    return {f"s{i}": f"t{labels[i]}" for i in range(n_src)}
