"""Finite discrete probability, and both semantics of the probabilistic logic.

Model 1 evaluates a proposition against a probability space on a finite sample
space ``omega`` (an atom partition plus masses) and random variables
``omega -> int``. Model 2 evaluates against a measured partition of [0, 1) and
step functions ``[0, 1) -> int``. A decoder turns the former into the latter.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Optional

import numpy as np

from . import _kernels
from .errors import BudgetExceeded, InputError
from .exact import UNIT, IntervalSet, equal_cells, to_rat
from .partitions import MeasuredPartition, coarsenings, dicom, dorder
from .props import And, Dist, Or, Prop, Star, Top, free_vars

DEFAULT_BUDGET = 6

RandVar = Mapping[Hashable, int]
RandomSubst = Mapping[str, RandVar]


def sort_points(points: Iterable) -> list:
    points = list(points)
    try:
        return sorted(points)
    except TypeError:
        return sorted(points, key=repr)


class FinProbSpace:
    """A probability space on a finite sample space.

    The sigma-algebra is represented by its atoms (a set partition of ``omega``).
    Points are sorted, and atoms are ordered by their first point.
    """

    __slots__ = ("omega", "atoms", "masses", "_atom_of", "_hash")

    def __init__(self, omega: Iterable, atoms: Iterable[Iterable], masses: Iterable):
        omega = tuple(sort_points(omega))
        if not omega:
            raise InputError("sample space must be nonempty")
        if len(set(omega)) != len(omega):
            raise InputError("sample points must be unique")
        atoms = [frozenset(a) for a in atoms]
        masses = [to_rat(m) for m in masses]
        if len(atoms) != len(masses):
            raise InputError("one mass per atom is required")
        atom_of = {}
        for idx, atom in enumerate(atoms):
            if not atom:
                raise InputError("atoms must be nonempty")
            for w in atom:
                if w in atom_of:
                    raise InputError(f"point {w!r} lies in two atoms")
                atom_of[w] = idx
        if set(atom_of) != set(omega):
            raise InputError("atoms must partition the sample space exactly")
        if any(m < 0 for m in masses) or sum(masses) != 1:
            raise InputError("atom masses must be nonnegative and sum to 1")
        position = {w: i for i, w in enumerate(omega)}
        order = sorted(range(len(atoms)), key=lambda i: min(position[w] for w in atoms[i]))
        self.omega = omega
        self.atoms: tuple[frozenset, ...] = tuple(atoms[i] for i in order)
        self.masses: tuple[Fraction, ...] = tuple(masses[i] for i in order)
        self._atom_of = {w: k for k, a in enumerate(self.atoms) for w in a}
        self._hash = None

    @classmethod
    def uniform(cls, omega: Iterable) -> FinProbSpace:
        omega = list(omega)
        return cls(omega, [[w] for w in omega], [Fraction(1, len(omega))] * len(omega))

    @classmethod
    def trivial(cls, omega: Iterable) -> FinProbSpace:
        omega = list(omega)
        return cls(omega, [omega], [1])

    @classmethod
    def discrete(cls, masses: Mapping) -> FinProbSpace:
        """Singleton atoms with the given point masses."""
        return cls(list(masses), [[w] for w in masses], list(masses.values()))

    def atom_of(self, point) -> int:
        return self._atom_of[point]

    def mass_of_set(self, points: Iterable) -> Optional[Fraction]:
        """Mass of a set of points, or ``None`` if it is not a union of atoms."""
        points = set(points)
        total = Fraction(0)
        for atom, m in zip(self.atoms, self.masses):
            hit = len(atom & points)
            if hit == 0:
                continue
            if hit != len(atom):
                return None
            total += m
        return total

    def coarsen(self, labels) -> FinProbSpace:
        """Merge atoms: atom ``k`` goes to block ``labels[k]``."""
        blocks: dict[int, set] = {}
        mass: dict[int, Fraction] = {}
        for k, label in enumerate(labels):
            label = int(label)
            blocks.setdefault(label, set()).update(self.atoms[k])
            mass[label] = mass.get(label, Fraction(0)) + self.masses[k]
        keys = list(blocks)
        return FinProbSpace(self.omega, [blocks[k] for k in keys], [mass[k] for k in keys])

    def __eq__(self, other) -> bool:
        return (isinstance(other, FinProbSpace) and self.omega == other.omega
                and self.atoms == other.atoms and self.masses == other.masses)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.omega, self.atoms, self.masses))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{sort_points(a)}: {m}" for a, m in zip(self.atoms, self.masses))
        return f"FinProbSpace({{{body}}})"


class StepFn:
    """An integer-valued random variable on [0, 1), given by canonical level sets."""

    __slots__ = ("levels", "_hash")

    def __init__(self, levels: Mapping[int, IntervalSet]):
        seen = IntervalSet()
        kept = []
        for k, s in levels.items():
            if not isinstance(s, IntervalSet):
                s = IntervalSet(s)
            if s.is_empty():
                continue
            if not seen.isdisjoint(s):
                raise InputError("step function level sets overlap")
            seen = seen.union(s)
            kept.append((int(k), s))
        if seen != UNIT:
            raise InputError("step function level sets must cover [0, 1)")
        self.levels: tuple[tuple[int, IntervalSet], ...] = tuple(sorted(kept, key=lambda kv: kv[0]))
        self._hash = None

    @classmethod
    def constant(cls, value: int) -> StepFn:
        return cls({value: UNIT})

    def level(self, k: int) -> IntervalSet:
        for value, s in self.levels:
            if value == k:
                return s
        return IntervalSet()

    def values(self) -> list[int]:
        return [k for k, _ in self.levels]

    def __call__(self, x) -> int:
        for k, s in self.levels:
            if s.contains(x):
                return k
        raise InputError(f"{x} is outside [0, 1)")

    def __eq__(self, other) -> bool:
        return isinstance(other, StepFn) and self.levels == other.levels

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.levels)
        return self._hash

    def __repr__(self) -> str:
        return f"StepFn({dict(self.levels)!r})"


class Decoder:
    """A map [0, 1) -> omega with nonnegligible fibers, stored fiberwise."""

    __slots__ = ("omega", "fibers")

    def __init__(self, fibers: Mapping[Hashable, IntervalSet]):
        seen = IntervalSet()
        for w, s in fibers.items():
            if s.is_empty():
                raise InputError(f"fiber over {w!r} is negligible")
            if not seen.isdisjoint(s):
                raise InputError("decoder fibers overlap")
            seen = seen.union(s)
        if seen != UNIT:
            raise InputError("decoder fibers must cover [0, 1)")
        self.omega = tuple(sort_points(fibers))
        self.fibers: dict = {w: fibers[w] for w in self.omega}

    def preimage(self, points: Iterable) -> IntervalSet:
        out = IntervalSet()
        for w in points:
            out = out.union(self.fibers[w])
        return out

    def __call__(self, x):
        for w, s in self.fibers.items():
            if s.contains(x):
                return w
        raise InputError(f"{x} is outside [0, 1)")

    def __eq__(self, other) -> bool:
        return isinstance(other, Decoder) and self.fibers == other.fibers

    def __repr__(self) -> str:
        return f"Decoder({self.fibers!r})"


def make_decoder(omega: Iterable) -> Decoder:
    """Canonical decoder: sorted points get consecutive cells of length 1/|omega|."""
    points = sort_points(set(omega))
    if not points:
        raise InputError("sample space must be nonempty")
    return Decoder(dict(zip(points, equal_cells(len(points)))))


# -- constructions on finite spaces ------------------------------------------

def _check_surjection(p: Mapping, target: Iterable) -> None:
    target = set(target)
    image = set(p.values())
    if not image <= target:
        raise InputError(f"map leaves the target space: {sort_points(image - target)}")
    if image != target:
        raise InputError(f"map is not surjective; misses {sort_points(target - image)}")


def pullback(p: Mapping, space: FinProbSpace) -> FinProbSpace:
    """Pull ``space`` back along the surjection ``p`` (domain = keys of ``p``)."""
    _check_surjection(p, space.omega)
    atoms = [[w for w, v in p.items() if v in atom] for atom in space.atoms]
    return FinProbSpace(list(p), atoms, space.masses)


def pull_subst(G: RandomSubst, p: Mapping) -> dict:
    """The random substitution ``G . p``: each variable becomes ``G(X) o p``."""
    return {x: {w: rv[v] for w, v in p.items()} for x, rv in G.items()}


def subspace_leq(P: FinProbSpace, Q: FinProbSpace) -> bool:
    if P.omega != Q.omega:
        raise InputError("subspace comparison needs a common sample space")
    return all(Q.mass_of_set(atom) == m for atom, m in zip(P.atoms, P.masses))


def product_space(P1: FinProbSpace, P2: FinProbSpace) -> FinProbSpace:
    omega = [(a, b) for a in P1.omega for b in P2.omega]
    atoms, masses = [], []
    for A, ma in zip(P1.atoms, P1.masses):
        for B, mb in zip(P2.atoms, P2.masses):
            atoms.append([(a, b) for a in A for b in B])
            masses.append(ma * mb)
    return FinProbSpace(omega, atoms, masses)


def quotient_by_observables(space: FinProbSpace, G: RandomSubst):
    """Collapse points that no atom and no random variable in ``G`` can tell apart.

    Each class is represented by its first point. Returns ``(space', G')``.
    """
    signature = {w: (space.atom_of(w),) + tuple(G[x][w] for x in sorted(G)) for w in space.omega}
    reps: dict[tuple, Hashable] = {}
    for w in space.omega:
        reps.setdefault(signature[w], w)
    keep = list(reps.values())
    by_atom: dict[int, list] = {}
    for w in keep:
        by_atom.setdefault(space.atom_of(w), []).append(w)
    atoms = [by_atom[k] for k in range(len(space.atoms))]
    quotient = FinProbSpace(keep, atoms, space.masses)
    return quotient, {x: {w: rv[w] for w in keep} for x, rv in G.items()}


# -- Model 1 -----------------------------------------------------------------

def _check_subst_m1(space: FinProbSpace, G: RandomSubst, prop: Prop) -> None:
    for x in free_vars(prop):
        if x not in G:
            raise InputError(f"random substitution has no variable {x!r}")
        rv = G[x]
        missing = [w for w in space.omega if w not in rv]
        if missing:
            raise InputError(f"random variable {x!r} undefined at {missing[0]!r}")


def _dist_m1(space: FinProbSpace, rv: RandVar, pmf) -> bool:
    levels: dict[int, list] = {}
    for w in space.omega:
        levels.setdefault(int(rv[w]), []).append(w)
    for k, pts in levels.items():
        mass = space.mass_of_set(pts)
        if mass is None or mass != pmf(k):
            return False
    return all(k in levels for k, _ in pmf.support)


def _star_candidates_m1(space, G, prop, budget, backend, memo):
    n = len(space.atoms)
    if n > budget:
        raise BudgetExceeded(n, budget)
    labels = _kernels.set_partition_labels(n)
    coarse = [space.coarsen(row) for row in labels]
    left = [r for r in range(len(coarse)) if _sat1(coarse[r], G, prop.left, budget, backend, memo)]
    right = [r for r in range(len(coarse)) if _sat1(coarse[r], G, prop.right, budget, backend, memo)]
    return labels, coarse, left, right


def _sat1(space, G, prop, budget, backend, memo) -> bool:
    key = (space, prop)
    if key in memo:
        return memo[key]
    if isinstance(prop, Top):
        out = True
    elif isinstance(prop, Dist):
        out = _dist_m1(space, G[prop.var], prop.pmf)
    elif isinstance(prop, And):
        out = (_sat1(space, G, prop.left, budget, backend, memo)
               and _sat1(space, G, prop.right, budget, backend, memo))
    elif isinstance(prop, Or):
        out = (_sat1(space, G, prop.left, budget, backend, memo)
               or _sat1(space, G, prop.right, budget, backend, memo))
    elif isinstance(prop, Star):
        labels, _, left, right = _star_candidates_m1(space, G, prop, budget, backend, memo)
        if not left or not right:
            out = False
        else:
            indep = _kernels.independence_matrix(labels[left], labels[right], space.masses, backend)
            out = bool(indep.any())
    else:
        raise InputError(f"not a probability proposition: {prop!r}")
    memo[key] = out
    return out


def sat_prob_m1(space: FinProbSpace, G: RandomSubst, prop: Prop,
                budget: int = DEFAULT_BUDGET, backend: str | None = None) -> bool:
    """Decide ``space |= prop`` under the random substitution ``G`` (Model 1).

    A separating conjunction holds when two coarsenings of the atom partition are
    independent under ``space``'s masses and satisfy the two conjuncts. The search
    ranges over pairs of set partitions of the atoms, so spaces with more than
    ``budget`` atoms raise :class:`BudgetExceeded` when a ``Star`` is reached.
    """
    _check_subst_m1(space, G, prop)
    return _sat1(space, G, prop, budget, backend, {})


def star_witnesses_m1(space: FinProbSpace, G: RandomSubst, star: Star,
                      budget: int = DEFAULT_BUDGET, backend: str | None = None):
    """All accepted ``(left, right)`` coarsened-space witnesses for ``star``."""
    _check_subst_m1(space, G, star)
    labels, coarse, left, right = _star_candidates_m1(space, G, star, budget, backend, {})
    if not left or not right:
        return []
    indep = _kernels.independence_matrix(labels[left], labels[right], space.masses, backend)
    return [(coarse[left[i]], coarse[right[j]]) for i, j in zip(*np.nonzero(indep))]


# -- Model 2 -----------------------------------------------------------------

def _check_subst_m2(G: Mapping[str, StepFn], prop: Prop) -> None:
    for x in free_vars(prop):
        if x not in G:
            raise InputError(f"random substitution has no variable {x!r}")
        if not isinstance(G[x], StepFn):
            raise InputError(f"variable {x!r} is not bound to a step function")


def _dist_m2(part: MeasuredPartition, rv: StepFn, pmf, literal: bool) -> bool:
    for k, s in rv.levels:
        if literal:
            if s not in part.cells:
                return False
            mass = part.mass_of(s)
        else:
            mass = part.measurable_mass(s)
            if mass is None:
                return False
        if mass != pmf(k):
            return False
    values = set(rv.values())
    return all(k in values for k, _ in pmf.support)


def _sat2(part, G, prop, budget, literal, memo) -> bool:
    key = (part, prop)
    if key in memo:
        return memo[key]
    if isinstance(prop, Top):
        out = True
    elif isinstance(prop, Dist):
        out = _dist_m2(part, G[prop.var], prop.pmf, literal)
    elif isinstance(prop, And):
        out = (_sat2(part, G, prop.left, budget, literal, memo)
               and _sat2(part, G, prop.right, budget, literal, memo))
    elif isinstance(prop, Or):
        out = (_sat2(part, G, prop.left, budget, literal, memo)
               or _sat2(part, G, prop.right, budget, literal, memo))
    elif isinstance(prop, Star):
        if len(part) > budget:
            raise BudgetExceeded(len(part), budget)
        coarse = list(coarsenings(part))
        left = [p for p in coarse if _sat2(p, G, prop.left, budget, literal, memo)]
        right = [q for q in coarse if _sat2(q, G, prop.right, budget, literal, memo)]
        out = False
        for p in left:
            for q in right:
                joined = dicom(p, q)
                if joined is not None and dorder(joined, part):
                    out = True
                    break
            if out:
                break
    else:
        raise InputError(f"not a probability proposition: {prop!r}")
    memo[key] = out
    return out


def sat_prob_m2(part: MeasuredPartition, G: Mapping[str, StepFn], prop: Prop,
                budget: int = DEFAULT_BUDGET, literal_dist: bool = False) -> bool:
    """Decide ``part |= prop`` under step-function substitution ``G`` (Model 2).

    With ``literal_dist`` each nonempty level set must be a single cell rather
    than a union of cells.
    """
    _check_subst_m2(G, prop)
    return _sat2(part, G, prop, budget, literal_dist, {})


def translate_prob_m1_to_m2(space: FinProbSpace, G: RandomSubst, dec: Decoder):
    """Encode a Model-1 instance on [0, 1) through the decoder ``dec``."""
    if set(dec.omega) != set(space.omega):
        raise InputError("decoder and probability space disagree on the sample space")
    part = MeasuredPartition._trusted([dec.preimage(a) for a in space.atoms], space.masses)
    rvs = {}
    for x, rv in G.items():
        missing = [w for w in space.omega if w not in rv]
        if missing:
            raise InputError(f"random variable {x!r} undefined at {missing[0]!r}")
        levels: dict[int, list] = {}
        for w in space.omega:
            levels.setdefault(int(rv[w]), []).append(w)
        rvs[x] = StepFn({k: dec.preimage(pts) for k, pts in levels.items()})
    return part, rvs
