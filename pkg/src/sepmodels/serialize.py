"""JSON encodings of instances, partitions and group elements.

Rationals are strings ``"p/q"`` (or ``"n"``) so exactness survives the round
trip; an IntervalSet is a list of ``[a, b)`` endpoint string pairs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Mapping

from .errors import InputError
from .exact import IntervalSet, format_rat, to_rat
from .groups import FinPerm, PwAffine
from .partitions import MeasuredPartition, MPartition
from .prob import Decoder, FinProbSpace, StepFn


def _require(data: Mapping, *keys: str) -> None:
    if not isinstance(data, Mapping):
        raise InputError(f"expected a JSON object, got {type(data).__name__}")
    for key in keys:
        if key not in data:
            raise InputError(f"missing field {key!r}")


def _int(value, what: str) -> int:
    if isinstance(value, bool):
        raise InputError(f"{what} must be an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value)
        except ValueError:
            pass
    raise InputError(f"{what} must be an integer, got {value!r}")


def _nat(value, what: str) -> int:
    n = _int(value, what)
    if n < 0:
        raise InputError(f"{what} must be a natural number, got {n}")
    return n


def rat_to_json(q: Fraction) -> str:
    return format_rat(q)


def rat_from_json(value) -> Fraction:
    if isinstance(value, float):
        raise InputError(f"rationals must be strings like \"1/3\", got the float {value!r}")
    return to_rat(value)


def interval_set_to_json(s: IntervalSet) -> list:
    return [[rat_to_json(a), rat_to_json(b)] for a, b in s.pieces]


def interval_set_from_json(data) -> IntervalSet:
    if not isinstance(data, list):
        raise InputError("an IntervalSet must be a list of [a, b) pairs")
    return IntervalSet([(rat_from_json(a), rat_from_json(b)) for a, b in data])


def partition_to_json(a: MPartition) -> dict:
    return {"cells": [interval_set_to_json(c) for c in a.cells]}


def partition_from_json(data) -> MPartition:
    _require(data, "cells")
    return MPartition([interval_set_from_json(c) for c in data["cells"]])


def measured_partition_to_json(p: MeasuredPartition) -> dict:
    return {"cells": [interval_set_to_json(c) for c in p.cells],
            "masses": [rat_to_json(m) for m in p.masses]}


def measured_partition_from_json(data) -> MeasuredPartition:
    _require(data, "cells", "masses")
    return MeasuredPartition([interval_set_from_json(c) for c in data["cells"]],
                             [rat_from_json(m) for m in data["masses"]])


def pwaffine_to_json(pi: PwAffine) -> list:
    return [{"src": [rat_to_json(a), rat_to_json(b)], "dst": [rat_to_json(c), rat_to_json(d)]}
            for (a, b), (c, d) in pi.pieces]


def pwaffine_from_json(data) -> PwAffine:
    if not isinstance(data, list):
        raise InputError("a piecewise-affine map must be a list of {src, dst} records")
    pieces = []
    for rec in data:
        _require(rec, "src", "dst")
        pieces.append((tuple(rat_from_json(v) for v in rec["src"]),
                       tuple(rat_from_json(v) for v in rec["dst"])))
    return PwAffine(pieces)


def finperm_to_json(pi: FinPerm) -> list:
    return [[n, m] for n, m in pi.mapping.items()]


def finperm_from_json(data) -> FinPerm:
    if not isinstance(data, list):
        raise InputError("a permutation must be a list of [n, pi(n)] pairs")
    return FinPerm([(_nat(n, "permutation entry"), _nat(m, "permutation entry")) for n, m in data])


# -- store instances ------------------------------------------------------------

def store_m1_from_json(data) -> tuple[frozenset, dict, dict]:
    _require(data, "shape", "store", "subst")
    shape = frozenset(str(loc) for loc in data["shape"])
    store = {str(loc): _int(v, f"value at {loc!r}") for loc, v in data["store"].items()}
    subst = {str(x): str(loc) for x, loc in data["subst"].items()}
    return shape, store, subst


def store_m1_to_json(shape, store: Mapping, subst: Mapping) -> dict:
    return {"shape": sorted(shape), "store": dict(sorted(store.items())),
            "subst": dict(sorted(subst.items()))}


def store_m2_from_json(data) -> tuple[dict, dict]:
    _require(data, "store", "subst")
    store = {_nat(n, "store location"): _int(v, f"value at {n!r}") for n, v in data["store"].items()}
    subst = {str(x): _nat(n, f"location of {x!r}") for x, n in data["subst"].items()}
    return store, subst


def store_m2_to_json(store: Mapping[int, int], subst: Mapping[str, int]) -> dict:
    return {"store": {str(n): v for n, v in sorted(store.items())},
            "subst": dict(sorted(subst.items()))}


# -- probability instances --------------------------------------------------------

def prob_m1_from_json(data) -> tuple[FinProbSpace, dict]:
    _require(data, "omega", "atoms", "masses")
    omega = [str(w) for w in data["omega"]]
    atoms = [[str(w) for w in atom] for atom in data["atoms"]]
    masses = [rat_from_json(m) for m in data["masses"]]
    space = FinProbSpace(omega, atoms, masses)
    rvs = {}
    for x, table in data.get("rvs", {}).items():
        rvs[str(x)] = {str(w): _int(v, f"{x}({w})") for w, v in table.items()}
    return space, rvs


def prob_m1_to_json(space: FinProbSpace, rvs: Mapping) -> dict:
    return {"omega": [str(w) for w in space.omega],
            "atoms": [[str(w) for w in space.omega if w in atom] for atom in space.atoms],
            "masses": [rat_to_json(m) for m in space.masses],
            "rvs": {x: {str(w): int(rv[w]) for w in space.omega if w in rv}
                    for x, rv in sorted(rvs.items())}}


def step_fn_to_json(x: StepFn) -> dict:
    return {str(k): interval_set_to_json(s) for k, s in x.levels}


def step_fn_from_json(data) -> StepFn:
    if not isinstance(data, Mapping):
        raise InputError("a step function must map values to IntervalSets")
    return StepFn({_int(k, "step function value"): interval_set_from_json(s) for k, s in data.items()})


def prob_m2_from_json(data) -> tuple[MeasuredPartition, dict]:
    _require(data, "partition")
    part = measured_partition_from_json(data["partition"])
    rvs = {str(x): step_fn_from_json(t) for x, t in data.get("rvs", {}).items()}
    return part, rvs


def prob_m2_to_json(part: MeasuredPartition, rvs: Mapping[str, StepFn]) -> dict:
    return {"partition": measured_partition_to_json(part),
            "rvs": {x: step_fn_to_json(rv) for x, rv in sorted(rvs.items())}}


def decoder_to_json(dec: Decoder) -> dict:
    return {"fibers": {str(w): interval_set_to_json(s) for w, s in dec.fibers.items()}}


def decoder_from_json(data) -> Decoder:
    _require(data, "fibers")
    return Decoder({str(w): interval_set_from_json(s) for w, s in data["fibers"].items()})


def surjection_from_json(data) -> dict:
    """A map between sample spaces: ``{"map": {w: v}}`` or a bare object."""
    if isinstance(data, Mapping) and "map" in data:
        data = data["map"]
    if not isinstance(data, Mapping):
        raise InputError("a surjection must be a JSON object mapping points to points")
    return {str(w): str(v) for w, v in data.items()}


def dumps_default(obj: Any):
    if isinstance(obj, Fraction):
        return rat_to_json(obj)
    if isinstance(obj, IntervalSet):
        return interval_set_to_json(obj)
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")
