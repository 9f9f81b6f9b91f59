"""Hot loops of the separating-conjunction search on finite probability spaces.

Masses are exact rationals; the kernels work on integer numerators over a
common denominator, which is exact as long as products fit in int64. Larger
denominators fall back to a pure :class:`~fractions.Fraction` path.

Set ``SEPMODELS_NO_NUMBA=1`` to force the pure-numpy backend.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

_DISABLED = os.environ.get("SEPMODELS_NO_NUMBA", "").strip() not in ("", "0")

try:
    if _DISABLED:
        raise ImportError("numba disabled by SEPMODELS_NO_NUMBA")
    from numba import njit
except ImportError:
    njit = None

HAVE_NUMBA = njit is not None
BACKEND = "numba" if HAVE_NUMBA else "numpy"

# products of two numerators must stay below 2**63
MAX_DENOMINATOR = 2**31 - 1


@lru_cache(maxsize=None)
def set_partition_labels(n: int) -> np.ndarray:
    """All set partitions of ``range(n)`` as restricted growth strings.

    Row ``r`` assigns block label ``labels[r, k]`` to item ``k``; labels are
    ``0..blocks-1`` in order of first appearance. Shape is ``(Bell(n), n)``.
    """
    rows = [[]]
    for k in range(n):
        grown = []
        for row in rows:
            top = max(row, default=-1)
            for label in range(top + 2):
                grown.append(row + [label])
        rows = grown
    out = np.array(rows, dtype=np.int64).reshape(len(rows), n)
    out.setflags(write=False)
    return out


def _cell_masses(labels: np.ndarray, weights: np.ndarray) -> np.ndarray:
    b, n = labels.shape
    out = np.zeros((b, n), dtype=np.int64)
    np.add.at(out, (np.repeat(np.arange(b), n), labels.ravel()), np.tile(weights, b))
    return out


def _independence_numpy(la, lb, weights, denom):
    ba, n = la.shape
    bb = lb.shape[0]
    ma = _cell_masses(la, weights)
    mb = _cell_masses(lb, weights)
    rows = np.repeat(np.arange(bb), n)
    tiled = np.tile(weights, bb)
    out = np.zeros((ba, bb), dtype=bool)
    for i in range(ba):
        joint = np.zeros((bb, n * n), dtype=np.int64)
        np.add.at(joint, (rows, (la[i][None, :] * n + lb).ravel()), tiled)
        prod = (ma[i][:, None] * mb[:, None, :]).reshape(bb, n * n)
        out[i] = (joint * denom == prod).all(axis=1)
    return out


def _independence_loops(la, lb, weights, denom):
    ba, n = la.shape
    bb = lb.shape[0]
    ma = np.zeros((ba, n), dtype=np.int64)
    mb = np.zeros((bb, n), dtype=np.int64)
    for i in range(ba):
        for k in range(n):
            ma[i, la[i, k]] += weights[k]
    for j in range(bb):
        for k in range(n):
            mb[j, lb[j, k]] += weights[k]
    out = np.zeros((ba, bb), dtype=np.bool_)
    joint = np.zeros((n, n), dtype=np.int64)
    for i in range(ba):
        for j in range(bb):
            joint[:, :] = 0
            for k in range(n):
                joint[la[i, k], lb[j, k]] += weights[k]
            ok = True
            for c1 in range(n):
                if not ok:
                    break
                for c2 in range(n):
                    if joint[c1, c2] * denom != ma[i, c1] * mb[j, c2]:
                        ok = False
                        break
            out[i, j] = ok
    return out


_independence_numba = njit(cache=True)(_independence_loops) if HAVE_NUMBA else None


def _independence_exact(la, lb, masses: Sequence[Fraction]):
    ba, n = la.shape
    bb = lb.shape[0]
    out = np.zeros((ba, bb), dtype=bool)
    for i in range(ba):
        ma = [Fraction(0)] * n
        for k in range(n):
            ma[la[i, k]] += masses[k]
        for j in range(bb):
            mb = [Fraction(0)] * n
            joint: dict[tuple[int, int], Fraction] = {}
            for k in range(n):
                mb[lb[j, k]] += masses[k]
                key = (la[i, k], lb[j, k])
                joint[key] = joint.get(key, Fraction(0)) + masses[k]
            out[i, j] = all(joint.get((c1, c2), 0) == ma[c1] * mb[c2]
                            for c1 in range(n) for c2 in range(n))
    return out


def independence_matrix(la: np.ndarray, lb: np.ndarray, masses: Sequence[Fraction],
                        backend: str | None = None) -> np.ndarray:
    """Boolean matrix ``out[i, j]``: are partitions ``la[i]`` and ``lb[j]`` independent?

    Both inputs label the same ``n`` atoms, whose masses are ``masses``. A pair is
    independent when every joint cell (possibly empty) has mass equal to the
    product of its marginal cell masses.
    """
    la = np.ascontiguousarray(la, dtype=np.int64)
    lb = np.ascontiguousarray(lb, dtype=np.int64)
    if la.shape[0] == 0 or lb.shape[0] == 0:
        return np.zeros((la.shape[0], lb.shape[0]), dtype=bool)
    masses = [Fraction(m) for m in masses]
    denom = math.lcm(*(m.denominator for m in masses))
    backend = backend or BACKEND
    if backend == "exact" or denom > MAX_DENOMINATOR:
        return _independence_exact(la, lb, masses)
    weights = np.array([int(m * denom) for m in masses], dtype=np.int64)
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but numba is unavailable")
        return _independence_numba(la, lb, weights, np.int64(denom))
    if backend == "numpy":
        return _independence_numpy(la, lb, weights, denom)
    if backend == "python":
        return _independence_loops(la, lb, weights, denom)
    raise ValueError(f"unknown backend {backend!r}")
