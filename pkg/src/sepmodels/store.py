"""The store logic: shape-indexed (Model 1) and nominal (Model 2) satisfaction.

Model 1 stores are partial valuations on a finite shape of named locations.
Model 2 stores are finite partial maps on the naturals. Substitutions send
logical variables to locations resp. naturals.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Mapping

from .errors import InputError
from .props import And, Or, PointsTo, Prop, Star, Top, free_vars

LEFT, RIGHT, NEITHER = 0, 1, 2


def _splits(domain: tuple):
    """Every way to send each location left, right or nowhere."""
    for choice in product((LEFT, RIGHT, NEITHER), repeat=len(domain)):
        yield ([d for d, c in zip(domain, choice) if c == LEFT],
               [d for d, c in zip(domain, choice) if c == RIGHT])


def _check_valuation(shape: frozenset, s: Mapping) -> None:
    for loc, v in s.items():
        if loc not in shape:
            raise InputError(f"valuation assigns {loc!r}, which is outside the shape")
        if isinstance(v, bool) or not isinstance(v, int):
            raise InputError(f"value at {loc!r} is not an integer: {v!r}")


def _check_subst(gamma: Mapping, prop: Prop, allowed=None) -> None:
    for x in free_vars(prop):
        if x not in gamma:
            raise InputError(f"substitution has no variable {x!r}")
        if allowed is not None and gamma[x] not in allowed:
            raise InputError(f"variable {x!r} maps to {gamma[x]!r}, outside the shape")


def _sat_m1(shape: frozenset, s: frozenset, gamma: Mapping, prop: Prop, memo: dict) -> bool:
    key = (shape, s, prop)
    if key in memo:
        return memo[key]
    if isinstance(prop, Top):
        out = True
    elif isinstance(prop, PointsTo):
        loc = gamma[prop.var]
        store = dict(s)
        out = loc in shape and loc in store and store[loc] == prop.value
    elif isinstance(prop, And):
        out = _sat_m1(shape, s, gamma, prop.left, memo) and _sat_m1(shape, s, gamma, prop.right, memo)
    elif isinstance(prop, Or):
        out = _sat_m1(shape, s, gamma, prop.left, memo) or _sat_m1(shape, s, gamma, prop.right, memo)
    elif isinstance(prop, Star):
        store = dict(s)
        out = False
        # each side lives on its own sub-shape, embedded into ``shape``
        for d1, d2 in _splits(tuple(sorted(store, key=repr))):
            s1 = frozenset((loc, store[loc]) for loc in d1)
            s2 = frozenset((loc, store[loc]) for loc in d2)
            if (_sat_m1(frozenset(d1), s1, gamma, prop.left, memo)
                    and _sat_m1(frozenset(d2), s2, gamma, prop.right, memo)):
                out = True
                break
    else:
        raise InputError(f"not a store proposition: {prop!r}")
    memo[key] = out
    return out


def sat_store_m1(shape: Iterable, s: Mapping, gamma: Mapping, prop: Prop) -> bool:
    """Does the ``shape``-shaped valuation ``s`` satisfy ``prop`` under ``gamma``?"""
    shape = frozenset(shape)
    _check_valuation(shape, s)
    _check_subst(gamma, prop, shape)
    return _sat_m1(shape, frozenset(s.items()), gamma, prop, {})


def _sat_m2(s: frozenset, gamma: Mapping, prop: Prop, memo: dict) -> bool:
    key = (s, prop)
    if key in memo:
        return memo[key]
    if isinstance(prop, Top):
        out = True
    elif isinstance(prop, PointsTo):
        out = (gamma[prop.var], prop.value) in s
    elif isinstance(prop, And):
        out = _sat_m2(s, gamma, prop.left, memo) and _sat_m2(s, gamma, prop.right, memo)
    elif isinstance(prop, Or):
        out = _sat_m2(s, gamma, prop.left, memo) or _sat_m2(s, gamma, prop.right, memo)
    elif isinstance(prop, Star):
        cells = tuple(sorted(s))
        out = False
        for left, right in _splits(cells):
            if (_sat_m2(frozenset(left), gamma, prop.left, memo)
                    and _sat_m2(frozenset(right), gamma, prop.right, memo)):
                out = True
                break
    else:
        raise InputError(f"not a store proposition: {prop!r}")
    memo[key] = out
    return out


def _check_nom_store(s: Mapping) -> None:
    for n, v in s.items():
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise InputError(f"nominal store location must be a natural, got {n!r}")
        if isinstance(v, bool) or not isinstance(v, int):
            raise InputError(f"value at {n} is not an integer: {v!r}")


def sat_store_m2(s: Mapping[int, int], gamma: Mapping[str, int], prop: Prop) -> bool:
    """Does the finite partial store ``s : N -> Z`` satisfy ``prop`` under ``gamma``?"""
    _check_nom_store(s)
    _check_subst(gamma, prop)
    for x in free_vars(prop):
        n = gamma[x]
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise InputError(f"variable {x!r} must map to a natural, got {n!r}")
    return _sat_m2(frozenset(s.items()), gamma, prop, {})


def enc_shape(shape: Iterable) -> dict:
    """Encode a shape into the naturals: locations in sorted order go to 0, 1, 2, ..."""
    return {loc: i for i, loc in enumerate(sorted(set(shape)))}


def translate_store_m1_to_m2(shape: Iterable, s: Mapping, gamma: Mapping):
    """Carry a Model-1 instance to Model 2 along the canonical encoding."""
    shape = frozenset(shape)
    _check_valuation(shape, s)
    for x, loc in gamma.items():
        if loc not in shape:
            raise InputError(f"variable {x!r} maps to {loc!r}, outside the shape")
    enc = enc_shape(shape)
    return {enc[loc]: v for loc, v in s.items()}, {x: enc[loc] for x, loc in gamma.items()}
