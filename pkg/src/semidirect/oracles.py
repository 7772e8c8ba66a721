"""Slow, independent reference computations used to cross-check the fast paths."""

from __future__ import annotations

import itertools
from typing import Iterable

import numpy as np

from .congruence import EqRelation, Kind, side_kind
from .monoid import FiniteMonoid, MonoidView, canonical_form


def naive_closure(v: MonoidView, W: Iterable[tuple[int, int]], side: str | Kind) -> EqRelation:
    """Least one- or two-sided congruence containing W, by plain fixpoint iteration.

    The relation is a boolean matrix; each round symmetrizes, adds the
    diagonal, multiplies every related pair by every element on the allowed
    side(s) and composes the relation with itself, until nothing changes.
    """
    side = side_kind(side)
    n = v.order
    t = np.asarray(v.table)
    R = np.eye(n, dtype=bool)
    for x, y in W:
        R[x, y] = True
    while True:
        old = R.copy()
        R |= R.T
        xs, ys = np.nonzero(R)
        if side & Kind.RIGHT:
            R[t[xs, :], t[ys, :]] = True
        if side & Kind.LEFT:
            R[t[:, xs], t[:, ys]] = True
        Ri = R.astype(np.int32)
        R |= (Ri @ Ri) > 0
        if np.array_equal(R, old):
            break
    labels = [int(np.flatnonzero(R[x])[0]) for x in range(n)]
    return EqRelation(labels, side)


def brute_force_monoids(n: int) -> list[tuple[int, ...]]:
    """Canonical forms of all monoids of order n with identity 0, by trying every table."""
    free = [(x, y) for x in range(1, n) for y in range(1, n)]
    seen = set()
    base = [[0] * n for _ in range(n)]
    for i in range(n):
        base[0][i] = i
        base[i][0] = i
    for vals in itertools.product(range(n), repeat=len(free)):
        for (x, y), val in zip(free, vals):
            base[x][y] = val
        if _assoc(np.array(base)):
            seen.add(canonical_form(FiniteMonoid(base, check=False)))
    return sorted(seen)


def _assoc(t: np.ndarray) -> bool:
    n = len(t)
    for x in range(n):
        for y in range(n):
            xy = t[x, y]
            for z in range(n):
                if t[xy, z] != t[x, t[y, z]]:
                    return False
    return True
