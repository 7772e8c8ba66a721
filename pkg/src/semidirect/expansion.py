"""The power-set semidirect product S(M) and the Szendrei expansion Sz(M).

An element ``(A, a)`` of S(M) is stored as the integer ``A * n + a`` where
``A`` is the bitmask of a subset of M and ``n = |M|``.  The identity
``(∅, 1)`` therefore has index 0.  Products are computed on demand::

    (A, a)(B, b) = (A ∪ aB, ab)

For finite M the finite-subset variant S^f(M) is the same monoid as S(M), so
there is no separate constructor for it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np

from . import bits
from .monoid import CapacityError, FiniteMonoid, MonoidError, MonoidView, validate

LAZY_BASE_CAP = 20
# Translation tables img[a][B] are precomputed up to this base order.
IMAGE_TABLE_CAP = 14


class SView(MonoidView):
    """S(M) = P(M) ⋊ M over a finite base monoid, evaluated lazily."""

    kind = "S"

    def __init__(self, base: FiniteMonoid, base_cap: int = LAZY_BASE_CAP,
                 materialize_cap: int | None = None):
        n = base.order
        if n > base_cap:
            raise CapacityError(f"base order {n} exceeds bitset cap {base_cap}")
        self.base = base
        self.n = n
        self.order = (1 << n) * n
        self.identity = 0
        if materialize_cap is not None:
            self.materialize_cap = materialize_cap
        self._brows = base.rows

    # -- encoding --------------------------------------------------------
    def encode(self, A: int, a: int) -> int:
        return A * self.n + a

    def decode(self, x: int) -> tuple[int, int]:
        return divmod(x, self.n)

    def label(self, x: int) -> str:
        A, a = divmod(x, self.n)
        return f"({bits.fmt(A, self.base.labels())},{self.base.label(a)})"

    # -- base-monoid helpers ----------------------------------------------
    @cached_property
    def _image_table(self) -> list[list[int]] | None:
        n = self.n
        if n > IMAGE_TABLE_CAP:
            return None
        out = []
        for a in range(n):
            row = self._brows[a]
            img = [0] * (1 << n)
            for B in range(1, 1 << n):
                low = B & -B
                img[B] = img[B ^ low] | (1 << row[low.bit_length() - 1])
            out.append(img)
        return out

    def image(self, a: int, B: int) -> int:
        """Bitmask of aB = {ab : b in B} in the base monoid."""
        tab = self._image_table
        if tab is not None:
            return tab[a][B]
        row = self._brows[a]
        out = 0
        for b in bits.iter_members(B):
            out |= 1 << row[b]
        return out

    def product(self, x: int, y: int) -> int:
        n = self.n
        A, a = divmod(x, n)
        B, b = divmod(y, n)
        return (A | self.image(a, B)) * n + self._brows[a][b]

    def generators(self) -> list[int]:
        n = self.n
        return [self.encode(0, a) for a in range(n)] + [self.encode(1 << m, 0) for m in range(n)]

    def _build_table(self) -> np.ndarray:
        n = self.n
        img = np.array(self._image_table, dtype=np.int64)
        bt = np.asarray(self.base.table, dtype=np.int64)
        idx = np.arange(self.order, dtype=np.int64)
        A, a = idx // n, idx % n
        t = (A[:, None] | img[a[:, None], A[None, :]]) * n + bt[a[:, None], a[None, :]]
        return t.astype(np.int32)

    # -- named elements of S(M) --------------------------------------------
    def element(self, A, a: int) -> int:
        """Index of (A, a); ``A`` may be a bitmask or an iterable of base elements."""
        if not isinstance(A, int):
            A = bits.mask(A)
        if A >> self.n or not 0 <= a < self.n:
            raise ValueError("subset or element outside the base monoid")
        return self.encode(A, a)

    @property
    def full_set(self) -> int:
        return bits.full(self.n)

    def script_e(self) -> int:
        """Bitmask (over S(M)) of the semilattice {(F, 1) : F ⊆ M}."""
        m = 0
        for F in range(1 << self.n):
            m |= 1 << self.encode(F, 0)
        return m


class SzView(MonoidView):
    """Sz(M): the pairs (A, a) of S(M) with {1, a} ⊆ A, densely re-indexed.

    Dense index order follows the S(M) encoding, so ({1}, 1) is index 0.
    """

    kind = "Sz"

    def __init__(self, base: FiniteMonoid, base_cap: int = LAZY_BASE_CAP,
                 materialize_cap: int | None = None):
        self.s = SView(base, base_cap)
        self.base = base
        self.n = n = base.order
        if materialize_cap is not None:
            self.materialize_cap = materialize_cap
        valid = [x for x in range(self.s.order) if self.is_valid_s(x)]
        self._to_s = valid
        self._from_s = {x: i for i, x in enumerate(valid)}
        self.order = len(valid)
        self.identity = self._from_s[self.s.encode(1, 0)]

    def is_valid_s(self, x: int) -> bool:
        A, a = divmod(x, self.n)
        return A & 1 == 1 and (A >> a) & 1 == 1

    def to_s(self, i: int) -> int:
        return self._to_s[i]

    def from_s(self, x: int) -> int:
        try:
            return self._from_s[x]
        except KeyError:
            raise MonoidError(f"{self.s.label(x)} is not an element of Sz(M)") from None

    def decode(self, i: int) -> tuple[int, int]:
        return self.s.decode(self._to_s[i])

    def encode(self, A: int, a: int) -> int:
        return self.from_s(self.s.encode(A, a))

    def label(self, i: int) -> str:
        return self.s.label(self._to_s[i])

    def product(self, i: int, j: int) -> int:
        return self.from_s(self.s.product(self._to_s[i], self._to_s[j]))

    def generators(self) -> list[int]:
        n = self.n
        gens = {self.encode(1 | (1 << a), a) for a in range(n)}
        gens |= {self.encode(1 | (1 << m), 0) for m in range(n)}
        return sorted(gens)

    def _build_table(self) -> np.ndarray:
        s_idx = np.array(self._to_s, dtype=np.int64)
        n = self.n
        img = np.array(self.s._image_table, dtype=np.int64) if self.s._image_table is not None else None
        if img is None:
            return super()._build_table()
        bt = np.asarray(self.base.table, dtype=np.int64)
        A, a = s_idx // n, s_idx % n
        prod = (A[:, None] | img[a[:, None], A[None, :]]) * n + bt[a[:, None], a[None, :]]
        lookup = np.full(self.s.order, -1, dtype=np.int64)
        lookup[s_idx] = np.arange(len(s_idx))
        t = lookup[prod]
        if (t < 0).any():
            i, j = np.argwhere(t < 0)[0]
            raise MonoidError(f"Sz(M) not closed: {self.label(i)}*{self.label(j)}")
        return t.astype(np.int32)


def expand_S(m: FiniteMonoid, base_cap: int = LAZY_BASE_CAP,
             materialize_cap: int | None = None) -> SView:
    return SView(m, base_cap, materialize_cap)


def expand_Sz(m: FiniteMonoid, base_cap: int = LAZY_BASE_CAP,
              materialize_cap: int | None = None) -> SzView:
    return SzView(m, base_cap, materialize_cap)


def materialize(v: MonoidView, cap: int | None = None) -> FiniteMonoid:
    """Dense copy of a view as a :class:`FiniteMonoid` (labels kept)."""
    cap = v.materialize_cap if cap is None else cap
    if v.order > cap:
        raise CapacityError(f"view of order {v.order} exceeds materialization cap {cap}")
    m = FiniteMonoid(v.table.tolist(), v.labels(), check=False)
    bad = validate(m) if v.generators() is None else validate(v)
    if bad is not None:
        raise MonoidError(str(bad))
    return m


@dataclass(frozen=True)
class Retraction:
    """The projection (A, a) -> a, and for S(M) the embedding a -> (∅, a)."""

    view: MonoidView
    project: Callable[[int], int]
    embed: Callable[[int], int] | None

    def check(self) -> None:
        v, base = self.view, self.view.base
        t = v.table
        proj = np.array([self.project(x) for x in range(v.order)])
        bt = np.asarray(base.table)
        bad = np.argwhere(proj[t] != bt[proj[:, None], proj[None, :]])
        if len(bad):
            x, y = map(int, bad[0])
            raise AssertionError(f"projection not a morphism at ({v.label(x)}, {v.label(y)})")
        if proj[v.identity] != base.identity:
            raise AssertionError("projection does not preserve the identity")
        if self.embed is not None:
            emb = [self.embed(a) for a in range(base.order)]
            if len(set(emb)) != base.order:
                raise AssertionError("embedding not injective")
            for a in range(base.order):
                if self.project(emb[a]) != a:
                    raise AssertionError(f"projection after embedding moves {a}")
                for b in range(base.order):
                    if v.product(emb[a], emb[b]) != emb[base.product(a, b)]:
                        raise AssertionError(f"embedding not a morphism at ({a}, {b})")


def retraction(v: SView | SzView, check: bool = True) -> Retraction:
    if isinstance(v, SView):
        r = Retraction(v, lambda x: x % v.n, lambda a: v.encode(0, a))
    elif isinstance(v, SzView):
        r = Retraction(v, lambda i: v.decode(i)[1], None)
    else:
        raise TypeError("retraction needs a view built by expand_S or expand_Sz")
    if check:
        r.check()
    return r


def direct_product(m1: FiniteMonoid, m2: FiniteMonoid) -> FiniteMonoid:
    """Componentwise product; (x1, x2) gets index x1 * |m2| + x2."""
    n2 = m2.order
    r1, r2 = m1.rows, m2.rows
    els = [(i, j) for i in range(m1.order) for j in range(n2)]
    table = [[r1[a][c] * n2 + r2[b][d] for (c, d) in els] for (a, b) in els]
    labels = None
    if m1.has_labels or m2.has_labels:
        labels = [f"({m1.label(a)},{m2.label(b)})" for a, b in els]
    return FiniteMonoid(table, labels)


def adjoin_identity(table, labels=None, identity_label: str = "1") -> FiniteMonoid:
    """S^1: a new identity at index 0, old element i moved to i + 1.

    The input only needs to be an associative table; an existing identity is
    not reused.
    """
    rows = [list(r) for r in table]
    k = len(rows)
    out = [list(range(k + 1))]
    for i, r in enumerate(rows):
        out.append([i + 1] + [v + 1 for v in r])
    if labels is not None:
        labels = [identity_label] + list(labels)
    return FiniteMonoid(out, labels)
