"""Named monoid families and exhaustive enumeration of small monoids.

Catalog names take integer parameters in parentheses, e.g. ``chain(4)``,
``fountain(2)`` (built over the cyclic group of that order) or
``diamond_stack(1)``.  Every constructor returns a validated
:class:`~semidirect.monoid.FiniteMonoid` with identity at index 0.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .expansion import adjoin_identity, direct_product
from .monoid import CapacityError, FiniteMonoid, MonoidError, canonical_form
from .relations import classify

BASE_CAP = 64


def _cap(n: int) -> None:
    if n > BASE_CAP:
        raise CapacityError(f"order {n} exceeds the base-monoid cap {BASE_CAP}")


def make_trivial() -> FiniteMonoid:
    return FiniteMonoid([[0]], ["1"])


def make_u2() -> FiniteMonoid:
    return FiniteMonoid([[0, 1], [1, 1]], ["1", "z"])


def make_cyclic_group(k: int) -> FiniteMonoid:
    if k < 1:
        raise ValueError("k >= 1")
    _cap(k)
    return FiniteMonoid([[(i + j) % k for j in range(k)] for i in range(k)],
                        [str(i) for i in range(k)])


def make_symmetric_group(k: int = 3) -> FiniteMonoid:
    """S_k under composition (p*q)(i) = p(q(i)), identity first."""
    perms = list(itertools.permutations(range(k)))
    _cap(len(perms))
    pos = {p: i for i, p in enumerate(perms)}
    table = [[pos[tuple(p[q[i]] for i in range(k))] for q in perms] for p in perms]
    return FiniteMonoid(table, ["".join(str(i + 1) for i in p) for p in perms])


def make_chain_semilattice(k: int) -> FiniteMonoid:
    """A k-element chain under min; index 0 is the top (the identity), index k-1 the bottom."""
    if k < 1:
        raise ValueError("k >= 1")
    _cap(k)
    if k == 1:
        labels = ["T"]
    else:
        labels = ["T"] + [str(v) for v in range(k - 3, -1, -1)] + ["B"]
    return FiniteMonoid([[max(i, j) for j in range(k)] for i in range(k)], labels)


_DIAMOND = "DEFG"


def _diamond_meet(x: int, y: int) -> int:
    # indices into "DEFG": D top, E and F incomparable, G bottom
    if x == y or y == 0:
        return x
    if x == 0:
        return y
    return 3


def make_diamond() -> FiniteMonoid:
    """The diamond lattice {D, E, F, G} (E∧F = G) under meet, with an identity adjoined."""
    meet = [[_diamond_meet(x, y) for y in range(4)] for x in range(4)]
    return adjoin_identity(meet, list(_DIAMOND))


def make_diamond_stack(k: int) -> FiniteMonoid:
    """{0..k} × diamond under componentwise meet, with an identity adjoined.

    Element ``X_i`` (X in D, E, F, G) has index ``1 + 4*i + pos(X)``.
    """
    if k < 0:
        raise ValueError("k >= 0")
    _cap(4 * (k + 1) + 1)
    els = [(i, d) for i in range(k + 1) for d in range(4)]
    pos = {e: j for j, e in enumerate(els)}
    meet = [[pos[(min(i, j), _diamond_meet(d, e))] for (j, e) in els] for (i, d) in els]
    return adjoin_identity(meet, [f"{_DIAMOND[d]}_{i}" for i, d in els])


def _group_inverse(g: FiniteMonoid) -> list[int]:
    inv = []
    for x in range(g.order):
        ys = [y for y in range(g.order) if g.product(x, y) == 0 and g.product(y, x) == 0]
        if not ys:
            raise MonoidError(f"not a group: {g.label(x)} has no inverse")
        inv.append(ys[0])
    return inv


def make_fountain(g: FiniteMonoid) -> FiniteMonoid:
    """M = G ∪ xG ∪ x²G ∪ {x³, x⁴} for a finite group G.

    ``x^i h`` (i = 0, 1, 2) has index ``i*|G| + h``; x³ and x⁴ are the last two.
    Products: x^i g · x^j h is x^{i+j} gh when i + j ≤ 2, x³ when 1 ≤ i, j and
    i + j = 3, x³ for G·x³ and x³·G, and x⁴ otherwise.
    """
    _group_inverse(g)
    k = g.order
    _cap(3 * k + 2)
    x3, x4 = 3 * k, 3 * k + 1

    def parts(a):
        if a < 3 * k:
            return divmod(a, k)
        return (3 if a == x3 else 4), None

    def mul(a, b):
        i, ga = parts(a)
        j, gb = parts(b)
        if i <= 2 and j <= 2:
            if i + j <= 2:
                return (i + j) * k + g.product(ga, gb)
            if i + j == 3 and i >= 1 and j >= 1:
                return x3
            return x4
        if (i == 0 and j == 3) or (i == 3 and j == 0):
            return x3
        return x4

    n = 3 * k + 2
    gl = g.labels()
    labels = list(gl) + [f"x{h}" for h in gl] + [f"xx{h}" for h in gl] + ["x3", "x4"]
    return FiniteMonoid([[mul(a, b) for b in range(n)] for a in range(n)], labels)


def fountain_x_element(g: FiniteMonoid, power: int, h: int = 0) -> int:
    """Index of x^power·h in make_fountain(g)."""
    k = g.order
    if power <= 2:
        return power * k + h
    return 3 * k + (power - 3)


def fountain_annihilator_generators(g: FiniteMonoid, H: list[int] | None = None) -> dict:
    """The displayed generating sets for r(xg), r(x²g), r(x³), r(x⁴) of make_fountain(g).

    ``H`` is a generating set of G closed under inverses; the universal
    relation on G is generated by H×H only when 1 ∈ H, so the default is all of G.
    """
    H = list(range(g.order)) if H is None else H
    f = lambda p, h=0: fountain_x_element(g, p, h)
    return {
        "x": [(f(2, h), f(2, kk)) for h in H for kk in H] + [(f(3), f(4))],
        "xx": [(f(1, h), f(1, kk)) for h in H for kk in H] + [(f(2), f(4))],
        "x3": [(h, kk) for h in H for kk in H] + [(f(1), f(4))],
        "x4": [(0, f(4))],
    }


def make_truncated_presented_semilattice(k: int) -> FiniteMonoid:
    """Free semilattice monoid on a, b_i, c_i (i ≤ k) subject to b_i a = c_i a.

    Elements are normal forms: sets of generators where, when a is present,
    each c_i is rewritten to b_i.  Order 4^k + 2^k.
    """
    if k < 1:
        raise ValueError("k >= 1")
    n = 4 ** k + 2 ** k
    _cap(n)
    gens = ["a"] + [f"b{i}" for i in range(1, k + 1)] + [f"c{i}" for i in range(1, k + 1)]

    def normal(s: frozenset) -> frozenset:
        if "a" in s:
            s = frozenset(f"b{g[1:]}" if g.startswith("c") else g for g in s)
        return s

    forms = {normal(frozenset(c)) for r in range(len(gens) + 1)
             for c in itertools.combinations(gens, r)}
    order = sorted(forms, key=lambda s: (len(s), sorted(gens.index(g) for g in s)))
    pos = {s: i for i, s in enumerate(order)}
    table = [[pos[normal(s | t)] for t in order] for s in order]
    labels = ["1" if not s else "{" + ",".join(sorted(s, key=gens.index)) + "}" for s in order]
    return FiniteMonoid(table, labels)


def presented_semilattice_element(m: FiniteMonoid, *gens: str) -> int:
    key = "1" if not gens else None
    want = set(gens)
    for i, lab in enumerate(m.labels()):
        if key is not None and lab == key:
            return i
        if lab.startswith("{") and set(lab[1:-1].split(",")) == want:
            return i
    raise KeyError(gens)


def make_monogenic(index: int, period: int) -> FiniteMonoid:
    """{1, x, ..., x^(index+period-1)} with x^(index+period) = x^index."""
    if index < 1 or period < 1:
        raise ValueError("index, period >= 1")
    n = index + period
    _cap(n)

    def red(e):
        if e < n:
            return e
        return index + (e - index) % period

    return FiniteMonoid([[red(i + j) for j in range(n)] for i in range(n)],
                        ["1"] + [f"x^{i}" for i in range(1, n)])


def make_left_zero_monoid(k: int) -> FiniteMonoid:
    """k-element left-zero semigroup (xy = x) with an identity adjoined."""
    return adjoin_identity([[i] * k for i in range(k)], [f"l{i}" for i in range(k)])


def make_right_zero_monoid(k: int) -> FiniteMonoid:
    return adjoin_identity([list(range(k)) for _ in range(k)], [f"r{i}" for i in range(k)])


def make_null_monoid(k: int) -> FiniteMonoid:
    """k nonzero elements with all products 0, a zero, and an identity (order k+2)."""
    table = [[0] * (k + 1) for _ in range(k + 1)]
    return adjoin_identity(table, ["0"] + [f"n{i}" for i in range(1, k + 1)])


# ---------------------------------------------------------------------------
# registry

@dataclass(frozen=True)
class CatalogEntry:
    name: str
    parameters: tuple[int, ...]
    monoid: FiniteMonoid = field(compare=False, repr=False)
    provenance: str = "standard"

    @property
    def key(self) -> str:
        if not self.parameters:
            return self.name
        return f"{self.name}({','.join(map(str, self.parameters))})"

    @property
    def order(self) -> int:
        return self.monoid.order


_BUILDERS: dict[str, tuple[Callable[..., FiniteMonoid], str]] = {
    "trivial": (make_trivial, "standard"),
    "u2": (make_u2, "standard: two-element semilattice"),
    "cyclic": (make_cyclic_group, "standard"),
    "symmetric": (make_symmetric_group, "standard"),
    "chain": (make_chain_semilattice, "finite truncation of the chain example"),
    "diamond": (make_diamond, "diamond lattice with identity"),
    "diamond_stack": (make_diamond_stack, "truncation of the diamond-stack example"),
    "fountain": (lambda k: make_fountain(make_cyclic_group(k)), "Fountain construction over Z_k"),
    "presented_semilattice": (make_truncated_presented_semilattice,
                              "truncation of the presented semilattice example"),
    "monogenic": (make_monogenic, "standard"),
    "left_zero": (make_left_zero_monoid, "standard"),
    "right_zero": (make_right_zero_monoid, "standard"),
    "null": (make_null_monoid, "standard"),
    "z2xz2": (lambda: direct_product(make_cyclic_group(2), make_cyclic_group(2)), "standard"),
    "u2xu2": (lambda: direct_product(make_u2(), make_u2()), "standard"),
    "u2xz2": (lambda: direct_product(make_u2(), make_cyclic_group(2)), "standard"),
}

DEFAULT_CATALOG = [
    "trivial", "u2", "cyclic(2)", "cyclic(3)", "cyclic(4)", "cyclic(5)", "cyclic(6)",
    "symmetric(3)", "z2xz2", "u2xu2", "u2xz2",
    "chain(3)", "chain(4)", "chain(5)", "chain(6)",
    "diamond", "diamond_stack(0)", "diamond_stack(1)", "diamond_stack(2)",
    "fountain(1)", "fountain(2)", "fountain(3)",
    "presented_semilattice(1)", "presented_semilattice(2)",
    "monogenic(2,1)", "monogenic(1,2)", "monogenic(3,1)", "monogenic(2,2)", "monogenic(1,3)",
    "left_zero(2)", "right_zero(2)", "left_zero(3)", "right_zero(3)",
    "null(1)", "null(2)",
]

_NAME_RE = re.compile(r"^\s*([a-z_0-9]+)\s*(?:\(\s*([0-9,\s]*)\))?\s*$")


def parse_name(spec: str) -> tuple[str, tuple[int, ...]]:
    m = _NAME_RE.match(spec)
    if not m or m.group(1) not in _BUILDERS:
        raise KeyError(f"unknown catalog entry {spec!r}")
    params = tuple(int(p) for p in (m.group(2) or "").split(",") if p.strip())
    return m.group(1), params


def get(spec: str) -> CatalogEntry:
    name, params = parse_name(spec)
    builder, prov = _BUILDERS[name]
    return CatalogEntry(name, params, builder(*params), prov)


def entries(max_order: int | None = None, names: list[str] | None = None) -> list[CatalogEntry]:
    out = [get(s) for s in (DEFAULT_CATALOG if names is None else names)]
    if max_order is not None:
        out = [e for e in out if e.order <= max_order]
    return out


def builder_names() -> list[str]:
    return sorted(_BUILDERS)


def is_right_abundant(m: FiniteMonoid) -> bool:
    return classify(m).right_abundant


# ---------------------------------------------------------------------------
# enumeration up to isomorphism

ENUM_CAP = 5


def _consistent(t: list[list[int]], n: int, x: int, y: int) -> bool:
    """Associativity on every triple made fully defined by setting t[x][y]."""
    v = t[x][y]
    tx, tv = t[x], t[v]
    for k in range(n):
        yk = t[y][k]
        if yk >= 0:
            a, b = tv[k], tx[yk]
            if a >= 0 and b >= 0 and a != b:
                return False
    for i in range(n):
        ti = t[i]
        ix = ti[x]
        if ix >= 0:
            a, b = t[ix][y], ti[v]
            if a >= 0 and b >= 0 and a != b:
                return False
    for i in range(n):
        ti = t[i]
        for j in range(n):
            if ti[j] == x:
                jy = t[j][y]
                if jy >= 0:
                    b = ti[jy]
                    if b >= 0 and b != v:
                        return False
    for j in range(n):
        xj = tx[j]
        if xj < 0:
            continue
        tj = t[j]
        for k in range(n):
            if tj[k] == y:
                a = t[xj][k]
                if a >= 0 and a != v:
                    return False
    return True


def enumerate_monoids(n: int, limit: int | None = None) -> Iterator[FiniteMonoid]:
    """Monoids of order n up to isomorphism, one canonical table per class.

    Backtracking fill of the non-identity cells in row-major order with
    associativity checked on every completed triple; a full table is emitted
    only if it equals its canonical form.  Orders above 5 need ``limit``.
    """
    if n < 1:
        raise ValueError("n >= 1")
    if n > ENUM_CAP and limit is None:
        raise CapacityError(f"exhaustive enumeration is limited to order {ENUM_CAP}; pass a limit")
    t = [[-1] * n for _ in range(n)]
    for i in range(n):
        t[0][i] = i
        t[i][0] = i
    cells = [(x, y) for x in range(1, n) for y in range(1, n)]
    emitted = 0

    def rec(c: int) -> Iterator[FiniteMonoid]:
        nonlocal emitted
        if limit is not None and emitted >= limit:
            return
        if c == len(cells):
            m = FiniteMonoid(t, check=False)
            flat = tuple(v for r in t for v in r)
            if canonical_form(m) == flat:
                emitted += 1
                yield FiniteMonoid(t, check=False)
            return
        x, y = cells[c]
        for v in range(n):
            t[x][y] = v
            if _consistent(t, n, x, y):
                yield from rec(c + 1)
                if limit is not None and emitted >= limit:
                    break
        t[x][y] = -1

    yield from rec(0)


@functools.lru_cache(maxsize=None)
def enumerated_list(n: int) -> tuple[FiniteMonoid, ...]:
    """All monoids of order n up to isomorphism (cached; n ≤ 5)."""
    return tuple(enumerate_monoids(n))


def enumerated(orders) -> Iterator[tuple[str, FiniteMonoid]]:
    """(name, monoid) for every enumerated monoid of the given orders, e.g. ``enum4.12``."""
    for n in orders:
        for i, m in enumerate(enumerated_list(n)):
            yield f"enum{n}.{i}", m
