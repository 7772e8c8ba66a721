"""One-sided ideals, subacts of V×V, generated congruences and their witnesses."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import bits
from .bits import ElemSet
from .congruence import EqRelation, Kind, closure, side_kind
from .monoid import MonoidView
from .relations import principal_left_ideals, principal_right_ideals

PairSet = frozenset  # of (x, y) tuples


class NotASubactError(ValueError):
    def __init__(self, message: str, pair=None, t=None):
        super().__init__(message)
        self.pair, self.t = pair, t


class NotACongruenceError(ValueError):
    pass


def _side(side: str | Kind) -> Kind:
    k = side_kind(side)
    if k not in (Kind.RIGHT, Kind.LEFT, Kind.TWO_SIDED):
        raise ValueError("side must be right, left or two-sided")
    return k


# ---------------------------------------------------------------------------
# ideals

@dataclass(frozen=True)
class IdealSet:
    side: str
    carrier: ElemSet
    generators: tuple[int, ...]

    def members(self) -> list[int]:
        return bits.members(self.carrier)

    def __contains__(self, x: int) -> bool:
        return bool((self.carrier >> x) & 1)

    def __len__(self) -> int:
        return bits.size(self.carrier)


def _principal(v: MonoidView, side: str) -> list[ElemSet]:
    cache = v.__dict__.setdefault("_principal_ideals", {})
    if side not in cache:
        cache[side] = principal_right_ideals(v) if side == "right" else principal_left_ideals(v)
    return cache[side]


def principal_right_ideal(v: MonoidView, a: int) -> IdealSet:
    return IdealSet("right", _principal(v, "right")[a], (a,))


def principal_left_ideal(v: MonoidView, a: int) -> IdealSet:
    return IdealSet("left", _principal(v, "left")[a], (a,))


def ideal_generators(v: MonoidView, carrier: ElemSet, side: str = "right") -> tuple[int, ...]:
    """Smallest generating set of a one-sided ideal.

    One element from each maximal class of the preorder x ≥ y iff y ∈ xV,
    taking the least index in each class.  Elements are scanned by decreasing
    principal-ideal size so a generator is never covered by a later one.
    """
    princ = _principal(v, side)
    elems = bits.members(carrier)
    for x in elems:
        if not bits.is_subset(princ[x], carrier):
            raise ValueError(f"not a {side} ideal: {v.label(x)} generates outside it")
    elems.sort(key=lambda x: (-bits.size(princ[x]), x))
    covered = 0
    gens = []
    for x in elems:
        if not (covered >> x) & 1:
            gens.append(x)
            covered |= princ[x]
    return tuple(sorted(gens))


def ideal_generated_by(v: MonoidView, gens: Iterable[int], side: str = "right") -> ElemSet:
    princ = _principal(v, side)
    out = 0
    for g in gens:
        out |= princ[g]
    return out


def ideal_intersection(v: MonoidView, a: int, b: int, side: str = "right") -> IdealSet:
    """aV ∩ bV (or Va ∩ Vb) with a smallest generating set; empty is allowed."""
    princ = _principal(v, side)
    carrier = princ[a] & princ[b]
    return IdealSet(side, carrier, ideal_generators(v, carrier, side) if carrier else ())


# ---------------------------------------------------------------------------
# subacts of V×V

def subact_RL(v: MonoidView, a: int, b: int, side: str = "right") -> PairSet:
    """R(a,b) = {(u,w) : au = bw} for side="right", L(a,b) = {(p,q) : pa = qb} for "left"."""
    n = v.order
    if side == "right":
        ra, rb = v.rows[a], v.rows[b]
    elif side == "left":
        ra, rb = v.cols[a], v.cols[b]
    else:
        raise ValueError("side must be right or left")
    by_value: dict[int, list[int]] = {}
    for w in range(n):
        by_value.setdefault(rb[w], []).append(w)
    return frozenset((u, w) for u in range(n) for w in by_value.get(ra[u], ()))


def _act(v: MonoidView, pair: tuple[int, int], side: str) -> list[tuple[int, int]]:
    u, w = pair
    if side == "right":
        return list(zip(v.rows[u], v.rows[w]))
    return list(zip(v.cols[u], v.cols[w]))


def orbit(v: MonoidView, pair: tuple[int, int], side: str = "right") -> set[tuple[int, int]]:
    """(u,w)·V = {(ut, wt)} (right) or V·(u,w) (left)."""
    return set(_act(v, pair, side))


def check_subact(v: MonoidView, P: Iterable[tuple[int, int]], side: str = "right") -> None:
    P = set(P)
    for p in sorted(P):
        for t, q in enumerate(_act(v, p, side)):
            if q not in P:
                raise NotASubactError(
                    f"{side} subact check fails: {p} acted on by {t} gives {q} outside the set", p, t)


def subact_generators(v: MonoidView, P: Iterable[tuple[int, int]], side: str = "right",
                      check: bool = True) -> list[tuple[int, int]]:
    """An irredundant generating set of a subact (in fact one of least size).

    Same scan as :func:`ideal_generators`: pairs are visited by decreasing orbit
    size and kept only when no earlier generator's orbit contains them.
    """
    P = set(P)
    if check:
        check_subact(v, P, side)
    orbits = {p: orbit(v, p, side) for p in P}
    covered: set = set()
    gens = []
    for p in sorted(P, key=lambda p: (-len(orbits[p]), p)):
        if p not in covered:
            gens.append(p)
            covered |= orbits[p]
    return sorted(gens)


def subact_generated_by(v: MonoidView, gens: Iterable[tuple[int, int]], side: str = "right") -> set:
    out: set = set()
    for g in gens:
        out |= orbit(v, g, side)
    return out


# ---------------------------------------------------------------------------
# congruences

def congruence_closure(v: MonoidView, W: Iterable[tuple[int, int]], side: str | Kind = "right") -> EqRelation:
    """ρ_W (right), λ_W (left) or the two-sided congruence generated by W."""
    return closure(v, W, _side(side))


@dataclass(frozen=True)
class WSequence:
    """A chain a = c_1 t_1, d_1 t_1 = c_2 t_2, ..., d_n t_n = b (right side).

    On the left side the translations multiply on the left: a = t_1 c_1 etc.
    """

    start: int
    end: int
    steps: tuple[tuple[int, int, int], ...]
    side: str = "right"

    def __len__(self) -> int:
        return len(self.steps)

    def skeleton(self) -> list[tuple[int, int]]:
        return [(c, d) for c, d, _ in self.steps]

    def points(self, v: MonoidView) -> list[int]:
        """a, d_1 t_1, ..., d_n t_n as computed from the steps."""
        mul = v.product
        out = [self.start]
        for c, d, t in self.steps:
            out.append(mul(d, t) if self.side == "right" else mul(t, d))
        return out

    def replay(self, v: MonoidView, W: Iterable[tuple[int, int]] | None = None) -> bool:
        """Every equality of the chain holds literally (and each step uses W ∪ W⁻¹)."""
        allowed = None
        if W is not None:
            allowed = set(W) | {(d, c) for c, d in W}
        mul = (lambda g, t: v.product(g, t)) if self.side == "right" else (lambda g, t: v.product(t, g))
        if not self.steps:
            return self.start == self.end
        cur = self.start
        for c, d, t in self.steps:
            if allowed is not None and (c, d) not in allowed:
                return False
            if mul(c, t) != cur:
                return False
            cur = mul(d, t)
        return cur == self.end


def skeleton(ws: WSequence) -> list[tuple[int, int]]:
    return ws.skeleton()


def find_w_sequence(v: MonoidView, W: Iterable[tuple[int, int]], side: str,
                    a: int, b: int) -> WSequence | None:
    """A shortest W-sequence from a to b, or None when a and b are unrelated.

    Breadth-first search on the graph with an edge x -> y whenever x = c t and
    y = d t for some (c, d) in W ∪ W⁻¹ (x = t c, y = t d on the left).
    """
    if side not in ("right", "left"):
        raise ValueError("side must be right or left")
    if a == b:
        return WSequence(a, b, (), side)
    gens = sorted(set(W) | {(d, c) for c, d in W})
    lines = v.rows if side == "right" else v.cols
    # for each c: value -> translations t with c*t == value
    pre: dict[int, dict[int, list[int]]] = {}
    for c, _ in gens:
        if c not in pre:
            m: dict[int, list[int]] = {}
            for t, val in enumerate(lines[c]):
                m.setdefault(val, []).append(t)
            pre[c] = m
    back: dict[int, tuple[int, int, int, int]] = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        for c, d in gens:
            for t in pre[c].get(x, ()):
                y = lines[d][t]
                if y in back:
                    continue
                back[y] = (x, c, d, t)
                if y == b:
                    steps = []
                    cur = y
                    while back[cur] is not None:
                        px, pc, pd, pt = back[cur]
                        steps.append((pc, pd, pt))
                        cur = px
                    return WSequence(a, b, tuple(reversed(steps)), side)
                queue.append(y)
    return None


@dataclass
class MinGenResult:
    """Outcome of a minimum-generator search for a one-sided congruence.

    When ``exact`` is false, ``generators`` is an irredundant set of size
    ``upper`` and nothing smaller than ``lower`` can work.
    """

    exact: bool
    generators: list[tuple[int, int]]
    lower: int
    upper: int
    pool_size: int = 0

    @property
    def minimum(self) -> int | None:
        return self.upper if self.exact else None


def maximal_principal_pairs(v: MonoidView, rel: EqRelation, side: Kind,
                            pair_cap: int | None = None) -> list[tuple[tuple[int, int], EqRelation]]:
    """One pair for each maximal congruence generated by a single pair of ``rel``.

    A candidate (x, y) is skipped as soon as it lies in a kept principal
    congruence, since then the congruence it generates is contained in that one.
    """
    cand = [(x, y) for c in rel.classes() for i, x in enumerate(c) for y in c[i + 1:]]
    cand.sort()
    if pair_cap is not None and len(cand) > pair_cap:
        cand = cand[:pair_cap]
    kept: list[tuple[tuple[int, int], EqRelation]] = []
    for p in cand:
        if any(r.related(*p) for _, r in kept):
            continue
        rp = closure(v, [p], side)
        kept = [(q, r) for q, r in kept if not rp.related(*q)]
        kept.append((p, rp))
    return kept


def min_generators_congruence(v: MonoidView, rel: EqRelation, side: str | Kind = "right",
                              cap: int = 2, pool_cap: int = 64,
                              pair_cap: int | None = 20000) -> MinGenResult:
    """Least-size W with congruence_closure(W) == rel, searched up to size ``cap``.

    The search runs over the maximal single-pair congruences inside ``rel``
    (any generating set can be rewritten to use only such pairs without
    growing).  Past ``cap`` or ``pool_cap`` it returns bounds, not a guess.
    """
    side = _side(side)
    if not rel.is_congruence(v, side):
        raise NotACongruenceError(f"relation is not a {side} congruence")
    if rel.is_identity():
        return MinGenResult(True, [], 0, 0, 0)
    total = sum(len(c) * (len(c) - 1) // 2 for c in rel.classes())
    truncated = pair_cap is not None and total > pair_cap
    pool = maximal_principal_pairs(v, rel, side, pair_cap)
    pairs = [p for p, _ in pool]
    found = None
    searched = 0
    if not truncated and len(pool) <= pool_cap:
        for size in range(1, cap + 1):
            searched = size
            if size == 1:
                hits = [[p] for p, r in pool if r == rel]
            else:
                hits = []
                for combo in itertools.combinations(range(len(pool)), size):
                    if closure(v, [pairs[i] for i in combo], side) == rel:
                        hits = [[pairs[i] for i in combo]]
                        break
            if hits:
                found = hits[0]
                break
    if found is not None:
        return MinGenResult(True, found, len(found), len(found), len(pool))
    # irredundant upper bound
    gens: list[tuple[int, int]] = []
    cur = EqRelation.identity(v.order)
    for p, r in pool:
        if not cur.related(*p):
            gens.append(p)
            cur = closure(v, gens, side)
    if cur != rel:
        # truncated pool missed something; fall back to all class pairs
        for c in rel.classes():
            for y in c[1:]:
                if not cur.related(c[0], y):
                    gens.append((c[0], y))
                    cur = closure(v, gens, side)
    i = 0
    while i < len(gens):
        rest = gens[:i] + gens[i + 1:]
        if closure(v, rest, side) == rel:
            gens = rest
        else:
            i += 1
    lower = searched + 1 if searched else 1
    if len(gens) <= lower and searched:
        lower = len(gens)
    return MinGenResult(len(gens) == lower, gens, min(lower, len(gens)), len(gens), len(pool))
