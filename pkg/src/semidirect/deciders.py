"""Deciders for ideal Howson conditions, left co-ordinate systems and equated-ness."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import bits
from .acts import (IdealSet, _principal, ideal_generators, min_generators_congruence,
                   subact_RL)
from .bits import ElemSet
from .monoid import CapacityError, MonoidView
from .relations import left_annihilator, right_annihilator

SET_COVER_CAP = 24


# ---------------------------------------------------------------------------
# exact set cover

def min_set_cover(target: int, sets: Sequence[int], cap: int | None = None) -> list[int] | None:
    """Indices of a smallest family of ``sets`` whose union contains ``target``.

    Branch and bound on the lowest uncovered bit: some chosen set must contain
    it, so only those sets are tried.  Returns None if no cover exists or
    every cover is larger than ``cap``.
    """
    useful = [(s & target, i) for i, s in enumerate(sets) if s & target]
    if not target:
        return []
    union = 0
    for s, _ in useful:
        union |= s
    if union & target != target:
        return None
    by_bit: dict[int, list[tuple[int, int]]] = {}
    for s, i in useful:
        for b in bits.iter_members(s):
            by_bit.setdefault(b, []).append((s, i))
    for lst in by_bit.values():
        lst.sort(key=lambda p: (-bits.size(p[0]), p[1]))
    best: list = [None]
    limit = [cap + 1 if cap is not None else len(useful) + 1]

    def search(left: int, chosen: list[int]) -> None:
        if not left:
            if len(chosen) < limit[0]:
                limit[0] = len(chosen)
                best[0] = list(chosen)
            return
        if len(chosen) + 1 >= limit[0]:
            return
        low = (left & -left).bit_length() - 1
        for s, i in by_bit[low]:
            chosen.append(i)
            search(left & ~s, chosen)
            chosen.pop()

    search(target, [])
    return sorted(best[0]) if best[0] is not None else None


def greedy_set_cover(target: int, sets: Sequence[int]) -> list[int] | None:
    left, out = target, []
    while left:
        i = max(range(len(sets)), key=lambda j: (bits.size(sets[j] & left), -j), default=None)
        if i is None or not sets[i] & left:
            return None
        out.append(i)
        left &= ~sets[i]
    return sorted(out)


# ---------------------------------------------------------------------------
# ideal Howson

def is_principally_ideal_howson(v: MonoidView, side: str = "right") -> tuple[bool, tuple[int, int] | None]:
    """Every non-empty intersection of two principal ideals is principal.

    Returns (verdict, first violating pair (a, b) or None).
    """
    princ = _principal(v, side)
    principal = set(princ)
    n = v.order
    for a in range(n):
        pa = princ[a]
        for b in range(a + 1, n):
            inter = pa & princ[b]
            if inter and inter not in principal:
                return False, (a, b)
    return True, None


@dataclass
class PairProfile:
    a: int
    b: int
    size: int
    generators: tuple[int, ...]
    complements: tuple[int, ...]   # |(aM ∩ bM) \ u_i M| per generator

    @property
    def n(self) -> int:
        return len(self.generators)


@dataclass
class StrongHowsonProfile:
    side: str
    pairs: list[PairProfile]
    max_n: int
    worst: PairProfile | None
    # on a finite monoid every complement is finite, so the strong form always holds
    complements_finite: bool = True

    def as_dict(self, v: MonoidView | None = None) -> dict:
        lab = (lambda x: v.label(x)) if v is not None else (lambda x: x)
        return {
            "side": self.side,
            "max_n": self.max_n,
            "complements_finite": self.complements_finite,
            "worst": None if self.worst is None else {
                "a": lab(self.worst.a), "b": lab(self.worst.b),
                "generators": [lab(u) for u in self.worst.generators],
                "complements": list(self.worst.complements)},
            "pairs": len(self.pairs),
        }


def strong_howson_profile(v: MonoidView, side: str = "right", cap: int = SET_COVER_CAP) -> StrongHowsonProfile:
    """Least number of principal ideals covering each non-empty aM ∩ bM.

    The least cover is the set of maximal classes of the intersection (see
    :func:`semidirect.acts.ideal_generators`); intersections up to ``cap``
    elements are also solved as an explicit set cover and the two must agree.
    """
    princ = _principal(v, side)
    n = v.order
    out = []
    for a in range(n):
        for b in range(a, n):
            inter = princ[a] & princ[b]
            if not inter:
                continue
            gens = ideal_generators(v, inter, side)
            if bits.size(inter) <= cap:
                elems = bits.members(inter)
                cover = min_set_cover(inter, [princ[u] for u in elems])
                if cover is None or len(cover) != len(gens):
                    raise AssertionError(f"set cover disagrees at ({a}, {b})")
            comps = tuple(bits.size(inter & ~princ[u]) for u in gens)
            out.append(PairProfile(a, b, bits.size(inter), gens, comps))
    worst = max(out, key=lambda p: (p.n, -p.a, -p.b), default=None)
    return StrongHowsonProfile(side, out, worst.n if worst else 0, worst)


@dataclass
class HowsonReport:
    side: str
    ideal_howson: bool
    strongly: bool
    principally: bool
    max_n: int
    witness: tuple[int, int] | None
    profile: StrongHowsonProfile | None = None

    def implication_chain_holds(self) -> bool:
        return (not self.principally or self.strongly) and (not self.strongly or self.ideal_howson)

    def as_dict(self, v: MonoidView | None = None) -> dict:
        lab = (lambda x: v.label(x)) if v is not None else (lambda x: x)
        d = {"side": self.side, "ideal_howson": self.ideal_howson, "strongly": self.strongly,
             "principally": self.principally, "max_n": self.max_n,
             "witness": None if self.witness is None else [lab(x) for x in self.witness]}
        if self.profile is not None:
            d["profile"] = self.profile.as_dict(v)
        return d


def howson_report(v: MonoidView, side: str = "right", profile: bool = True) -> HowsonReport:
    """Howson verdicts for a finite view; the plain and strong forms always hold here."""
    princ_ok, wit = is_principally_ideal_howson(v, side)
    prof = strong_howson_profile(v, side) if profile else None
    max_n = prof.max_n if prof else (1 if princ_ok else -1)
    if prof is not None and princ_ok != (prof.max_n <= 1):
        raise AssertionError("principal verdict disagrees with the profile")
    return HowsonReport(side, True, True, princ_ok, max_n, wit, prof)


# ---------------------------------------------------------------------------
# left co-ordinate systems

@dataclass(frozen=True)
class CoordSystem:
    a: int
    b: int
    A: ElemSet
    B: ElemSet
    pairs: tuple[tuple[int, int], ...]


def _image_masks(v: MonoidView) -> np.ndarray:
    """img[z, X] = bitmask of zX, for every element z and subset bitmask X."""
    cache = v.__dict__.get("_left_image_masks")
    if cache is not None:
        return cache
    n = v.order
    if n > 16:
        raise CapacityError(f"subset tables need order ≤ 16, got {n}")
    img = np.zeros((n, 1 << n), dtype=np.int64)
    for z in range(n):
        row = v.rows[z]
        for X in range(1, 1 << n):
            low = X & -X
            img[z, X] = img[z, X ^ low] | (1 << row[low.bit_length() - 1])
    v.__dict__["_left_image_masks"] = img
    return img


def _subset_image(v: MonoidView, z: int, X: ElemSet) -> ElemSet:
    row = v.rows[z]
    out = 0
    for x in bits.iter_members(X):
        out |= 1 << row[x]
    return out


def _L_list(v: MonoidView, a: int, b: int) -> list[tuple[int, int]]:
    return sorted(subact_RL(v, a, b, "left"))


def coverage(v: MonoidView, a: int, b: int, A: ElemSet, B: ElemSet,
             candidates: Sequence[tuple[int, int]] | None = None) -> tuple[list[tuple[int, int]], list[tuple[int, int]], list[int]]:
    """For each candidate (p,q) ∈ L(a,b), the bitmask of solutions (x,y) it serves.

    Returns (solutions, candidates, masks) where bit j of masks[i] says that
    candidates[i] covers solutions[j].
    """
    rows = v.rows
    sols = _L_list(v, a, b)
    if candidates is None:
        candidates = sols
    f = [rows[x][a] for x, _ in sols]
    S = [_subset_image(v, x, A) | _subset_image(v, y, B) for x, y in sols]
    n = v.order
    masks = []
    for p, q in candidates:
        u = rows[p][a]
        m = 0
        for t in range(n):
            val = rows[t][u]
            tp, tq = rows[t][p], rows[t][q]
            img = _subset_image(v, tp, A) | _subset_image(v, tq, B)
            for j, (fj, Sj) in enumerate(zip(f, S)):
                if fj == val and not img & ~Sj:
                    m |= 1 << j
        masks.append(m)
    return sols, list(candidates), masks


def coordinate_system_check(v: MonoidView, cs: CoordSystem) -> tuple[bool, tuple[int, int] | None]:
    """Whether ``cs`` is a left co-ordinate system; on failure, the first uncovered (x, y)."""
    rows = v.rows
    for p, q in cs.pairs:
        if rows[p][cs.a] != rows[q][cs.b]:
            raise ValueError(f"({p}, {q}) is not in L({cs.a}, {cs.b})")
    sols, _, masks = coverage(v, cs.a, cs.b, cs.A, cs.B, cs.pairs)
    got = 0
    for m in masks:
        got |= m
    for j, s in enumerate(sols):
        if not (got >> j) & 1:
            return False, s
    return True, None


@dataclass
class CoordResult:
    size: int | None          # exact minimum, when known
    pairs: list[tuple[int, int]]
    exact: bool
    upper: int | None


def min_coordinate_system(v: MonoidView, a: int, b: int, A: ElemSet, B: ElemSet,
                          cap_n: int | None = 3) -> CoordResult:
    """A smallest left co-ordinate system for (a, b) with respect to (A, B).

    Exact up to ``cap_n`` pairs (``None`` means no cap); above it a greedy
    system gives an upper bound only.
    """
    sols, cands, masks = coverage(v, a, b, A, B)
    target = (1 << len(sols)) - 1
    if not sols:
        return CoordResult(0, [], True, 0)
    cover = min_set_cover(target, masks, cap_n)
    if cover is not None:
        return CoordResult(len(cover), [cands[i] for i in cover], True, len(cover))
    g = greedy_set_cover(target, masks)
    return CoordResult(None, [cands[i] for i in g], False, len(g))


@dataclass
class CoordVerdict:
    holds: bool
    n: int
    worst: tuple[int, int, ElemSet, ElemSet] | None
    worst_size: int
    instances: int
    sampled: bool
    seed: int | None = None
    failing: tuple[int, int, ElemSet, ElemSet] | None = None

    def as_dict(self, v: MonoidView | None = None) -> dict:
        def inst(w):
            if w is None:
                return None
            a, b, A, B = w
            lab = (lambda x: v.label(x)) if v is not None else (lambda x: x)
            return {"a": lab(a), "b": lab(b), "A": A, "B": B}
        return {"verdict": self.holds, "n": self.n, "worst": inst(self.worst),
                "worst_size": self.worst_size, "failing": inst(self.failing),
                "instances": self.instances, "sampled": self.sampled, "seed": self.seed}


def _coverage_block(v: MonoidView, a: int, b: int, ABs: np.ndarray,
                    cands: Sequence[tuple[int, int]] | None = None):
    """Coverage for one (a, b) over many (A, B) at once.

    Returns (solutions, cov) with cov[k, i, j] true when candidate i serves
    solution j for the k-th (A, B).  Candidates default to the solutions.
    """
    t = np.asarray(v.table)
    img = _image_masks(v)
    sols = _L_list(v, a, b)
    if not sols:
        return sols, np.zeros((len(ABs), 0, 0), dtype=bool)
    xs = np.array([s[0] for s in sols])
    ys = np.array([s[1] for s in sols])
    if cands is None:
        ps, qs = xs, ys
    else:
        ps = np.array([c[0] for c in cands])
        qs = np.array([c[1] for c in cands])
    f = t[xs, a]                                  # x a per solution
    u = t[ps, a]                                  # p a per candidate
    val = t[:, u].T                               # [i, t] = t (p_i a)
    same = val[:, :, None] == f[None, None, :]
    TP = t[:, ps].T                               # [i, t] = t p_i
    TQ = t[:, qs].T
    A = ABs[:, 0]
    B = ABs[:, 1]
    m = img[TP[None], A[:, None, None]] | img[TQ[None], B[:, None, None]]     # [k, i, t]
    S = img[xs[None], A[:, None]] | img[ys[None], B[:, None]]                 # [k, j]
    ok = (m[:, :, :, None] & ~S[:, None, None, :]) == 0                       # [k, i, t, j]
    cov = (ok & same[None]).any(axis=2)
    return sols, cov


def check_systems_all_subsets(v: MonoidView, a: int, b: int,
                              cands: Sequence[tuple[int, int]]) -> tuple[int, int] | None:
    """First (A, B) for which ``cands`` is not a left co-ordinate system, else None."""
    full = 1 << v.order
    grid = np.array([(A, B) for A in range(full) for B in range(full)], dtype=np.int64)
    for start in range(0, len(grid), 1024):
        chunk = grid[start:start + 1024]
        sols, cov = _coverage_block(v, a, b, chunk, cands)
        if not sols:
            return None
        bad = ~cov.any(axis=1).all(axis=1)
        if bad.any():
            k = int(np.flatnonzero(bad)[0])
            return int(chunk[k][0]), int(chunk[k][1])
    return None


def _instance_min(cov_k: np.ndarray, cap: int | None) -> int | None:
    k = cov_k.shape[1]
    if k == 0:
        return 0
    masks = [int(sum(1 << j for j in np.flatnonzero(row))) for row in cov_k]
    res = min_set_cover((1 << k) - 1, masks, cap)
    return None if res is None else len(res)


def is_n_left_coordinated(v: MonoidView, n: int = 1, exhaustive_upto: int = 5,
                          samples: int | None = None, seed: int = 0,
                          block: int = 1024) -> CoordVerdict:
    """Whether every (a, b, A, B) has a left co-ordinate system of at most n pairs.

    Exhaustive over all a, b and all subsets A, B when the order is at most
    ``exhaustive_upto``; otherwise ``samples`` random instances are drawn
    (seeded) and the verdict is labelled sampled.  Without ``samples`` a large
    order raises :class:`CapacityError`.
    """
    order = v.order
    sampled = order > exhaustive_upto
    if sampled and not samples:
        raise CapacityError(f"order {order} over exhaustive budget {exhaustive_upto}; pass samples")
    rng = random.Random(seed)
    full = 1 << order
    worst, worst_size, failing, count = None, -1, None, 0
    ab_pairs = [(a, b) for a in range(order) for b in range(order)]
    if sampled:
        chosen: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for _ in range(samples):
            a, b = rng.choice(ab_pairs)
            chosen.setdefault((a, b), []).append((rng.randrange(full), rng.randrange(full)))
        jobs = sorted(chosen.items())
    else:
        grid = [(A, B) for A in range(full) for B in range(full)]
        jobs = [(ab, grid) for ab in ab_pairs]
    for (a, b), ABlist in jobs:
        for start in range(0, len(ABlist), block):
            chunk = np.array(ABlist[start:start + block], dtype=np.int64)
            sols, cov = _coverage_block(v, a, b, chunk)
            count += len(chunk)
            if not sols:
                if worst_size < 0:
                    worst, worst_size = (a, b, int(chunk[0][0]), int(chunk[0][1])), 0
                continue
            full_cov = cov.all(axis=2)                    # [k, i]
            single = full_cov.any(axis=1)
            if worst_size < 1 and single.any():
                k = int(np.flatnonzero(single)[0])
                worst, worst_size = (a, b, int(chunk[k][0]), int(chunk[k][1])), 1
            for k in np.flatnonzero(~single):
                size = _instance_min(cov[k], None)
                inst = (a, b, int(chunk[k][0]), int(chunk[k][1]))
                if size is None:
                    size = len(sols) + 1
                if size > worst_size:
                    worst, worst_size = inst, size
                if size > n and failing is None:
                    failing = inst
    return CoordVerdict(failing is None, n, worst, max(worst_size, 0), count, sampled,
                        seed if sampled else None, failing)


# ---------------------------------------------------------------------------
# chain example systems

def chain_system(v: MonoidView, a: int, b: int, top: int = 0) -> tuple[tuple[int, int], ...]:
    """The case-defined system on a chain monoid (product = min, identity = top)."""
    ab = v.product(a, b)
    if a == b:
        return ((top, top),)
    if ab == a:     # a < b
        return ((top, a), (a, a))
    return ((b, top), (b, b))


# ---------------------------------------------------------------------------
# equated-ness

@dataclass
class WeakCoherenceReport:
    right_annihilators: dict[int, tuple[int, int, bool]]   # a -> (lower, upper, exact)
    left_annihilators: dict[int, tuple[int, int, bool]]
    intersections: dict[tuple[int, int], int]               # (a, b) -> #generators of aV ∩ bV
    finitely_right_equated: bool = True
    finitely_left_equated: bool = True
    right_ideal_howson: bool = True
    weakly_right_coherent: bool = True
    predictions: dict = field(default_factory=dict)

    def max_right(self) -> int:
        return max((u for _, u, _ in self.right_annihilators.values()), default=0)

    def max_left(self) -> int:
        return max((u for _, u, _ in self.left_annihilators.values()), default=0)

    def as_dict(self, v: MonoidView | None = None) -> dict:
        lab = (lambda x: v.label(x)) if v is not None else str
        return {
            "right_annihilators": {lab(a): {"lower": lo, "upper": up, "exact": ex}
                                   for a, (lo, up, ex) in self.right_annihilators.items()},
            "left_annihilators": {lab(a): {"lower": lo, "upper": up, "exact": ex}
                                  for a, (lo, up, ex) in self.left_annihilators.items()},
            "max_intersection_generators": max(self.intersections.values(), default=0),
            "finitely_right_equated": self.finitely_right_equated,
            "finitely_left_equated": self.finitely_left_equated,
            "right_ideal_howson": self.right_ideal_howson,
            "weakly_right_coherent": self.weakly_right_coherent,
            "predictions": self.predictions,
        }


def weak_coherence_report(v: MonoidView, elements: Iterable[int] | None = None,
                          cap: int = 2) -> WeakCoherenceReport:
    """Generator counts for every r(a), l(a) and aV ∩ bV on a finite view.

    For a view built by ``expand_S`` it also records whether the singleton
    generators predicted for right abundant and right cancellative bases are
    the minimum (1) wherever the annihilator is not trivial.
    """
    els = list(range(v.order)) if elements is None else list(elements)
    ra, la = {}, {}
    for a in els:
        r = min_generators_congruence(v, right_annihilator(v, a), "right", cap=cap)
        ra[a] = (r.lower, r.upper, r.exact)
        l = min_generators_congruence(v, left_annihilator(v, a), "left", cap=cap)
        la[a] = (l.lower, l.upper, l.exact)
    princ = _principal(v, "right")
    inter = {}
    for a in els:
        for b in els:
            if a <= b:
                c = princ[a] & princ[b]
                inter[(a, b)] = len(ideal_generators(v, c, "right")) if c else 0
    rep = WeakCoherenceReport(ra, la, inter)
    base = getattr(v, "base", None)
    if base is not None and getattr(v, "kind", "") == "S":
        from .relations import classify
        c = classify(base)
        rep.predictions = {
            "base_right_abundant": c.right_abundant,
            "right_annihilators_at_most_1": all(u <= 1 for _, u, _ in ra.values()),
            "base_right_cancellative": c.right_cancellative,
            "left_annihilators_at_most_1": all(u <= 1 for _, u, _ in la.values()),
        }
    return rep
