"""Executable claim suite over catalog and enumerated monoids.

Every check is a manifest entry (:data:`CHECKS`): an id, a one-line claim, a
topic, a universe of monoids and a function that returns ``None`` on success
or a dict describing a failing instance.  Failures are written as a ``.mon``
file plus a JSON instance record that :func:`replay_counterexample` re-runs.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

import numpy as np

from . import __version__, bits, catalog
from .acts import (WSequence, congruence_closure, find_w_sequence, ideal_generated_by,
                   ideal_generators, min_generators_congruence, subact_generated_by,
                   subact_generators, subact_RL)
from .congruence import EqRelation, Kind, closure
from .deciders import (check_systems_all_subsets, chain_system, coordinate_system_check,
                       CoordSystem, howson_report, is_n_left_coordinated,
                       is_principally_ideal_howson, min_coordinate_system)
from .expansion import SView, expand_S, expand_Sz, materialize, retraction
from .monoid import CapacityError, FiniteMonoid, canonical_form, load, save
from .oracles import brute_force_monoids, naive_closure
from .relations import (classify, greens_relations, hat_set, idempotents, is_semilattice,
                        left_annihilator, left_image, preimage_set, principal_left_ideals,
                        principal_right_ideals, relation_Lstar, relation_Ltilde,
                        relation_Rstar, relation_Rtilde, right_annihilator)

DEFAULT_SEED = 0
DEFAULT_SAMPLES = 100
ENUM_COUNTS = {1: 1, 2: 2, 3: 7, 4: 35}


class UnknownCheckError(KeyError):
    pass


# ---------------------------------------------------------------------------
# context and shared data

@dataclass
class SuiteConfig:
    checks: list[str] | None = None
    order_max: int | None = None
    catalog: list[str] | None = None
    seed: int = DEFAULT_SEED
    samples: int = DEFAULT_SAMPLES
    mutate: bool = False
    out_dir: str | None = None
    jobs: int = 1


class Ctx:
    def __init__(self, config: SuiteConfig, check_id: str):
        self.config = config
        self.check_id = check_id
        self.sampled = False
        self._memo: dict = {}

    def rng(self, m: FiniteMonoid) -> random.Random:
        h = hashlib.sha256(f"{self.config.seed}:{self.check_id}:".encode() + m.table.tobytes())
        return random.Random(int.from_bytes(h.digest()[:8], "big"))

    def S(self, m: FiniteMonoid) -> SView:
        key = ("S", m.table.tobytes(), self.config.mutate)
        if key not in self._memo:
            self._memo[key] = _CorruptedS(m) if self.config.mutate else expand_S(m)
        return self._memo[key]

    def memo(self, m, name, fn):
        key = (name, m.table.tobytes(), self.config.mutate)
        if key not in self._memo:
            self._memo[key] = fn()
        return self._memo[key]


class _CorruptedS(SView):
    """S(M) with one product entry broken: the first non-idempotent squares to itself."""

    def _build_table(self):
        t = super()._build_table().copy()
        for x in range(self.order):
            if t[x, x] != x:
                t[x, x] = x
                break
        return t

    def product(self, x, y):
        return int(self.table[x, y])


def _lab(v, x) -> str:
    return v.label(x)


def _pre(m: FiniteMonoid, a: int, A: int) -> int:
    return preimage_set(m, a, A)


def _right_canc(m) -> bool:
    return all(len(set(c)) == m.order for c in m.cols)


def _left_canc(m) -> bool:
    return all(len(set(r)) == m.order for r in m.rows)


def _is_group(m) -> bool:
    return _left_canc(m) and _right_canc(m)


def _rel_diff(r1: EqRelation, r2: EqRelation, v) -> dict | None:
    if r1 == r2:
        return None
    for x in range(len(r1)):
        for y in range(len(r1)):
            if r1.related(x, y) != r2.related(x, y):
                return {"x": _lab(v, x), "y": _lab(v, y), "computed": r1.related(x, y),
                        "expected": r2.related(x, y)}
    return {"message": "relations differ"}


# ---------------------------------------------------------------------------
# idempotents, regularity, inclusions

def chk_sreg1(m, ctx):
    s = ctx.S(m)
    n = m.order
    E = idempotents(s)
    expected = 0
    for A in range(1 << n):
        for e in bits.iter_members(hat_set(m, A)):
            expected |= 1 << s.encode(A, e)
    if E != expected:
        x = bits.members(E ^ expected)[0]
        return {"element": _lab(s, x), "computed_idempotent": bool((E >> x) & 1)}
    unipotent = bits.size(idempotents(m)) == 1
    if is_semilattice(s, E) != unipotent:
        return {"semilattice": not unipotent, "unipotent": unipotent}
    if not is_semilattice(s, s.script_e()):
        return {"message": "{(A,1)} is not a semilattice"}
    return None


def chk_sreg2(m, ctx):
    s = ctx.S(m)
    rep = classify(s)
    group = _is_group(m)
    if rep.regular != group:
        return {"regular": rep.regular, "group": group}
    if group and not (rep.inverse and rep.proper_inverse):
        return {"inverse": rep.inverse, "proper_inverse": rep.proper_inverse}
    return None


def chk_incl1(m, ctx):
    princ = principal_right_ideals(m)
    for a in range(m.order):
        for X in range(1 << m.order):
            if left_image(m, a, _pre(m, a, X)) != princ[a] & X:
                return {"a": m.label(a), "X": X}
    return None


def chk_incl2(m, ctx):
    always = True
    for a in range(m.order):
        for X in range(1 << m.order):
            back = _pre(m, a, left_image(m, a, X))
            if not bits.is_subset(X, back):
                return {"a": m.label(a), "X": X, "message": "X not inside a^-1(aX)"}
            always &= back == X
    if always != _left_canc(m):
        return {"equality_everywhere": always, "left_cancellative": _left_canc(m)}
    return None


def chk_incl3(m, ctx):
    always = all(left_image(m, a, _pre(m, a, X)) == X
                 for a in range(m.order) for X in range(1 << m.order))
    if always != _is_group(m):
        return {"equality_everywhere": always, "group": _is_group(m)}
    return None


# ---------------------------------------------------------------------------
# starred and tilde relations on S(M)

def _s_keys(m, s, fn):
    return EqRelation.from_keys(fn(*s.decode(x)) for x in range(s.order))


def chk_rrel1(m, ctx):
    s = ctx.S(m)
    rs = relation_Rstar(m)
    return _rel_diff(relation_Rstar(s), _s_keys(m, s, lambda A, a: (A, rs.labels[a])), s)


def chk_rrel2(m, ctx):
    s = ctx.S(m)
    EM = bits.members(idempotents(m))

    def key(A, a):
        hat = hat_set(m, A)
        return A, tuple(e for e in EM if (hat >> e) & 1 and m.product(e, a) == a)
    return _rel_diff(relation_Rtilde(s, idempotents(s)), _s_keys(m, s, key), s)


def chk_rrel3(m, ctx):
    s = ctx.S(m)
    return _rel_diff(relation_Rtilde(s, s.script_e()), _s_keys(m, s, lambda A, a: A), s)


def chk_rrel4(m, ctx):
    s = ctx.S(m)
    same = relation_Rstar(s) == relation_Rtilde(s, s.script_e())
    if same != _right_canc(m):
        return {"Rstar_equals_Rtilde": same, "right_cancellative": _right_canc(m)}
    return None


def chk_rrel5(m, ctx):
    s = ctx.S(m)
    rs = relation_Rstar(m)
    predicted = all(any(rs.related(a, e) for e in bits.iter_members(hat_set(m, A)))
                    for A in range(1 << m.order) for a in range(m.order))
    got = classify(s).left_abundant
    if got != predicted:
        return {"left_abundant": got, "predicted": predicted}
    return None


def chk_rrel6(m, ctx):
    s = ctx.S(m)
    rep = classify(s, s.script_e())
    rc = _right_canc(m)
    if not (rep.left_ehresmann and rep.left_restriction and rep.proper_left_restriction):
        return {"left_ehresmann": rep.left_ehresmann, "left_restriction": rep.left_restriction,
                "proper_left_restriction": rep.proper_left_restriction}
    if rep.left_ample != rc or rep.proper_left_ample != rc:
        return {"left_ample": rep.left_ample, "proper_left_ample": rep.proper_left_ample,
                "right_cancellative": rc}
    return None


def chk_lrel1(m, ctx):
    s = ctx.S(m)
    lt = relation_Ltilde(m, idempotents(m))
    return _rel_diff(relation_Ltilde(s, idempotents(s)),
                     _s_keys(m, s, lambda A, a: (_pre(m, a, A), lt.labels[a])), s)


def chk_lrel2(m, ctx):
    s = ctx.S(m)
    ls = relation_Lstar(m)
    return _rel_diff(relation_Lstar(s), _s_keys(m, s, lambda A, a: (_pre(m, a, A), ls.labels[a])), s)


def chk_lrel3(m, ctx):
    s = ctx.S(m)
    return _rel_diff(relation_Ltilde(s, s.script_e()), _s_keys(m, s, lambda A, a: _pre(m, a, A)), s)


def chk_lrel4(m, ctx):
    s = ctx.S(m)
    same = relation_Lstar(s) == relation_Ltilde(s, s.script_e())
    if same != _left_canc(m):
        return {"Lstar_equals_Ltilde": same, "left_cancellative": _left_canc(m)}
    return None


def chk_lrel5(m, ctx):
    got, base = classify(ctx.S(m)).right_abundant, classify(m).right_abundant
    if got != base:
        return {"S_right_abundant": got, "M_right_abundant": base}
    return None


def chk_lrel6(m, ctx):
    s = ctx.S(m)
    script = s.script_e()
    lt = relation_Ltilde(s, script)
    for c in lt.classes():
        k = sum(1 for x in c if (script >> x) & 1)
        if k != 1:
            return {"class_of": _lab(s, c[0]), "E_members": k}
    rep = classify(s, script)
    lc = _left_canc(m)
    if rep.right_ehresmann != lc or rep.right_adequate != lc:
        return {"right_ehresmann": rep.right_ehresmann, "right_adequate": rep.right_adequate,
                "left_cancellative": lc}
    if lc and idempotents(s) != script:
        return {"message": "left cancellative base but E(S) != {(A,1)}"}
    return None


def chk_lrel7(m, ctx):
    s = ctx.S(m)
    g = _is_group(m)
    full = bool(classify(s).right_ample)
    script = bool(classify(s, s.script_e()).right_ample)
    if full != g or script != g:
        return {"right_ample": full, "right_ample_wrt_script_E": script, "group": g}
    return None


# ---------------------------------------------------------------------------
# R((M,1),(M,1)) and L((M,1),(M,1))

def chk_finite_r(m, ctx):
    s = ctx.S(m)
    n = m.order
    top = s.encode(bits.full(n), 0)
    got = subact_RL(s, top, top, "right")
    want = {(s.encode(D, d), s.encode(E, d)) for d in range(n)
            for D in range(1 << n) for E in range(1 << n)}
    if got != want:
        p = sorted(got ^ want)[0]
        return {"pair": [_lab(s, p[0]), _lab(s, p[1])], "in_computed": p in got}
    return None


def chk_finite_l(m, ctx):
    s = ctx.S(m)
    n = m.order
    top = s.encode(bits.full(n), 0)
    got = subact_RL(s, top, top, "left")
    princ = principal_right_ideals(m)
    want = {(s.encode(D, d), s.encode(E, d)) for d in range(n)
            for D in range(1 << n) for E in range(1 << n) if D | princ[d] == E | princ[d]}
    if got != want:
        p = sorted(got ^ want)[0]
        return {"pair": [_lab(s, p[0]), _lab(s, p[1])], "in_computed": p in got}
    return None


def finite_r_generator_counts(orders=range(2, 6)) -> dict[int, int]:
    out = {}
    for k in orders:
        m = catalog.make_chain_semilattice(k)
        s = expand_S(m)
        top = s.encode(bits.full(k), 0)
        R = subact_RL(s, top, top, "right")
        out[k] = len(subact_generators(s, R, "right"))
    return out


def chk_finite_r_gens(ctx):
    counts = finite_r_generator_counts()
    ks = sorted(counts)
    for k1, k2 in zip(ks, ks[1:]):
        if counts[k2] < counts[k1]:
            return {"counts": counts, "decrease_at": k2}
    return None


# ---------------------------------------------------------------------------
# right ideal Howson

def chk_srih_principal(m, ctx):
    s = ctx.S(m)
    got, wit = is_principally_ideal_howson(s, "right")
    base, bwit = is_principally_ideal_howson(m, "right")
    if got != base:
        return {"S_principal": got, "M_principal": base,
                "S_witness": None if wit is None else [_lab(s, x) for x in wit]}
    for side in ("right", "left"):
        if not howson_report(m, side).implication_chain_holds():
            return {"message": f"{side} implication chain broken"}
    return None


def _k_instance(m, s, princM, princS, principal_base, A, a, B, b):
    x, y = s.encode(A, a), s.encode(B, b)
    I = princS[x] & princS[y]
    inter = princM[a] & princM[b]
    necessary = bool(inter) and bits.is_subset(B & ~A, princM[a]) and bits.is_subset(A & ~B, princM[b])
    if bool(I) != necessary:
        return {"A": A, "a": m.label(a), "B": B, "b": m.label(b),
                "message": "non-emptiness of the intersection not as predicted"}
    if not I:
        return None
    us = ideal_generators(m, inter, "right")
    K = set()
    for u in us:
        Li = inter & ~princM[u]
        for C in bits.submasks(Li):
            K.add(s.encode(A | B | C, u))
    kmask = bits.mask(K)
    if not bits.is_subset(kmask, I) or ideal_generated_by(s, K, "right") != I:
        return {"A": A, "a": m.label(a), "B": B, "b": m.label(b), "message": "K does not generate"}
    if principal_base and len(us) == 1 and princS[s.encode(A | B, us[0])] != I:
        return {"A": A, "a": m.label(a), "B": B, "b": m.label(b),
                "message": "intersection not generated by (A∪B, u)"}
    return None


def chk_srih_k(m, ctx):
    s = ctx.S(m)
    n = m.order
    princM, princS = principal_right_ideals(m), principal_right_ideals(s)
    pb = is_principally_ideal_howson(m, "right")[0]
    if n <= 3:
        inst = ((A, a, B, b) for A in range(1 << n) for a in range(n)
                for B in range(1 << n) for b in range(n))
    else:
        ctx.sampled = True
        rng = ctx.rng(m)
        inst = [(rng.randrange(1 << n), rng.randrange(n), rng.randrange(1 << n), rng.randrange(n))
                for _ in range(ctx.config.samples)]
    for A, a, B, b in inst:
        bad = _k_instance(m, s, princM, princS, pb, A, a, B, b)
        if bad:
            return bad
    return None


# ---------------------------------------------------------------------------
# left co-ordinate systems and left ideal Howson

def chk_lcoord_principal(m, ctx):
    s = ctx.S(m)
    got, wit = is_principally_ideal_howson(s, "left")
    cv = is_n_left_coordinated(m, 1, exhaustive_upto=5, samples=ctx.config.samples, seed=ctx.config.seed)
    ctx.sampled |= cv.sampled
    if got != cv.holds:
        return {"S_principally_left": got, "M_1_coordinated": cv.holds,
                "coordinate_failure": cv.as_dict(m)["failing"]}
    return None


def _solve_left(m, u, a, A, U):
    for x in range(m.order):
        if m.product(x, a) == u and bits.is_subset(left_image(m, x, A), U):
            return x
    return None


def chk_lcoord_d(m, ctx):
    s = ctx.S(m)
    n = m.order
    princSL = principal_left_ideals(s)
    princML = principal_left_ideals(m)
    for a in range(n):
        for b in range(n):
            for A in range(1 << n):
                for B in range(1 << n):
                    x, y = s.encode(A, a), s.encode(B, b)
                    J = princSL[x] & princSL[y]
                    res = min_coordinate_system(m, a, b, A, B, cap_n=None)
                    inst = {"a": m.label(a), "b": m.label(b), "A": A, "B": B}
                    if bool(J) != bool(res.pairs):
                        return {**inst, "message": "J empty iff L(a,b) empty fails"}
                    if not J:
                        continue
                    D = {s.encode(left_image(m, p, A) | left_image(m, q, B), m.product(p, a))
                         for p, q in res.pairs}
                    if len(D) > len(res.pairs) or not bits.is_subset(bits.mask(D), J) \
                            or ideal_generated_by(s, D, "left") != J:
                        return {**inst, "message": "D does not generate S(A,a) ∩ S(B,b)"}
                    # {pa : (p,q) ∈ C} generates Ma ∩ Mb
                    pa = {m.product(p, a) for p, _ in res.pairs}
                    if ideal_generated_by(m, pa, "left") != princML[a] & princML[b]:
                        return {**inst, "message": "{pa} does not generate Ma ∩ Mb"}
                    # converse: a generating set of J yields a co-ordinate system
                    C = []
                    for g in ideal_generators(s, J, "left"):
                        U, u = s.decode(g)
                        p, q = _solve_left(m, u, a, A, U), _solve_left(m, u, b, B, U)
                        if p is None or q is None:
                            return {**inst, "message": f"generator {s.label(g)} has no (p,q)"}
                        C.append((p, q))
                    ok, bad = coordinate_system_check(m, CoordSystem(a, b, A, B, tuple(C)))
                    if not ok:
                        return {**inst, "message": "pairs from generators of J fail", "uncovered": bad}
    return None


def chk_lcoord_empty(m, ctx):
    princ = principal_left_ideals(m)
    for a in range(m.order):
        for b in range(m.order):
            inter = princ[a] & princ[b]
            want = len(ideal_generators(m, inter, "left")) if inter else 0
            got = min_coordinate_system(m, a, b, 0, 0, cap_n=None).size
            if got != want:
                return {"a": m.label(a), "b": m.label(b), "min_system": got, "generators": want}
    return None


def chk_lcoord_cancel(m, ctx):
    princ = principal_left_ideals(m)
    for a in range(m.order):
        for b in range(m.order):
            inter = princ[a] & princ[b]
            if not inter:
                continue
            C = []
            for g in ideal_generators(m, inter, "left"):
                p = [x for x in range(m.order) if m.product(x, a) == g]
                q = [y for y in range(m.order) if m.product(y, b) == g]
                C.append((p[0], q[0]))
            L = subact_RL(m, a, b, "left")
            if subact_generated_by(m, C, "left") != set(L):
                return {"a": m.label(a), "b": m.label(b), "message": "C does not generate L(a,b)"}
    cv = is_n_left_coordinated(m, 1, samples=ctx.config.samples, seed=ctx.config.seed)
    ctx.sampled |= cv.sampled
    if not cv.holds:
        return {"message": "group-like monoid not 1-co-ordinated", "failing": cv.as_dict(m)["failing"]}
    return None


def chk_chain_coord(m, ctx):
    for a in range(m.order):
        for b in range(m.order):
            bad = check_systems_all_subsets(m, a, b, chain_system(m, a, b))
            if bad is not None:
                return {"a": m.label(a), "b": m.label(b), "A": bad[0], "B": bad[1]}
    return None


def diamond_stack_sizes(ks=(0, 1, 2)) -> dict[int, int]:
    out = {}
    for k in ks:
        m = catalog.make_diamond_stack(k)
        labs = m.labels()
        a, b = labs.index("E_0"), labs.index("F_0")
        res = min_coordinate_system(m, a, b, 1, 1, cap_n=None)
        out[k] = res.size
    return out


def chk_dstack(ctx):
    sizes = diamond_stack_sizes()
    ks = sorted(sizes)
    if any(sizes[k2] <= sizes[k1] for k1, k2 in zip(ks, ks[1:])):
        return {"sizes": sizes}
    return None


# ---------------------------------------------------------------------------
# annihilators, W-sequences, skeletons

def _first_Lstar_idempotent(m, a) -> int | None:
    ls = relation_Lstar(m)
    for e in bits.iter_members(idempotents(m)):
        if ls.related(a, e):
            return e
    return None


def _row_constant_on_classes(row, rel: EqRelation) -> bool:
    return all(row[x] == row[r] for x, r in enumerate(rel.labels))


def chk_fre_rabund(m, ctx):
    s = ctx.S(m)
    n = m.order
    small = s.order <= 24
    for x in range(s.order):
        A, a = s.decode(x)
        e = _first_Lstar_idempotent(m, a)
        if e is None:
            return {"a": m.label(a), "message": "no idempotent L*-related to a"}
        g = s.encode(_pre(m, a, A), e)
        r = right_annihilator(s, x)
        if closure(s, [(0, g)], "right") != r:
            return {"element": s.label(x), "message": "singleton does not generate r((A,a))"}
        # the fixed two-step sequence (∅,1) -> g -> (∅,1) joins every y to its class root
        if not _row_constant_on_classes(s.rows[g], r):
            return {"element": s.label(x), "message": "length-2 sequence fails to replay"}
        skel = None
        for y in range(s.order):
            root = r.labels[y]
            ws = WSequence(y, root, ((0, g, y), (g, 0, root)), "right")
            if not ws.replay(s, [(0, g)]):
                return {"element": s.label(x), "pair": [s.label(y), s.label(root)]}
            skel = skel or ws.skeleton()
            if ws.skeleton() != skel:
                return {"element": s.label(x), "message": "skeletons differ"}
            if small and y != root:
                bfs = find_w_sequence(s, [(0, g)], "right", y, root)
                if bfs is None or len(bfs) > 2 or not bfs.replay(s, [(0, g)]):
                    return {"element": s.label(x), "pair": [s.label(y), s.label(root)],
                            "message": "shortest witness longer than 2"}
    return None


def chk_rcanc(m, ctx):
    s = ctx.S(m)
    small = s.order <= 24
    for x in range(s.order):
        A, a = s.decode(x)
        g = s.encode(A, 0)
        l = left_annihilator(s, x)
        if closure(s, [(g, 0)], "left") != l:
            return {"element": s.label(x), "message": "singleton does not generate l((A,a))"}
        if not _row_constant_on_classes(s.cols[g], l):
            return {"element": s.label(x), "message": "length-2 sequence fails to replay"}
        for y in range(s.order):
            root = l.labels[y]
            ws = WSequence(y, root, ((0, g, y), (g, 0, root)), "left")
            if not ws.replay(s, [(g, 0)]):
                return {"element": s.label(x), "pair": [s.label(y), s.label(root)]}
            if small and y != root:
                bfs = find_w_sequence(s, [(g, 0)], "left", y, root)
                if bfs is None or len(bfs) > 2:
                    return {"element": s.label(x), "message": "shortest witness longer than 2"}
    return None


def skeleton_statistics(v, W, side, rel: EqRelation) -> dict:
    """Lengths and distinct skeletons of shortest witnesses for every related pair."""
    lengths: dict[int, int] = {}
    skels = set()
    for c in rel.classes():
        for i, x in enumerate(c):
            for y in c[i + 1:]:
                ws = find_w_sequence(v, W, side, x, y)
                lengths[len(ws)] = lengths.get(len(ws), 0) + 1
                skels.add(tuple(ws.skeleton()))
    return {"lengths": lengths, "skeletons": len(skels)}


def chk_skeleton(m, ctx):
    s = ctx.S(m)
    for x in range(s.order):
        A, a = s.decode(x)
        e = _first_Lstar_idempotent(m, a)
        if e is not None:
            W = [(0, s.encode(_pre(m, a, A), e))]
            st = skeleton_statistics(s, W, "right", right_annihilator(s, x))
            if max(st["lengths"], default=0) > 2:
                return {"element": s.label(x), "side": "right", **st}
        if _right_canc(m):
            W = [(s.encode(A, 0), 0)]
            st = skeleton_statistics(s, W, "left", left_annihilator(s, x))
            if max(st["lengths"], default=0) > 2:
                return {"element": s.label(x), "side": "left", **st}
    return None


def chk_easyseq(m, ctx):
    s = ctx.S(m)
    n = m.order
    for x in range(s.order):
        A, a = s.decode(x)
        P = _pre(m, a, A)
        X = min_generators_congruence(m, right_annihilator(m, a), "right").generators
        gP1, gP = s.encode(P, 0), lambda p: s.encode(P, p)
        Y = [(0, gP1), (gP1, 0)] + [(gP(p), gP(q)) for p, q in X]
        r = right_annihilator(s, x)
        cl = closure(s, Y, "right")
        for U in bits.submasks(P):
            for V in bits.submasks(P):
                for u in range(n):
                    for v in range(n):
                        y1, y2 = s.encode(U, u), s.encode(V, v)
                        if not r.related(y1, y2):
                            continue
                        if not cl.related(y1, y2):
                            return {"element": s.label(x), "pair": [s.label(y1), s.label(y2)]}
                        xs = find_w_sequence(m, X, "right", u, v)
                        steps = [(0, gP1, y1)]
                        steps += [(gP(p), gP(q), s.encode(0, t)) for p, q, t in xs.steps]
                        steps.append((gP1, 0, y2))
                        ws = WSequence(y1, y2, tuple(steps), "right")
                        if not ws.replay(s, Y):
                            return {"element": s.label(x), "pair": [s.label(y1), s.label(y2)],
                                    "message": "displayed Y-sequence does not replay"}
    return None


# ---------------------------------------------------------------------------
# Fountain construction and the presented semilattice

def _fountain_group(m) -> FiniteMonoid:
    k = (m.order - 2) // 3
    return catalog.make_cyclic_group(k)


def chk_fountain_r(m, ctx):
    G = _fountain_group(m)
    if catalog.make_fountain(G) != m:
        return {"message": "not a Fountain construction over a cyclic group"}
    k = G.order
    f = lambda p, h=0: catalog.fountain_x_element(G, p, h)
    gens = catalog.fountain_annihilator_generators(G)
    for g in range(k):
        if not right_annihilator(m, g).is_identity():
            return {"element": m.label(g), "message": "r(g) not trivial"}
        for key, elem in (("x", f(1, g)), ("xx", f(2, g))):
            r = right_annihilator(m, elem)
            if closure(m, gens[key], "right") != r:
                return {"element": m.label(elem), "generators": key}
    for key, elem in (("x3", f(3)), ("x4", f(4))):
        if closure(m, gens[key], "right") != right_annihilator(m, elem):
            return {"element": m.label(elem), "generators": key}
    return None


def chk_fountain_shadow(m, ctx):
    G = _fountain_group(m)
    k = G.order
    x = catalog.fountain_x_element(G, 1)
    x3 = catalog.fountain_x_element(G, 3)
    for p in range(k):          # the right invertible elements are exactly G
        for q in range(m.order):
            if m.product(x, p) == m.product(x, q) and p != q:
                return {"p": m.label(p), "q": m.label(q)}
    if k >= 2:
        xx = [catalog.fountain_x_element(G, 2, h) for h in range(k)]
        if not all(m.product(x, u) == x3 for u in xx):
            return {"message": "x·x²G is not x³"}
    return None


def chk_labund_shadow(m, ctx):
    labs = m.labels()
    k = sum(1 for l in labs if l.startswith("{b") and "," not in l)
    a = catalog.presented_semilattice_element(m, "a")
    princ = principal_right_ideals(m)
    for i in range(1, k + 1):
        b = catalog.presented_semilattice_element(m, f"b{i}")
        c = catalog.presented_semilattice_element(m, f"c{i}")
        if b == c or m.product(b, a) != m.product(c, a):
            return {"i": i, "message": "(b_i, c_i) not a distinct pair of l(a)"}
        for x in range(m.order):
            for y in range(m.order):
                if m.product(x, y) == b and not {x, y} <= {0, b}:
                    return {"i": i, "message": "b_i decomposes", "x": labs[x], "y": labs[y]}
        if (princ[b] >> c) & 1:
            return {"i": i, "message": "c_i lies in b_i M"}
    return None


# ---------------------------------------------------------------------------
# background relations

def chk_lstar_contains(m, ctx):
    for v in (m,) + ((ctx.S(m),) if m.order <= 3 else ()):
        g = greens_relations(v)
        E = idempotents(v)
        ls, rs = relation_Lstar(v), relation_Rstar(v)
        lt, rt = relation_Ltilde(v, E), relation_Rtilde(v, E)
        if not (g.L <= ls <= lt and g.R <= rs <= rt):
            return {"view": v.kind if hasattr(v, "kind") else "M", "message": "inclusion chain broken"}
        if not ls.is_right_congruence(v) or not rs.is_left_congruence(v):
            return {"message": "L* / R* not one-sided congruences"}
        for a in range(v.order):
            r = right_annihilator(v, a)
            if not r.is_right_congruence(v) or closure(v, r.pairs(), "right") != r:
                return {"a": v.label(a), "message": "r(a) not closed"}
    return None


def chk_regular_ltilde(m, ctx):
    for v in (m,) + ((ctx.S(m),) if _is_group(m) else ()):
        rep = classify(v)
        if rep.regular:
            g = greens_relations(v)
            E = idempotents(v)
            if relation_Ltilde(v, E) != g.L or relation_Rtilde(v, E) != g.R:
                return {"message": "regular but tilde relations differ from Green's"}
    return None


def _sub_semilattices(m) -> Iterator[int]:
    EM = bits.members(idempotents(m))
    others = [e for e in EM if e != 0]
    if len(others) > 8:
        return
    for r in range(1 << len(others)):
        E = [0] + [e for i, e in enumerate(others) if (r >> i) & 1]
        Es = set(E)
        if all(m.product(e, f) == m.product(f, e) and m.product(e, f) in Es for e in E for f in E):
            yield bits.mask(E)


def chk_ample_e(m, ctx):
    EM = idempotents(m)
    for E in _sub_semilattices(m):
        rep = classify(m, E)
        if (rep.right_ample or rep.left_ample) and E != EM:
            return {"E": bits.members(E), "right_ample": rep.right_ample, "left_ample": rep.left_ample}
    return None


def chk_sz_closure(m, ctx):
    z = expand_Sz(m)
    n = m.order
    want = sum(1 << (n - bits.size(1 | (1 << a))) for a in range(n))
    if z.order != want:
        return {"order": z.order, "expected": want}
    if z.decode(z.identity) != (1, 0):
        return {"message": "identity is not ({1},1)"}
    materialize(z)      # raises on non-closure or non-associativity
    retraction(z)
    return None


def chk_retraction(m, ctx):
    retraction(ctx.S(m))
    return None


def chk_lcm_group(m, ctx):
    s = ctx.S(m)
    for x in range(s.order):
        A, a = s.decode(x)
        if closure(s, [(0, s.encode(_pre(m, a, A), 0))], "right") != right_annihilator(s, x):
            return {"element": s.label(x), "side": "right"}
        if closure(s, [(s.encode(A, 0), 0)], "left") != left_annihilator(s, x):
            return {"element": s.label(x), "side": "left"}
    for side in ("right", "left"):
        if not is_principally_ideal_howson(s, side)[0]:
            return {"side": side, "message": "S(M) not principally ideal Howson"}
    return None


# ---------------------------------------------------------------------------
# closure and witnesses

def _closure_views(m, ctx):
    yield "M", m
    if m.order <= 5:
        yield "S", ctx.S(m)


def chk_closure_oracle(m, ctx):
    for kind, v in _closure_views(m, ctx):
        rng = ctx.rng(m)
        for _ in range(100):
            W = [(rng.randrange(v.order), rng.randrange(v.order)) for _ in range(rng.randint(0, 3))]
            side = rng.choice(["right", "left", "two-sided"])
            if congruence_closure(v, W, side) != naive_closure(v, W, side):
                return {"view": kind, "W": W, "side": side}
    return None


def chk_wseq(m, ctx):
    for kind, v in _closure_views(m, ctx):
        if v.order > 64:
            continue
        rng = ctx.rng(m)
        for _ in range(20):
            W = [(rng.randrange(v.order), rng.randrange(v.order)) for _ in range(rng.randint(1, 2))]
            side = rng.choice(["right", "left"])
            rel = congruence_closure(v, W, side)
            for _ in range(10):
                a, b = rng.randrange(v.order), rng.randrange(v.order)
                ws = find_w_sequence(v, W, side, a, b)
                if (ws is not None) != rel.related(a, b):
                    return {"view": kind, "W": W, "side": side, "a": a, "b": b,
                            "message": "witness existence disagrees with closure"}
                if ws is not None and not ws.replay(v, W):
                    return {"view": kind, "W": W, "side": side, "a": a, "b": b,
                            "message": "witness does not replay"}
    return None


def chk_enum_complete(ctx):
    for n in (1, 2, 3):
        enum = sorted(canonical_form(m) for m in catalog.enumerated_list(n))
        if enum != brute_force_monoids(n):
            return {"order": n, "enumerated": len(enum)}
    hi = min(4, ctx.config.order_max or 4)
    for n in range(1, hi + 1):
        if len(catalog.enumerated_list(n)) != ENUM_COUNTS[n]:
            return {"order": n, "count": len(catalog.enumerated_list(n)), "expected": ENUM_COUNTS[n]}
    return None


# ---------------------------------------------------------------------------
# manifest

FILTERS: dict[str, Callable[[FiniteMonoid], bool]] = {
    "group": _is_group,
    "right_cancellative": _right_canc,
    "right_abundant": lambda m: classify(m).right_abundant,
}


@dataclass(frozen=True)
class Universe:
    enum_max: int = 0
    catalog_max: int = 0
    names: tuple[str, ...] = ()
    where: str | None = None

    def describe(self) -> str:
        parts = []
        if self.enum_max:
            parts.append(f"enumerated order <= {self.enum_max}")
        if self.catalog_max:
            parts.append(f"catalog order <= {self.catalog_max}")
        if self.names:
            parts.append("catalog " + ", ".join(self.names))
        if self.where:
            parts.append(f"where {self.where}")
        return "; ".join(parts) or "global"

    def members(self, config: SuiteConfig) -> list[tuple[str, FiniteMonoid]]:
        cap = config.order_max
        keep = FILTERS.get(self.where) if self.where else None
        ok = lambda m: (cap is None or m.order <= cap) and (keep is None or keep(m))
        out: list[tuple[str, FiniteMonoid]] = []
        if config.catalog:
            limit = max(self.enum_max, self.catalog_max)
            for nm in config.catalog:
                e = catalog.get(nm)
                if (e.key in self.names or e.order <= limit) and ok(e.monoid):
                    out.append((e.key, e.monoid))
            return out
        emax = self.enum_max if cap is None else min(self.enum_max, cap)
        out += [(nm, m) for nm, m in catalog.enumerated(range(1, emax + 1)) if ok(m)]
        if self.catalog_max:
            out += [(e.key, e.monoid) for e in catalog.entries(self.catalog_max) if ok(e.monoid)]
        seen = {k for k, _ in out}
        for nm in self.names:
            e = catalog.get(nm)
            if e.key not in seen and ok(e.monoid):
                out.append((e.key, e.monoid))
        return out


@dataclass(frozen=True)
class Check:
    id: str
    claim: str
    topic: str
    universe: Universe
    fn: Callable
    policy: str = "exhaustive"
    per_monoid: bool = True

    def manifest_entry(self) -> dict:
        return {"id": self.id, "claim": self.claim, "topic": self.topic,
                "universe": self.universe.describe(), "policy": self.policy}


U = Universe
CHECKS: list[Check] = [
    Check("SREG-1", "E(S(M)) = {(A,e): e in hat(A)}; it is a semilattice iff M is unipotent; {(A,1)} is a semilattice",
          "idempotents of S(M)", U(4, 8), chk_sreg1),
    Check("SREG-2", "S(M) regular iff M a group; for groups S(M) is proper inverse",
          "regularity of S(M)", U(4, 0, ("cyclic(2)", "cyclic(3)", "cyclic(4)", "z2xz2", "symmetric(3)")),
          chk_sreg2),
    Check("INCL-1", "a(a^-1 X) = aM ∩ X", "preimage inclusions", U(4, 8), chk_incl1),
    Check("INCL-2", "X ⊆ a^-1(aX), with equality everywhere iff M left cancellative",
          "preimage inclusions", U(4, 8), chk_incl2),
    Check("INCL-3", "a(a^-1 X) = X everywhere iff M a group", "preimage inclusions", U(4, 8), chk_incl3),
    Check("RREL-1", "(A,a) R* (B,b) iff A = B and a R* b", "R-side relations on S(M)", U(3, 5), chk_rrel1),
    Check("RREL-2", "(A,a) ~R (B,b) iff A = B and a ~R_hat(A) b", "R-side relations on S(M)", U(3, 5), chk_rrel2),
    Check("RREL-3", "(A,a) ~R_E (B,b) iff A = B, E = {(F,1)}", "R-side relations on S(M)", U(3, 5), chk_rrel3),
    Check("RREL-4", "R* = ~R_E on S(M) iff M right cancellative", "R-side relations on S(M)", U(3, 5), chk_rrel4),
    Check("RREL-5", "S(M) left abundant iff every (A,a) has e in hat(A) with a R* e",
          "R-side relations on S(M)", U(3, 5), chk_rrel5),
    Check("RREL-6", "S(M) proper left E-restriction always; left E-ample iff M right cancellative",
          "R-side relations on S(M)", U(3, 5), chk_rrel6),
    Check("LREL-1", "(A,a) ~L (B,b) iff a^-1A = b^-1B and a ~L b", "L-side relations on S(M)", U(3, 5), chk_lrel1),
    Check("LREL-2", "(A,a) L* (B,b) iff a^-1A = b^-1B and a L* b", "L-side relations on S(M)", U(3, 5), chk_lrel2),
    Check("LREL-3", "(A,a) ~L_E (B,b) iff a^-1A = b^-1B", "L-side relations on S(M)", U(3, 5), chk_lrel3),
    Check("LREL-4", "L* = ~L_E on S(M) iff M left cancellative", "L-side relations on S(M)", U(3, 5), chk_lrel4),
    Check("LREL-5", "S(M) right abundant iff M right abundant", "L-side relations on S(M)", U(3, 5), chk_lrel5),
    Check("LREL-6", "one E-element per ~L_E class; right E-Ehresmann iff right E-adequate iff M left cancellative",
          "L-side relations on S(M)", U(3, 5), chk_lrel6),
    Check("LREL-7", "S(M) right ample iff M a group", "L-side relations on S(M)", U(3, 5), chk_lrel7),
    Check("FINITE-R", "R((M,1),(M,1)) = {((D,d),(E,d))}", "subacts at (M,1)", U(4, 4), chk_finite_r),
    Check("FINITE-L", "L((M,1),(M,1)) = {((D,d),(E,d)): D ∪ dM = E ∪ dM}", "subacts at (M,1)", U(4, 4),
          chk_finite_l),
    Check("FINITE-R-GENS", "least generator count of R((M,1),(M,1)) is non-decreasing along chains of order 2..5",
          "subacts at (M,1)", U(), chk_finite_r_gens, per_monoid=False),
    Check("SRIH-PRINCIPAL", "S(M) principally right ideal Howson iff M is; principal => strong => plain",
          "right ideal Howson", U(4, 5), chk_srih_principal),
    Check("SRIH-K", "K = {(A∪B∪C, u_i): C ⊆ L_i} generates (A,a)S ∩ (B,b)S",
          "right ideal Howson", U(4, 5), chk_srih_k, policy="exhaustive <= 3, sampled 4-5"),
    Check("LCOORD-PRINCIPAL", "S(M) principally left ideal Howson iff M left 1-co-ordinated",
          "left co-ordinate systems", U(4, 4), chk_lcoord_principal),
    Check("LCOORD-D", "D = {(pA ∪ qB, pa)} generates S(A,a) ∩ S(B,b) with |D| <= |C|, and conversely",
          "left co-ordinate systems", U(3, 3), chk_lcoord_d),
    Check("LCOORD-EMPTY", "least system for (a,b,∅,∅) has the size of a least generating set of Ma ∩ Mb",
          "left co-ordinate systems", U(4, 6), chk_lcoord_empty),
    Check("LCOORD-CANCEL", "unique solutions: generators of Ma ∩ Mb give generators of L(a,b)",
          "left co-ordinate systems", U(4, 6, (), "right_cancellative"), chk_lcoord_cancel),
    Check("CHAIN-COORD", "the case-defined chain systems are left co-ordinate systems for all (a,b,A,B)",
          "chain example", U(0, 0, ("chain(2)", "chain(3)", "chain(4)", "chain(5)")), chk_chain_coord),
    Check("DSTACK", "least system for (E_0,F_0,{1},{1}) grows strictly with k = 0,1,2",
          "diamond-stack example", U(), chk_dstack, per_monoid=False),
    Check("FRE-RABUND", "r((A,a)) is generated by ((∅,1),(a^-1A,e)) with length-2 witnesses of one skeleton",
          "finitely right equated", U(3, 5, (), "right_abundant"), chk_fre_rabund),
    Check("RCANC", "l((A,a)) is generated by ((A,1),(∅,1)) for right cancellative M",
          "finitely left equated", U(4, 4, (), "right_cancellative"), chk_rcanc),
    Check("SKELETON", "shortest witnesses for the singleton generators have length at most 2",
          "skeletons", U(3, 3), chk_skeleton),
    Check("EASYSEQ", "Y generates the pairs of r((A,a)) with U,V ⊆ a^-1A via the displayed sequence",
          "Y-sequences", U(3, 3), chk_easyseq),
    Check("FOUNTAIN-R-ANNIH", "the listed sets generate r(xg), r(x²g), r(x³), r(x⁴); r(g) trivial",
          "Fountain example", U(0, 0, ("fountain(1)", "fountain(2)", "fountain(3)")), chk_fountain_r),
    Check("FOUNTAIN-SHADOW", "xp = xq forces p = q for p in G; xu = x³ = xv on x²G",
          "Fountain example", U(0, 0, ("fountain(2)", "fountain(3)")), chk_fountain_shadow),
    Check("LABUND-SHADOW", "b_i a = c_i a with b_i indecomposable and c_i not in b_i M",
          "presented semilattice example", U(0, 0, ("presented_semilattice(1)", "presented_semilattice(2)")),
          chk_labund_shadow),
    Check("LSTAR-CONTAINS", "L ⊆ L* ⊆ ~L, R ⊆ R* ⊆ ~R; L*, R*, r(a) one-sided congruences",
          "annihilators and star relations", U(4, 8), chk_lstar_contains),
    Check("REGULAR-LTILDE", "on regular monoids ~L_E(M) = L and ~R_E(M) = R",
          "annihilators and star relations", U(4, 8), chk_regular_ltilde),
    Check("AMPLE-E", "right or left E-ample forces E = E(M)", "ample monoids", U(4, 6), chk_ample_e),
    Check("SZ-CLOSURE", "Sz(M) is a monoid with identity ({1},1) and the expected order",
          "Szendrei expansion", U(3, 5), chk_sz_closure),
    Check("RETRACTION", "(A,a) -> a is a retraction with section a -> (∅,a)", "retraction", U(3, 5),
          chk_retraction),
    Check("LCM-GROUP", "for groups both annihilators of S(M) are singly generated and S(M) is principally Howson",
          "LCM monoids", U(4, 5, (), "group"), chk_lcm_group),
    Check("CLOSURE-ORACLE", "union-find closure equals the naive fixpoint", "congruence generation",
          U(3, 20), chk_closure_oracle),
    Check("WSEQ", "a witness exists iff the pair is related, and every witness replays",
          "congruence generation", U(3, 20), chk_wseq),
    Check("ENUM-COMPLETE", "enumeration matches the all-tables oracle for order <= 3; counts 1,2,7,35",
          "enumeration", U(), chk_enum_complete, per_monoid=False),
]

CHECKS_BY_ID = {c.id: c for c in CHECKS}

# topics every suite must cover (kept in sync with tests/test_verifier.py)
REQUIRED_TOPICS = sorted({c.topic for c in CHECKS})


def manifest() -> list[dict]:
    return [c.manifest_entry() for c in CHECKS]


def manifest_hash() -> str:
    data = json.dumps(manifest(), sort_keys=True, ensure_ascii=False).encode()
    return hashlib.sha256(data).hexdigest()[:12]


def version_string() -> str:
    return f"semidirect {__version__} (checks {manifest_hash()})"


# ---------------------------------------------------------------------------
# running

@dataclass
class CheckResult:
    check_id: str
    status: str
    universe: str
    elapsed_ms: float
    instances: int
    counterexample: dict | None = None
    error: str | None = None

    def as_dict(self) -> dict:
        d = {"check_id": self.check_id, "status": self.status, "universe": self.universe,
             "elapsed_ms": round(self.elapsed_ms, 1), "instances": self.instances}
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        if self.error is not None:
            d["error"] = self.error
        return d


@dataclass
class VerdictReport:
    results: list[CheckResult]
    seed: int
    version: str = field(default_factory=version_string)

    @property
    def ok(self) -> bool:
        return all(r.status in ("pass", "sampled-pass") for r in self.results)

    def as_dict(self) -> dict:
        return {"version": self.version, "manifest_hash": manifest_hash(), "seed": self.seed,
                "ok": self.ok, "results": [r.as_dict() for r in self.results]}


def _write_counterexample(config: SuiteConfig, check: Check, name: str, m: FiniteMonoid | None,
                          failure: dict) -> dict:
    payload = {"check_id": check.id, "monoid_name": name, "instance": failure,
               "seed": config.seed, "samples": config.samples, "mutate": config.mutate}
    if m is not None:
        payload["table"] = m.as_lists()
    if config.out_dir:
        os.makedirs(config.out_dir, exist_ok=True)
        stem = os.path.join(config.out_dir, f"{check.id}-{name}".replace("(", "_").replace(")", "")
                            .replace(",", "_"))
        if m is not None:
            save(m, stem + ".mon")
            payload["monoid_file"] = os.path.basename(stem + ".mon")
        with open(stem + ".json", "w") as fh:
            json.dump(payload, fh, indent=2, ensure_ascii=False)
        payload["file"] = stem + ".json"
    return payload


def run_check(check: Check, config: SuiteConfig) -> CheckResult:
    ctx = Ctx(config, check.id)
    start = time.perf_counter()
    count = 0
    cex = None
    try:
        if check.per_monoid:
            for name, m in check.universe.members(config):
                count += 1
                failure = check.fn(m, ctx)
                if failure is not None:
                    cex = _write_counterexample(config, check, name, m, failure)
                    break
        else:
            count = 1
            failure = check.fn(ctx)
            if failure is not None:
                cex = _write_counterexample(config, check, "global", None, failure)
    except CapacityError as exc:
        return CheckResult(check.id, "capacity", check.universe.describe(),
                           (time.perf_counter() - start) * 1000, count, None, str(exc))
    except Exception as exc:       # a crash inside a check is reported as a failure
        cex = {"check_id": check.id, "instance": {"exception": repr(exc)}}
    elapsed = (time.perf_counter() - start) * 1000
    status = "fail" if cex else ("sampled-pass" if ctx.sampled else "pass")
    return CheckResult(check.id, status, check.universe.describe(), elapsed, count, cex)


def _run_by_id(args):
    cid, config = args
    return run_check(CHECKS_BY_ID[cid], config)


def selected_checks(ids: Iterable[str] | None) -> list[Check]:
    if ids is None:
        return list(CHECKS)
    out = []
    for cid in ids:
        if cid not in CHECKS_BY_ID:
            raise UnknownCheckError(cid)
        out.append(CHECKS_BY_ID[cid])
    return out


def run_suite(config: SuiteConfig | None = None) -> VerdictReport:
    config = config or SuiteConfig()
    checks = selected_checks(config.checks)
    if config.jobs > 1:
        with ProcessPoolExecutor(config.jobs) as pool:
            results = list(pool.map(_run_by_id, [(c.id, config) for c in checks]))
    else:
        results = [run_check(c, config) for c in checks]
    results.sort(key=lambda r: r.check_id)
    return VerdictReport(results, config.seed)


def replay_counterexample(path: str) -> dict | None:
    """Re-run the failing instance recorded at ``path``; returns the failure again (or None)."""
    with open(path) as fh:
        payload = json.load(fh)
    check = CHECKS_BY_ID[payload["check_id"]]
    config = SuiteConfig(seed=payload.get("seed", DEFAULT_SEED), samples=payload.get("samples", DEFAULT_SAMPLES),
                         mutate=payload.get("mutate", False))
    ctx = Ctx(config, check.id)
    if not check.per_monoid:
        return check.fn(ctx)
    if "monoid_file" in payload:
        m = load(os.path.join(os.path.dirname(path), payload["monoid_file"]))
    else:
        m = FiniteMonoid(payload["table"])
    return check.fn(m, ctx)


# ---------------------------------------------------------------------------
# counterexample search

@dataclass(frozen=True)
class Predicate:
    id: str
    description: str
    holds: Callable[[FiniteMonoid], bool]
    applies: Callable[[FiniteMonoid], bool] = lambda m: True


PREDICATES = {p.id: p for p in [
    Predicate("principally-right-howson", "M is principally right ideal Howson",
              lambda m: is_principally_ideal_howson(m, "right")[0]),
    Predicate("principally-left-howson", "M is principally left ideal Howson",
              lambda m: is_principally_ideal_howson(m, "left")[0]),
    Predicate("left-1-coordinated", "M is left 1-co-ordinated",
              lambda m: is_n_left_coordinated(m, 1).holds),
    Predicate("S-idempotents-semilattice", "E(S(M)) is a semilattice (unipotent M only)",
              lambda m: is_semilattice(expand_S(m), idempotents(expand_S(m))),
              lambda m: bits.size(idempotents(m)) == 1),
    Predicate("S-regular", "S(M) is regular (non-groups only)",
              lambda m: classify(expand_S(m)).regular, lambda m: not _is_group(m)),
    Predicate("right-abundant", "M is right abundant", lambda m: classify(m).right_abundant),
    Predicate("S-principally-right-howson", "S(M) is principally right ideal Howson",
              lambda m: is_principally_ideal_howson(expand_S(m), "right")[0]),
]}


@dataclass
class SearchResult:
    predicate: str
    name: str
    monoid: FiniteMonoid
    examined: int
    file: str | None = None


def iter_search_universe(orders: Iterable[int], use_catalog: bool = True) -> Iterator[tuple[str, FiniteMonoid]]:
    """Catalog entries then enumerated monoids, order by order."""
    cat = catalog.entries() if use_catalog else []
    for n in orders:
        for e in cat:
            if e.order == n:
                yield e.key, e.monoid
        if n <= catalog.ENUM_CAP:
            yield from catalog.enumerated([n])


def search_counterexample(predicate_id: str, orders: Iterable[int] = range(1, 6),
                          out: str | None = None, use_catalog: bool = True) -> SearchResult | None:
    """First monoid (smallest order first) on which the predicate fails, or None."""
    if predicate_id not in PREDICATES:
        raise UnknownCheckError(predicate_id)
    pred = PREDICATES[predicate_id]
    examined = 0
    for name, m in iter_search_universe(orders, use_catalog):
        if not pred.applies(m):
            continue
        examined += 1
        if not pred.holds(m):
            res = SearchResult(predicate_id, name, m, examined)
            if out:
                save(m, out)
                res.file = out
            return res
    return None


def count_failures(predicate_id: str, orders: Iterable[int]) -> tuple[int, int]:
    """(failures, examined) over the enumerated monoids of the given orders."""
    pred = PREDICATES[predicate_id]
    fails = examined = 0
    for _, m in iter_search_universe(orders, use_catalog=False):
        if pred.applies(m):
            examined += 1
            fails += not pred.holds(m)
    return fails, examined
