"""Element-level set operations, Green's relations and their generalizations.

Conventions: ``r(a)`` relates u, v when au = av (a right congruence); ``l(a)``
is the left dual.  ``L*`` compares right annihilators, ``R*`` left ones.  The
tilde relations compare sets of idempotent one-sided identities drawn from a
chosen set E of idempotents, given as a bitmask over the view.
"""

from __future__ import annotations

from dataclasses import dataclass, field, asdict

import numpy as np

from . import bits
from .bits import ElemSet
from .congruence import EqRelation, Kind, closure
from .monoid import MonoidView


class NotIdempotentError(ValueError):
    pass


class NotSemilatticeError(ValueError):
    def __init__(self, message: str, pair: tuple[int, int] | None = None):
        super().__init__(message)
        self.pair = pair


def _arange(v: MonoidView) -> np.ndarray:
    return np.arange(v.order)


def _mask_from_bool(flags: np.ndarray) -> ElemSet:
    return bits.mask(int(i) for i in np.flatnonzero(flags))


def idempotents(v: MonoidView) -> ElemSet:
    t = np.asarray(v.table)
    return _mask_from_bool(np.diagonal(t) == _arange(v))


def preimage_set(v: MonoidView, a: int, A: ElemSet) -> ElemSet:
    """a⁻¹A = {u : au ∈ A}."""
    row = v.rows[a]
    return bits.mask(u for u, au in enumerate(row) if (A >> au) & 1)


def left_image(v: MonoidView, a: int, A: ElemSet) -> ElemSet:
    """aA = {ax : x ∈ A}."""
    row = v.rows[a]
    return bits.mask(row[x] for x in bits.iter_members(A))


def right_image(v: MonoidView, A: ElemSet, a: int) -> ElemSet:
    """Aa = {xa : x ∈ A}."""
    col = v.cols[a]
    return bits.mask(col[x] for x in bits.iter_members(A))


def hat_set(v: MonoidView, A: ElemSet) -> ElemSet:
    """Idempotents e with eA ⊆ A."""
    return bits.mask(e for e in bits.iter_members(idempotents(v))
                     if bits.is_subset(left_image(v, e, A), A))


def right_annihilator(v: MonoidView, a: int) -> EqRelation:
    return EqRelation.from_keys(v.rows[a], Kind.RIGHT)


def left_annihilator(v: MonoidView, a: int) -> EqRelation:
    return EqRelation.from_keys(v.cols[a], Kind.LEFT)


def _first_occurrence(lines: np.ndarray) -> np.ndarray:
    """Row-wise relabeling of each entry by the first column holding the same value."""
    n, m = lines.shape
    out = np.empty_like(lines)
    for i in range(n):
        _, first, inv = np.unique(lines[i], return_index=True, return_inverse=True)
        out[i] = first[inv]
    return out


def relation_Lstar(v: MonoidView) -> EqRelation:
    """a L* b iff r(a) = r(b); always a right congruence."""
    return EqRelation.from_array_rows(_first_occurrence(np.asarray(v.table)), Kind.RIGHT)


def relation_Rstar(v: MonoidView) -> EqRelation:
    return EqRelation.from_array_rows(_first_occurrence(np.asarray(v.table).T), Kind.LEFT)


def _check_idempotents(v: MonoidView, E: ElemSet) -> list[int]:
    bad = E & ~idempotents(v)
    if bad:
        x = bits.members(bad)[0]
        raise NotIdempotentError(f"{v.label(x)} is not idempotent")
    return bits.members(E)


def relation_Ltilde(v: MonoidView, E: ElemSet) -> EqRelation:
    """a ~ b iff {e ∈ E : ae = a} = {e ∈ E : be = b}."""
    es = _check_idempotents(v, E)
    t = np.asarray(v.table)
    fixed = t[:, es] == _arange(v)[:, None]
    return EqRelation.from_array_rows(np.packbits(fixed, axis=1), Kind.PLAIN)


def relation_Rtilde(v: MonoidView, E: ElemSet) -> EqRelation:
    """a ~ b iff {e ∈ E : ea = a} = {e ∈ E : eb = b}."""
    es = _check_idempotents(v, E)
    t = np.asarray(v.table)
    fixed = (t[es, :] == _arange(v)[None, :]).T
    return EqRelation.from_array_rows(np.packbits(fixed, axis=1), Kind.PLAIN)


def leq_Ltilde(v: MonoidView, E: ElemSet, a: int, b: int) -> bool:
    """The preorder behind ~L_E: every right identity of b from E fixes a."""
    es = _check_idempotents(v, E)
    ra, rb = v.rows[a], v.rows[b]
    return all(ra[e] == a for e in es if rb[e] == b)


# ---------------------------------------------------------------------------
# Green's relations

def _masks_of_lines(lines: np.ndarray) -> list[ElemSet]:
    n = lines.shape[0]
    member = np.zeros((n, n), dtype=bool)
    member[np.arange(n)[:, None], lines] = True
    packed = np.packbits(member, axis=1, bitorder="little")
    return [int.from_bytes(r.tobytes(), "little") for r in packed]


def principal_right_ideals(v: MonoidView) -> list[ElemSet]:
    """xV for every x, as bitmasks."""
    return _masks_of_lines(np.asarray(v.table))


def principal_left_ideals(v: MonoidView) -> list[ElemSet]:
    return _masks_of_lines(np.asarray(v.table).T)


@dataclass(frozen=True)
class GreensRelations:
    R: EqRelation
    L: EqRelation
    H: EqRelation
    D: EqRelation
    J: EqRelation


def greens_relations(v: MonoidView) -> GreensRelations:
    right = principal_right_ideals(v)
    left = principal_left_ideals(v)
    R = EqRelation.from_keys(right, Kind.LEFT)
    L = EqRelation.from_keys(left, Kind.RIGHT)
    H = R.meet(L)
    # D = R ∨ L: merge along both partitions
    parent = list(range(v.order))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for rel in (R, L):
        for x, r in enumerate(rel.labels):
            a, b = find(x), find(r)
            if a != b:
                parent[max(a, b)] = min(a, b)
    D = EqRelation([find(x) for x in range(v.order)])
    # J: equality of SxS = union of Sy over y in xS
    two_sided = []
    for x in range(v.order):
        acc = 0
        for y in bits.iter_members(right[x]):
            acc |= left[y]
        two_sided.append(acc)
    J = EqRelation.from_keys(two_sided)
    return GreensRelations(R, L, H, D, J)


def sigma_congruence(v: MonoidView, E: ElemSet) -> EqRelation:
    """Least two-sided congruence collapsing E to one class."""
    es = bits.members(E)
    if not es:
        raise ValueError("E must be nonempty")
    return closure(v, [(es[0], e) for e in es[1:]], Kind.TWO_SIDED)


# ---------------------------------------------------------------------------
# classification

def semilattice_violation(v: MonoidView, E: ElemSet) -> tuple[int, int] | None:
    """First pair of E that fails to commute or whose product leaves E."""
    es = bits.members(E)
    rows = v.rows
    for i, e in enumerate(es):
        if rows[e][e] != e:
            return (e, e)
        for f in es[i + 1:]:
            ef = rows[e][f]
            if ef != rows[f][e] or not (E >> ef) & 1:
                return (e, f)
    return None


def is_semilattice(v: MonoidView, E: ElemSet) -> bool:
    return semilattice_violation(v, E) is None


@dataclass
class ClassificationReport:
    group: bool
    left_cancellative: bool
    right_cancellative: bool
    regular: bool
    inverse: bool
    proper_inverse: bool
    left_abundant: bool
    right_abundant: bool
    left_fountain: bool
    right_fountain: bool
    E: list[int] = field(default_factory=list)
    E_is_semilattice: bool = False
    # Everything below is None when E is not a semilattice.
    left_ehresmann: bool | None = None
    right_ehresmann: bool | None = None
    left_adequate: bool | None = None
    right_adequate: bool | None = None
    left_restriction: bool | None = None
    right_restriction: bool | None = None
    left_ample: bool | None = None
    right_ample: bool | None = None
    proper_left_restriction: bool | None = None
    proper_right_restriction: bool | None = None
    proper_left_ample: bool | None = None
    proper_right_ample: bool | None = None

    def as_dict(self) -> dict:
        return asdict(self)


def _meets(rel: EqRelation, targets: ElemSet) -> bool:
    """Every class of rel contains an element of ``targets``."""
    hit = {rel.labels[x] for x in bits.iter_members(targets)}
    return hit >= set(rel.labels)


def _trivial_meet(r1: EqRelation, r2: EqRelation) -> bool:
    return r1.meet(r2).is_identity()


def _star_map(rel: EqRelation, E: ElemSet) -> dict[int, int] | None:
    """Class label -> the unique element of E in that class (None if some class misses E)."""
    out = {}
    for e in bits.iter_members(E):
        out.setdefault(rel.labels[e], e)
    if set(out) != set(rel.labels):
        return None
    return out


def classify(v: MonoidView, E: ElemSet | None = None) -> ClassificationReport:
    """Structural verdicts for a view, relative to a set E of idempotents.

    With ``E`` omitted, E = E(v) and the E-parameterized verdicts are only
    filled in when E(v) happens to be a semilattice.  An explicit E that is not
    a semilattice raises :class:`NotSemilatticeError` naming the bad pair.
    """
    n = v.order
    t = np.asarray(v.table)
    idx = _arange(v)
    EM = idempotents(v)
    explicit = E is not None
    if E is None:
        E = EM
    _check_idempotents(v, E)
    bad = semilattice_violation(v, E)
    if explicit and bad is not None:
        x, y = bad
        raise NotSemilatticeError(
            f"E is not a semilattice: {v.label(x)} and {v.label(y)} do not commute within E", bad)

    left_canc = all(len(set(r)) == n for r in v.rows)
    right_canc = all(len(set(c)) == n for c in v.cols)
    is_group = bool((t == v.identity).any(axis=1).all() and (t == v.identity).any(axis=0).all())
    # x regular iff x ∈ xMx
    regular = bool((t[t[:, :], idx[:, None]] == idx[:, None]).any(axis=1).all())
    em = bits.members(EM)
    commuting = all(v.rows[e][f] == v.rows[f][e] for e in em for f in em)
    inverse = regular and commuting
    Lstar, Rstar = relation_Lstar(v), relation_Rstar(v)
    LtE, RtE = relation_Ltilde(v, EM), relation_Rtilde(v, EM)
    proper_inverse = False
    if inverse:
        g = greens_relations(v)
        proper_inverse = _trivial_meet(g.L, sigma_congruence(v, EM))
    rep = ClassificationReport(
        group=is_group, left_cancellative=left_canc, right_cancellative=right_canc,
        regular=regular, inverse=inverse, proper_inverse=proper_inverse,
        left_abundant=_meets(Rstar, EM), right_abundant=_meets(Lstar, EM),
        left_fountain=_meets(RtE, EM), right_fountain=_meets(LtE, EM),
        E=bits.members(E), E_is_semilattice=bad is None,
    )
    if bad is not None:
        return rep

    Lt, Rt = relation_Ltilde(v, E), relation_Rtilde(v, E)
    sigma = sigma_congruence(v, E)
    rows = v.rows

    star = _star_map(Lt, E)
    rep.right_ehresmann = star is not None and Lt.is_right_congruence(v)
    rep.right_adequate = rep.right_ehresmann and Lt == Lstar
    ample_r = False
    if rep.right_ehresmann:
        # e a = a (e a)*
        ample_r = all(rows[e][a] == rows[a][star[Lt.labels[rows[e][a]]]]
                      for e in bits.iter_members(E) for a in range(n))
    rep.right_restriction = rep.right_ehresmann and ample_r
    rep.right_ample = rep.right_adequate and ample_r
    rep.proper_right_restriction = rep.right_restriction and _trivial_meet(Lt, sigma)
    rep.proper_right_ample = rep.right_ample and _trivial_meet(Lstar, sigma)

    plus = _star_map(Rt, E)
    rep.left_ehresmann = plus is not None and Rt.is_left_congruence(v)
    rep.left_adequate = rep.left_ehresmann and Rt == Rstar
    ample_l = False
    if rep.left_ehresmann:
        # a e = (a e)+ a
        ample_l = all(rows[a][e] == rows[plus[Rt.labels[rows[a][e]]]][a]
                      for e in bits.iter_members(E) for a in range(n))
    rep.left_restriction = rep.left_ehresmann and ample_l
    rep.left_ample = rep.left_adequate and ample_l
    rep.proper_left_restriction = rep.left_restriction and _trivial_meet(Rt, sigma)
    rep.proper_left_ample = rep.left_ample and _trivial_meet(Rstar, sigma)
    return rep
