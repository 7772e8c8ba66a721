import pytest
from hypothesis import given, settings, strategies as st

from semidirect import bits, catalog
from semidirect.acts import (NotACongruenceError, NotASubactError, WSequence, check_subact,
                             congruence_closure, find_w_sequence, ideal_generated_by,
                             ideal_generators, ideal_intersection, min_generators_congruence,
                             principal_left_ideal, principal_right_ideal, skeleton, subact_generated_by,
                             subact_generators, subact_RL)
from semidirect.congruence import EqRelation, Kind
from semidirect.expansion import expand_S
from semidirect.oracles import naive_closure
from semidirect.relations import left_annihilator, preimage_set, right_annihilator

SMALL = [e.monoid for e in catalog.entries(6)]


def test_principal_ideals(u2, d5, z2):
    assert principal_right_ideal(u2, 1).members() == [1]
    E, G = 2, 4
    assert principal_right_ideal(d5, E).members() == [E, G]
    assert principal_left_ideal(z2, 1).members() == [0, 1]


def test_ideal_intersection(d5, z2, su2):
    I = ideal_intersection(d5, 2, 3)
    assert I.members() == [4] and I.generators == (4,)
    assert ideal_intersection(z2, 0, 1).members() == [0, 1]
    x, y = su2.encode(0, 1), su2.encode(0b01, 1)
    I = ideal_intersection(su2, x, y)
    assert ideal_generated_by(su2, I.generators) == I.carrier
    for g in I.generators:      # irredundant
        rest = [h for h in I.generators if h != g]
        assert ideal_generated_by(su2, rest) != I.carrier


def test_empty_intersection_is_not_an_error():
    m = catalog.make_left_zero_monoid(2)
    I = ideal_intersection(m, 1, 2, "right")
    assert I.carrier == 0 and I.generators == ()


def test_ideal_generators_are_minimum_on_catalog():
    # brute force the least number of principal ideals covering each intersection
    from itertools import combinations
    from semidirect.relations import principal_right_ideals
    for m in SMALL:
        princ = principal_right_ideals(m)
        for a in range(m.order):
            for b in range(m.order):
                inter = princ[a] & princ[b]
                if not inter:
                    continue
                gens = ideal_generators(m, inter)
                els = bits.members(inter)
                best = next(k for k in range(1, len(els) + 1)
                            if any(bits.mask(()) | _union(princ, c) == inter
                                   for c in combinations(els, k)))
                assert len(gens) == best


def _union(princ, c):
    out = 0
    for u in c:
        out |= princ[u]
    return out


def test_subact_rl(z2, su2):
    assert subact_RL(z2, 1, 0) == {(0, 1), (1, 0)}
    assert {(x, x) for x in range(su2.order)} <= subact_RL(su2, 5, 5)
    top = su2.encode(0b11, 0)
    R = subact_RL(su2, top, top)
    # ((D,d),(E,d)) over 4 choices of D, 4 of E and 2 of d
    assert len(R) == 32
    assert all(su2.decode(x)[1] == su2.decode(y)[1] for x, y in R)


def test_subact_generators(z2, d5):
    assert subact_generators(z2, subact_RL(z2, 1, 0)) == [(0, 1)] or \
        len(subact_generators(z2, subact_RL(z2, 1, 0))) == 1
    diag = {(x, x) for x in range(d5.order)}
    assert subact_generators(d5, diag) == [(0, 0)]


def test_subact_check_names_escape(u2):
    with pytest.raises(NotASubactError) as ei:
        check_subact(u2, {(0, 0)})
    assert ei.value.pair == (0, 0)


def test_left_finite_structure_needs_empty_translate(su2):
    top = su2.encode(0b11, 0)
    L = subact_RL(su2, top, top, "left")
    gens = subact_generators(su2, L, "left")
    assert subact_generated_by(su2, gens, "left") == set(L)
    for B in range(4):
        p = (su2.encode(B, 0), su2.encode(0b11 & ~B, 0))
        # any generator (g, h) with (T,t)(g,h) = p needs T = ∅
        hits = [(g, t) for g in gens for t in range(su2.order)
                if (su2.product(t, g[0]), su2.product(t, g[1])) == p]
        assert hits and all(su2.decode(t)[0] == 0 for _, t in hits)


def test_closure_examples(u2):
    assert congruence_closure(u2, [(0, 1)], "right").is_universal()
    assert congruence_closure(u2, [], "right").is_identity()


def test_w_sequence_examples(u2):
    ws = find_w_sequence(u2, [(0, 1)], "right", 1, 0)
    assert len(ws) == 1 and ws.steps[0][2] == 0 and ws.replay(u2, [(0, 1)])
    ws0 = find_w_sequence(u2, [(0, 1)], "right", 1, 1)
    assert len(ws0) == 0 and skeleton(ws0) == []
    assert find_w_sequence(u2, [], "right", 0, 1) is None


def test_replay_rejects_bad_steps(u2):
    ws = WSequence(1, 0, ((0, 1, 0),), "right")
    assert not ws.replay(u2)            # 0*0 = 0, not the start 1
    ws = WSequence(0, 1, ((0, 1, 0),), "right")
    assert ws.replay(u2) and not ws.replay(u2, [(0, 0)])


def test_min_generators_examples(su2, s_z2, u2):
    assert min_generators_congruence(su2, EqRelation.identity(8, Kind.RIGHT), "right").minimum == 0
    x = su2.encode(0b01, 1)
    r = min_generators_congruence(su2, right_annihilator(su2, x), "right")
    assert r.exact and r.minimum == 1
    # the predicted pair ((∅,1),(z⁻¹{1}, z)) = ((∅,1),(∅,z)) generates it
    assert congruence_closure(su2, [(0, su2.encode(preimage_set(u2, 1, 0b01), 1))], "right") == \
        right_annihilator(su2, x)
    y = s_z2.encode(0b01, 1)
    l = min_generators_congruence(s_z2, left_annihilator(s_z2, y), "left")
    assert l.minimum == 1
    assert congruence_closure(s_z2, [(s_z2.encode(0b01, 0), 0)], "left") == left_annihilator(s_z2, y)


def test_min_generators_rejects_non_congruence(u2):
    with pytest.raises(NotACongruenceError):
        min_generators_congruence(catalog.make_chain_semilattice(3), EqRelation([0, 1, 0]), "right")


def test_min_generators_is_minimum_by_brute_force():
    from itertools import combinations
    for m in SMALL[:12]:
        for a in range(m.order):
            rel = right_annihilator(m, a)
            res = min_generators_congruence(m, rel, "right")
            assert res.exact
            pairs = [(x, y) for c in rel.classes() for i, x in enumerate(c) for y in c[i + 1:]]
            best = next(k for k in range(0, len(pairs) + 1)
                        if any(congruence_closure(m, list(c), "right") == rel
                               for c in combinations(pairs, k)))
            assert res.minimum == best


@st.composite
def monoid_and_pairs(draw):
    m = draw(st.sampled_from(SMALL))
    k = draw(st.integers(0, 3))
    W = [(draw(st.integers(0, m.order - 1)), draw(st.integers(0, m.order - 1))) for _ in range(k)]
    side = draw(st.sampled_from(["right", "left", "two-sided"]))
    return m, W, side


@settings(max_examples=150, deadline=None)
@given(monoid_and_pairs())
def test_closure_matches_oracle(case):
    m, W, side = case
    rel = congruence_closure(m, W, side)
    assert rel == naive_closure(m, W, side)
    assert all(rel.related(x, y) for x, y in W)
    if side != "two-sided":
        assert rel.is_congruence(m, Kind.RIGHT if side == "right" else Kind.LEFT)


@settings(max_examples=100, deadline=None)
@given(monoid_and_pairs(), st.integers(0, 100), st.integers(0, 100))
def test_witness_iff_related(case, i, j):
    m, W, side = case
    if side == "two-sided":
        side = "right"
    a, b = i % m.order, j % m.order
    rel = congruence_closure(m, W, side)
    ws = find_w_sequence(m, W, side, a, b)
    assert (ws is not None) == rel.related(a, b)
    if ws is not None:
        assert ws.replay(m, W)
        assert ws.points(m)[-1] == b


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([e.monoid for e in catalog.entries(3)]), st.data())
def test_annihilator_is_closed_on_s_views(m, data):
    s = expand_S(m)
    x = data.draw(st.integers(0, s.order - 1))
    r = right_annihilator(s, x)
    assert congruence_closure(s, list(r.pairs()), "right") == r
