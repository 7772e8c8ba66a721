import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from semidirect import bits, catalog
from semidirect.acts import ideal_generators, subact_RL
from semidirect.deciders import (CoordSystem, _coverage_block, chain_system, coordinate_system_check,
                                 coverage, greedy_set_cover, howson_report, is_n_left_coordinated,
                                 is_principally_ideal_howson, min_coordinate_system, min_set_cover,
                                 strong_howson_profile, weak_coherence_report)
from semidirect.expansion import expand_S
from semidirect.monoid import CapacityError, load
from semidirect.relations import principal_left_ideals

from conftest import fixture_path


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 255), min_size=1, max_size=8), st.integers(0, 255))
def test_min_set_cover_matches_brute_force(sets, target):
    got = min_set_cover(target, sets)
    best = None
    for k in range(len(sets) + 1):
        for c in itertools.combinations(range(len(sets)), k):
            u = 0
            for i in c:
                u |= sets[i]
            if u & target == target:
                best = k
                break
        if best is not None:
            break
    if best is None:
        assert got is None and greedy_set_cover(target, sets) is None
    else:
        assert got is not None and len(got) == best
        g = greedy_set_cover(target, sets)
        assert len(g) >= best


def test_principal_howson_examples(d5, z2):
    assert is_principally_ideal_howson(d5, "right") == (True, None)
    assert is_principally_ideal_howson(catalog.make_symmetric_group(3), "left")[0]
    m = load(fixture_path("smallest_not_principally_right_howson.mon"))
    ok, (a, b) = is_principally_ideal_howson(m, "right")
    assert not ok and m.order == 5


def test_fixture_is_smallest():
    for n in range(1, 5):
        for m in catalog.enumerated_list(n):
            assert is_principally_ideal_howson(m, "right")[0]


def test_profiles(d5):
    assert strong_howson_profile(d5).max_n == 1
    assert strong_howson_profile(catalog.make_cyclic_group(3)).max_n == 1
    assert strong_howson_profile(catalog.get("u2xu2").monoid).max_n == 1
    m = load(fixture_path("smallest_not_principally_right_howson.mon"))
    rep = howson_report(m, "right")
    assert rep.profile.max_n >= 2 and rep.implication_chain_holds()
    assert rep.ideal_howson and rep.strongly and not rep.principally


def test_chain_case_systems():
    m = catalog.make_chain_semilattice(4)          # T > 1 > 0 > B
    T, one, zero = 0, 1, 2
    assert coordinate_system_check(m, CoordSystem(one, one, 0b0110, 0b1000, ((T, T),)))[0]
    # a < b in the chain means ab = a
    a, b = zero, one
    assert coordinate_system_check(m, CoordSystem(a, b, 0b1111, 0b0011, ((T, a), (a, a))))[0]


def test_d5_meet_system(d5):
    E, F, G = 2, 3, 4
    assert coordinate_system_check(d5, CoordSystem(E, F, 0, 0, ((G, G),)))[0]


def test_pair_outside_L_rejected(d5):
    with pytest.raises(ValueError):
        coordinate_system_check(d5, CoordSystem(2, 3, 0, 0, ((0, 0),)))


def test_min_system_empty_L():
    m = catalog.make_left_zero_monoid(2)
    # L(a, b) = {(p, q): pa = qb}; in a left-zero monoid with identity, p l1 = p except p = 1
    for a in range(m.order):
        for b in range(m.order):
            if not subact_RL(m, a, b, "left"):
                assert min_coordinate_system(m, a, b, 0, 0).size == 0


def test_empty_sets_give_intersection_generators():
    for e in catalog.entries(6):
        m = e.monoid
        princ = principal_left_ideals(m)
        for a in range(m.order):
            for b in range(m.order):
                inter = princ[a] & princ[b]
                size = min_coordinate_system(m, a, b, 0, 0, cap_n=None).size
                if not inter:
                    assert size == 0
                else:
                    assert (size == 1) == (len(ideal_generators(m, inter, "left")) == 1)


def test_chain_minimum_at_most_two():
    m = catalog.make_chain_semilattice(4)
    for a, b in itertools.product(range(4), repeat=2):
        for A, B in itertools.product(range(16), repeat=2):
            assert min_coordinate_system(m, a, b, A, B).size <= 2


def test_chain_system_every_instance():
    for k in (2, 3, 4):
        m = catalog.make_chain_semilattice(k)
        for a, b in itertools.product(range(k), repeat=2):
            C = chain_system(m, a, b)
            for A, B in itertools.product(range(1 << k), repeat=2):
                assert coordinate_system_check(m, CoordSystem(a, b, A, B, C))[0]


def test_diamond_stack_grows():
    sizes = []
    for k in range(3):
        m = catalog.make_diamond_stack(k)
        labs = m.labels()
        res = min_coordinate_system(m, labs.index("E_0"), labs.index("F_0"), 1, 1, cap_n=None)
        assert res.exact
        sizes.append(res.size)
    assert sizes[0] < sizes[1] < sizes[2]


def test_n_left_coordinated(d5):
    assert is_n_left_coordinated(catalog.make_cyclic_group(4), 1).holds
    v = is_n_left_coordinated(d5, 1)
    assert not v.holds and v.worst_size == 3 and not v.sampled
    assert is_n_left_coordinated(d5, 3).holds
    assert is_n_left_coordinated(catalog.make_chain_semilattice(4), 2).holds


def test_n_left_coordinated_budget():
    m = catalog.make_cyclic_group(6)
    with pytest.raises(CapacityError):
        is_n_left_coordinated(m, 1)
    v = is_n_left_coordinated(m, 1, samples=50, seed=3)
    assert v.sampled and v.seed == 3 and v.holds and v.instances == 50


def test_vectorized_coverage_agrees_with_scalar():
    rng = random.Random(7)
    for e in catalog.entries(5):
        m = e.monoid
        n = m.order
        for _ in range(10):
            a, b = rng.randrange(n), rng.randrange(n)
            A, B = rng.randrange(1 << n), rng.randrange(1 << n)
            sols, cands, masks = coverage(m, a, b, A, B)
            if not sols:
                continue
            s2, cov = _coverage_block(m, a, b, np.array([[A, B]], dtype=np.int64))
            assert list(map(tuple, s2)) == [tuple(s) for s in sols]
            full = cov[0]                      # [candidate i, solution j]
            vec = [sum(1 << j for j in range(len(sols)) if full[i, j]) for i in range(len(cands))]
            assert vec == masks


def test_weak_coherence_predictions(u2, s_z2, su2):
    rep = weak_coherence_report(s_z2)
    assert rep.max_left() <= 1 and rep.predictions["left_annihilators_at_most_1"]
    rep = weak_coherence_report(su2)
    assert rep.predictions["base_right_abundant"] and rep.max_right() <= 1
    f = catalog.get("fountain(2)").monoid
    rep = weak_coherence_report(f)
    assert rep.finitely_right_equated and rep.weakly_right_coherent
