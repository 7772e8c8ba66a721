import pytest

from semidirect import bits, catalog
from semidirect.congruence import EqRelation, Kind
from semidirect.expansion import expand_S
from semidirect.relations import (NotIdempotentError, NotSemilatticeError, classify, greens_relations,
                                  hat_set, idempotents, leq_Ltilde, left_annihilator, preimage_set,
                                  relation_Lstar, relation_Ltilde, relation_Rstar, relation_Rtilde,
                                  right_annihilator, sigma_congruence)


def test_idempotents_small(u2, z2, su2):
    assert idempotents(u2) == 0b11
    assert idempotents(z2) == 0b1
    E = idempotents(su2)
    assert bits.size(E) == 7
    assert not (E >> su2.encode(0b01, 1)) & 1       # ({1},z) squares to ({1,z},z)


def test_preimage_and_hat(u2, z2):
    assert preimage_set(u2, 1, 0b10) == 0b11
    assert preimage_set(z2, 1, 0b01) == 0b10
    for A in range(4):
        assert preimage_set(u2, 0, A) == A
    assert hat_set(u2, 0b01) == 0b01
    assert hat_set(u2, 0b10) == 0b11
    assert hat_set(u2, 0) == idempotents(u2)


def test_annihilators(u2, z2, su2):
    assert right_annihilator(u2, 1).is_universal()
    assert right_annihilator(z2, 1).is_identity()
    x = su2.encode(0b01, 1)
    r = right_annihilator(su2, x)
    for u in range(8):
        for v in range(8):
            assert r.related(u, v) == (su2.product(x, u) == su2.product(x, v))
    assert r.is_right_congruence(su2)
    assert left_annihilator(su2, x).is_left_congruence(su2)


def test_star_relations(u2, z2):
    assert relation_Lstar(z2).is_universal()
    assert relation_Lstar(u2).is_identity()
    assert relation_Rstar(u2).is_identity()


def test_tilde_with_identity_only_is_universal(d5):
    assert relation_Ltilde(d5, 1).is_universal()
    assert relation_Rtilde(d5, 1).is_universal()


def test_tilde_rejects_non_idempotent(z2):
    with pytest.raises(NotIdempotentError):
        relation_Ltilde(z2, 0b11)


def test_tilde_script_e_groups_by_preimage(su2, u2):
    lt = relation_Ltilde(su2, su2.script_e())
    for x in range(8):
        for y in range(8):
            (A, a), (B, b) = su2.decode(x), su2.decode(y)
            assert lt.related(x, y) == (preimage_set(u2, a, A) == preimage_set(u2, b, B))


def test_leq_ltilde_is_a_preorder_inducing_ltilde(d5):
    E = idempotents(d5)
    lt = relation_Ltilde(d5, E)
    for a in range(5):
        assert leq_Ltilde(d5, E, a, a)
        for b in range(5):
            both = leq_Ltilde(d5, E, a, b) and leq_Ltilde(d5, E, b, a)
            assert both == lt.related(a, b)


def test_greens_small(u2, z2, s_z2):
    g = greens_relations(z2)
    assert g.R.is_universal() and g.L.is_universal()
    g = greens_relations(u2)
    assert g.R.is_identity() and g.L.is_identity()
    g = greens_relations(s_z2)
    m = s_z2.base
    for x in range(8):
        for y in range(8):
            (A, a), (B, b) = s_z2.decode(x), s_z2.decode(y)
            assert g.R.related(x, y) == (A == B)
            assert g.L.related(x, y) == (preimage_set(m, a, A) == preimage_set(m, b, B))


def test_sigma(u2, s_z2):
    assert sigma_congruence(u2, 0b1).is_identity()
    assert sigma_congruence(u2, 0b11).is_universal()
    sig = sigma_congruence(s_z2, s_z2.script_e())
    assert sig.num_classes == 2
    for x in range(8):
        for y in range(8):
            assert sig.related(x, y) == (s_z2.decode(x)[1] == s_z2.decode(y)[1])


def test_classify_examples(z2, s_z2, su2):
    assert classify(z2).group and classify(z2).inverse
    rep = classify(s_z2)
    assert rep.inverse and rep.proper_inverse
    rep = classify(su2, su2.script_e())
    assert rep.proper_left_restriction and rep.left_ample is False


def test_classify_rejects_non_semilattice_E():
    m = catalog.make_left_zero_monoid(2)
    with pytest.raises(NotSemilatticeError):
        classify(m, idempotents(m))


def test_inclusion_chain_on_catalog():
    for e in catalog.entries(8):
        m = e.monoid
        g = greens_relations(m)
        E = idempotents(m)
        assert g.L <= relation_Lstar(m) <= relation_Ltilde(m, E)
        assert g.R <= relation_Rstar(m) <= relation_Rtilde(m, E)
        assert relation_Lstar(m).is_right_congruence(m)
        assert relation_Rstar(m).is_left_congruence(m)


def test_right_ample_forces_full_E():
    # semilattices: every sub-semilattice containing 1 that is not all of E fails right ample
    for e in catalog.entries(6):
        m = e.monoid
        EM = idempotents(m)
        for E in bits.submasks(EM):
            if not E & 1:
                continue
            try:
                rep = classify(m, E)
            except NotSemilatticeError:
                continue
            if rep.right_ample:
                assert E == EM, e.key
