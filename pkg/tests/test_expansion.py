import pytest

from semidirect import catalog
from semidirect.expansion import (adjoin_identity, direct_product, expand_S, expand_Sz, materialize,
                                  retraction)
from semidirect.monoid import CapacityError, is_isomorphic, validate
from semidirect.relations import classify


def test_s_products(su2, s_z2):
    assert su2.order == 8
    assert su2.product(su2.encode(0b01, 1), su2.encode(0b01, 0)) == su2.encode(0b11, 1)
    # additive Z2: ({0},1)({1},1) = ({0} ∪ (1+{1}), 0) = ({0}, 0)
    assert s_z2.product(s_z2.encode(0b01, 1), s_z2.encode(0b10, 1)) == s_z2.encode(0b01, 0)
    assert s_z2.decode(s_z2.identity) == (0, 0)


def test_element_builder(su2):
    assert su2.element([0, 1], 1) == su2.encode(0b11, 1)
    with pytest.raises(ValueError):
        su2.element(0b100, 0)


def test_sz_orders(z2, u2):
    assert expand_Sz(z2).order == 3
    z = expand_Sz(u2)
    assert z.decode(z.identity) == (0b01, 0)
    assert validate(materialize(z)) is None


def test_sz_closed_on_small_catalog():
    for e in catalog.entries(5):
        materialize(expand_Sz(e.monoid))


def test_retraction(su2):
    r = retraction(su2)
    assert r.project(su2.encode(0b01, 1)) == 1
    assert all(r.project(r.embed(a)) == a for a in range(2))


def test_materialize(su2, s_z2):
    m = materialize(su2)
    assert m.order == 8 and validate(m) is None
    rep = classify(materialize(s_z2))
    assert rep.inverse


def test_materialize_over_cap():
    with pytest.raises(CapacityError):
        materialize(expand_S(catalog.make_cyclic_group(10)))


def test_base_over_cap():
    with pytest.raises(CapacityError):
        expand_S(catalog.make_chain_semilattice(21))


def test_products_and_adjoin(u2, z2):
    assert direct_product(u2, z2).order == 4
    m = adjoin_identity([[0, 1], [0, 1]])
    assert m.order == 3 and validate(m) is None
    assert is_isomorphic(direct_product(u2, catalog.make_trivial()), u2)


def test_lazy_validation_of_large_view():
    v = expand_S(catalog.make_chain_semilattice(10))
    assert v.order == 10 * 1024
    assert validate(v, spot_checks=2000) is None
