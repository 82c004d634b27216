from hypothesis import given
from hypothesis import strategies as st

import pytest

from exprank.contraction import (
    ZetaMap,
    chi_equiv,
    chi_equiv_witness,
    chi_model,
    zeta_apply,
    zeta_equiv,
    zeta_equiv_witness,
    zeta_quotient_order_type,
)
from exprank.errors import DomainError
from exprank.groups import IndexPoint, OrderTypeSpec
from strategies import negatives, points, universe_and

Z = OrderTypeSpec.of_size(1)


def e(n, c=1):
    return Z.e("t0", n, c)


def test_successor_examples():
    assert zeta_apply(IndexPoint(0, 0)) == IndexPoint(0, 1)
    assert zeta_apply(IndexPoint(0, -3)) == IndexPoint(0, -2)


def test_zeta_equivalence_examples():
    assert zeta_equiv(IndexPoint(0, 0), IndexPoint(0, 1000))
    assert zeta_equiv_witness(IndexPoint(0, 0), IndexPoint(0, 1000), 1000) == 1000
    assert not zeta_equiv(IndexPoint(0, 0), IndexPoint(1, 0))
    assert zeta_equiv(IndexPoint(1, 4), IndexPoint(1, 4))


def test_quotient_order_type_examples():
    for labels in [("x",), ("a", "b"), ("a", "b", "c")]:
        U = OrderTypeSpec(labels)
        assert len(zeta_quotient_order_type(ZetaMap(U))) == len(labels)


def test_chi_examples():
    assert chi_model(-e(0)) == -e(1)
    assert chi_model(e(0, -5) + e(2)) == -e(1)
    assert chi_model(chi_model(-e(0))) == -e(2)
    with pytest.raises(DomainError):
        chi_model(e(0))


def test_chi_equivalence_examples():
    assert chi_equiv(-e(0), -e(3))
    assert chi_equiv_witness(-e(0), -e(3), 8) == 3
    U = OrderTypeSpec(("a", "b"))
    assert not chi_equiv(-U.e("a", 0), -U.e("b", 0))
    g = e(1, -2) + e(4)
    assert chi_equiv(g, chi_model(g))


@given(universe_and(lambda U: st.tuples(points(U), points(U))))
def test_zeta_is_increasing_and_order_preserving(data):
    U, (p, q) = data
    assert zeta_apply(p) > p
    assert (p < q) == (zeta_apply(p) < zeta_apply(q))


@given(universe_and(lambda U: st.tuples(points(U), points(U))))
def test_zeta_descriptor_matches_witness_search(data):
    U, (p, q) = data
    # offsets lie in [-4, 4], so a witness needs at most 8 steps
    assert zeta_equiv(p, q) == (zeta_equiv_witness(p, q, 8) is not None)


@given(universe_and(lambda U: st.tuples(negatives(U), negatives(U))))
def test_chi_shape_properties(data):
    U, (g, h) = data
    assert g < chi_model(g)
    assert chi_model(g).vG() == zeta_apply(g.vG())
    if g.vG() == h.vG():
        assert chi_model(g) == chi_model(h)
    if g.vG() >= h.vG():
        assert chi_model(g) >= chi_model(h)
    assert chi_equiv(g, h) == zeta_equiv(g.vG(), h.vG())
    # offsets lie in [-4, 4]: a gap of 8 classes plus one step for the coefficient
    assert chi_equiv(g, h) == (chi_equiv_witness(g, h, 9) is not None)
    if chi_equiv(g, h):
        assert chi_equiv(g, g + h)
