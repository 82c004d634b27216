import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from exprank.errors import DomainError, IndeterminateValuation, PrecisionInsufficient, UniverseMismatch
from exprank.groups import OrderTypeSpec
from exprank.rank import FinalSegment
from exprank.series import (
    INF,
    Series,
    hs_compare,
    hs_decompose_add,
    hs_decompose_mul,
    hs_invert,
    hs_mul,
    hs_v,
    hs_w_data,
)
from oracles import floor_key, from_series, s_add, s_below, s_inverse, s_mul
from strategies import infinitesimals, positive_infinite, positives, series, universe_and

Z = OrderTypeSpec.of_size(1)
e0 = Z.e("t0", 0)


def t(g, c=1, U=Z):
    return Series.monomial(U, g, c)


def test_valuation_examples():
    assert hs_v(t(-e0) + 3) == -e0
    assert hs_v(Series.zero(Z)) is INF
    assert hs_v(t(e0) + 1) == Z.zero()
    with pytest.raises(IndeterminateValuation):
        Series.zero(Z).truncate(e0).v()


def test_addition_examples():
    assert (1 + t(e0)) + (1 - t(e0)) == Series.constant(Z, 2)
    a = (t(-e0) + 1).truncate(e0 * 3)
    assert (a - a).stored_zero and (a - a).floor == e0 * 3
    b = Series.constant(Z, 1).truncate(e0 * 2)
    assert (a + b).floor == e0 * 2


def test_multiplication_examples():
    assert (1 + t(e0)) * (1 - t(e0)) == 1 - t(e0 * 2)
    U = OrderTypeSpec.of_size(2)
    g, h = U.e("t0", 1), -U.e("t1", 3)
    assert t(g, U=U) * t(h, U=U) == t(g + h, U=U)


def test_inverse_examples():
    assert hs_invert(t(-e0), 4) == t(e0)
    inv = hs_invert(1 + t(e0), 2)
    assert inv == Series(Z, [(Z.zero(), 1), (e0, -1), (e0 * 2, 1)], e0 * 3)
    assert str(inv) == "1 - t^{e(t0,0)} + t^{2*e(t0,0)} (mod t^{3*e(t0,0)})"
    prod = hs_mul(1 + t(e0), inv)
    assert prod.agrees_with(Series.constant(Z, 1))
    with pytest.raises(DomainError):
        hs_invert(Series.zero(Z), 2)


def test_compare_examples():
    assert hs_compare(t(-e0), Series.constant(Z, 10 ** 6)) == ">"
    assert hs_compare(1 + t(e0), Series.constant(Z, 1)) == ">"
    assert hs_compare(t(-e0) + 2, t(-e0) + 2) == "="
    with pytest.raises(PrecisionInsufficient):
        Series.constant(Z, 1).truncate(Z.zero()).sign()


def test_decomposition_examples():
    d = hs_decompose_mul(t(-e0, 3) + 3)
    assert (d.exponent, d.residue, d.one_unit) == (-e0, 3, 1 + t(e0))
    d = hs_decompose_mul(Series.constant(Z, 1))
    assert (d.exponent, d.residue, d.one_unit) == (Z.zero(), 1, Series.constant(Z, 1))
    d = hs_decompose_add(t(-e0) + 2 + t(e0))
    assert (d.infinite_part, d.constant, d.infinitesimal) == (t(-e0), 2, t(e0))
    with pytest.raises(DomainError):
        hs_decompose_mul(-t(e0))


def test_coarsening_data_examples():
    U = OrderTypeSpec(("a", "b"))
    seg = FinalSegment.from_labels(U, "b")
    d = hs_w_data(t(U.e("b", 0), U=U), seg)
    assert d.in_Rw and d.wa.is_zero()
    d = hs_w_data(t(-U.e("a", 0), U=U), seg)
    assert not d.in_Rw and d.wa == -U.e("a", 0)
    whole = FinalSegment.all(U)
    assert hs_w_data(t(-U.e("a", 0), U=U), whole).wa.is_zero()


def test_universe_mismatch():
    with pytest.raises(UniverseMismatch):
        t(e0) + t(OrderTypeSpec.of_size(2).e("t1", 0), U=OrderTypeSpec.of_size(2))


def test_printing():
    a = t(-e0, 3) + 3 + t(e0)
    assert str(a) == "3*t^{-e(t0,0)} + 3 + t^{e(t0,0)} (exact)"
    assert str(Series.zero(Z)) == "0 (exact)"


# oracle equivalence: stored terms below the floor are exactly right

pairs = universe_and(lambda U: st.tuples(series(U), series(U), positives(U), positives(U), series(U, 1)))


def _cut(a, extra):
    # truncate an exact series somewhere above or inside its support
    if not a.terms:
        return a.truncate(extra)
    return a.truncate(a.terms[len(a.terms) // 2][0] + extra)


@given(pairs)
def test_add_and_mul_match_oracle(data):
    U, (a, b, fa, fb, _) = data
    a2, b2 = _cut(a, fa), _cut(b, fb)
    s = a2 + b2
    assert from_series(s) == s_below(s_add(from_series(a), from_series(b)), floor_key(s))
    p = a2 * b2
    assert from_series(p) == s_below(s_mul(from_series(a), from_series(b)), floor_key(p))
    # exact inputs give exact results
    assert (a * b).is_exact and from_series(a * b) == s_mul(from_series(a), from_series(b))


@given(universe_and(lambda U: st.tuples(series(U), st.integers(0, 4))))
def test_invert_matches_geometric_oracle(data):
    U, (a, n) = data
    assume(a.terms)
    inv = hs_invert(a, n)
    truth = s_inverse(from_series(a), n + 2)
    assert from_series(inv) == s_below(truth, floor_key(inv))


@given(universe_and(lambda U: st.tuples(series(U), series(U), series(U))))
def test_ring_laws(data):
    U, (a, b, c) = data
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


@given(universe_and(lambda U: st.tuples(series(U), series(U))))
def test_valuation_laws(data):
    U, (a, b) = data
    assume(a.terms and b.terms)
    assert (a * b).v() == a.v() + b.v()
    assert (-a).v() == a.v()
    if (a + b).terms:
        assert (a + b).v() >= min(a.v(), b.v())


@given(universe_and(lambda U: st.tuples(series(U), series(U))))
def test_order_axioms(data):
    U, (a, b) = data
    assume(a.terms and b.terms)
    a, b = (a if a.sign() > 0 else -a), (b if b.sign() > 0 else -b)
    assert (a + b).sign() > 0 and (a * b).sign() > 0
    x, y = sorted([a, b], key=lambda s: _Cmp(s))
    assert x.v() >= y.v()


class _Cmp:
    def __init__(self, s):
        self.s = s

    def __lt__(self, other):
        return self.s < other.s


@given(universe_and(infinitesimals))
def test_infinitesimals_are_small(data):
    U, eps = data
    assert abs_series(eps) < 1
    assert (1 + eps).sign() > 0


def abs_series(a):
    return a if a.sign() >= 0 else -a


@given(universe_and(lambda U: series(U, exact=False)))
def test_decomposition_round_trips(data):
    U, a = data
    assume(a.terms and a.sign() > 0)
    assert hs_decompose_mul(a).recompose().agrees_with(a)
    if a.floor > U.zero():
        assert hs_decompose_add(a).recompose().agrees_with(a)


@given(universe_and(lambda U: st.tuples(positive_infinite(U), positive_infinite(U), st.integers(0, len(U) - 1))))
def test_coarsening_value_is_a_homomorphism(data):
    U, (a, b, tier) = data
    seg = FinalSegment(U, tier, None)
    wa, wb = hs_w_data(a, seg).wa, hs_w_data(b, seg).wa
    assert hs_w_data(a * b, seg).wa == wa + wb
    if a <= b:
        assert -wa <= -wb
