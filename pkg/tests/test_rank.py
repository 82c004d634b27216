import pytest
from hypothesis import given
from hypothesis import strategies as st

from exprank.errors import DomainError
from exprank.explog import LogComponents, full_log, standard_components
from exprank.groups import IndexPoint, OrderTypeSpec
from exprank.rank import (
    FinalSegment,
    QuotientSegment,
    Window,
    check_epsilon_order,
    check_sigma_bijection,
    closed_segments_lack_minimum,
    cofinality_class_check,
    compatibility_verdicts,
    compatible_segments,
    enumerate_segments,
    epsilon,
    exponential_rank,
    incompatibility_witness,
    induced_contraction_agrees,
    is_compatible,
    log_preserves_nonring,
    principal_exponential_rank,
    principal_rank,
    sigma,
    value_closure_check,
)
from exprank.sampling import Sampler
from exprank.series import Series, hs_w_data
from strategies import positive_infinite, universe_and

SIZES = [OrderTypeSpec.of_size(n) for n in range(1, 6)]
SMALL = Window(-2, 2)


def test_segment_constructors_and_names():
    U = OrderTypeSpec.of_size(3)
    assert str(FinalSegment.all(U)) == "ALL"
    assert str(FinalSegment.cut(U, "t1", 2)) == "cut(t1,2)"
    assert str(FinalSegment.above(U, "t0")) == "above(t0)"
    assert FinalSegment.above(U, "t0") == FinalSegment.from_labels(U, "t1")
    with pytest.raises(DomainError):
        FinalSegment.above(U, "t2")
    with pytest.raises(DomainError):
        QuotientSegment(U, frozenset({0, 2}))


def test_segment_membership_and_order():
    U = OrderTypeSpec.of_size(2)
    cut = FinalSegment.cut(U, "t0", 1)
    assert cut.contains(IndexPoint(0, 1)) and not cut.contains(IndexPoint(0, 0))
    assert cut.contains(IndexPoint(1, -100))
    assert cut.minimum() == IndexPoint(0, 1)
    assert cut.issubset(FinalSegment.all(U))
    assert FinalSegment.above(U, "t0").issubset(cut)
    assert not FinalSegment.all(U).issubset(cut)
    with pytest.raises(DomainError):
        FinalSegment.all(U).minimum()
    assert cut.project(U.e("t0", 0) + U.e("t1", 0)) == U.e("t0", 0)


def test_cut_segments_are_incompatible_with_explicit_witness():
    U = OrderTypeSpec.of_size(2)
    comps = standard_components(U)
    cut = FinalSegment.cut(U, "t0", 0)
    assert not is_compatible(cut)
    assert compatibility_verdicts(cut, comps) == {"chi": False, "zeta": False, "closure": False}
    a = incompatibility_witness(cut, comps)
    assert a is not None
    assert not hs_w_data(a, cut).in_Rw
    assert hs_w_data(full_log(a, comps), cut).in_Rw
    assert incompatibility_witness(FinalSegment.above(U, "t0"), comps) is None


@pytest.mark.parametrize("U", SIZES, ids=lambda U: f"size{len(U)}")
def test_three_compatibility_verdicts_agree(U):
    comps = standard_components(U)
    for seg in enumerate_segments(U, SMALL):
        verdicts = compatibility_verdicts(seg, comps, SMALL)
        assert len(set(verdicts.values())) == 1, (str(seg), verdicts)
        assert verdicts["closure"] == (seg.offset is None)


@pytest.mark.parametrize("U", SIZES, ids=lambda U: f"size{len(U)}")
def test_sigma_and_epsilon(U):
    assert check_sigma_bijection(U, SMALL) == []
    assert check_epsilon_order(U, SMALL) == []
    assert closed_segments_lack_minimum(U, SMALL)


def test_sigma_identifies_equivalent_segments():
    U = OrderTypeSpec.of_size(3)
    cut = FinalSegment.cut(U, "t1", -2)
    assert sigma(cut) == sigma(FinalSegment.from_labels(U, "t1"))
    assert str(sigma(cut)) == "{t1,t2}"
    with pytest.raises(DomainError):
        epsilon(cut)


@pytest.mark.parametrize("U", SIZES, ids=lambda U: f"size{len(U)}")
def test_exponential_rank_has_one_segment_per_label(U):
    rank = exponential_rank(U)
    assert len(rank) == len(U)
    assert all(a.issubset(b) for a, b in zip(rank, rank[1:]))
    assert [epsilon(s) for s in compatible_segments(U)] == rank
    assert principal_exponential_rank(U).labels == U.labels


def test_principal_rank_on_named_labels():
    U = OrderTypeSpec(("a", "b", "c"))
    assert principal_exponential_rank(U).labels == ("a", "b", "c")
    info = principal_rank(U, SMALL)
    assert info["order_reversing"] and info["segments_are_unions_of_principal"]
    assert not info["whole_group_principal"]
    assert "cut(a,-2)" in info["principal_in_window"]


@given(universe_and(lambda U: st.tuples(positive_infinite(U), st.integers(0, len(U) - 1))))
def test_log_keeps_positive_elements_outside_compatible_rings(data):
    U, (a, tier) = data
    seg = FinalSegment(U, tier, None)
    assert log_preserves_nonring(seg, [a], standard_components(U)) is None


@given(universe_and(positive_infinite))
def test_cofinality_class(data):
    U, a = data
    seg = FinalSegment(U, a.v().vG().tier, None)
    assert cofinality_class_check(a, seg)
    assert hs_w_data(a, seg).in_Rw
    if seg.tier + 1 < len(U):
        smaller = FinalSegment(U, seg.tier + 1, None)
        assert not cofinality_class_check(a, smaller)
        assert not hs_w_data(a, smaller).in_Rw


@pytest.mark.parametrize("size", [2, 3])
def test_induced_contraction_and_value_closure(size):
    U = OrderTypeSpec.of_size(size)
    comps = standard_components(U)
    sm = Sampler(7)
    samples = [sm.positive(U, monic=True) for _ in range(60)]
    for seg in compatible_segments(U)[1:]:
        assert induced_contraction_agrees(seg, samples, comps) is None
        assert value_closure_check(seg, samples, comps) is None
    with pytest.raises(DomainError):
        induced_contraction_agrees(FinalSegment.cut(U, "t0", 0), samples, comps)


def test_value_closure_catches_a_violation():
    # log of t^{-e(t1,0)} has value -e(t1,1), inside G_w for above(t0);
    # a log that moved values out of G_w must be reported.
    U = OrderTypeSpec.of_size(2)
    comps = standard_components(U)
    seg = FinalSegment.above(U, "t0")
    a = Series.monomial(U, -U.e("t1", 0))
    assert value_closure_check(seg, [a], comps) is None
    broken = LogComponents(lambda g: Series.monomial(U, -U.e("t0", 0)) if g else Series.zero(U))
    assert value_closure_check(seg, [a], broken) == a
