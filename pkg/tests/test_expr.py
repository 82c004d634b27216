from fractions import Fraction

import pytest

from exprank.errors import NotInImage, ParseError
from exprank.expr import Evaluator, evaluate, format_value
from exprank.groups import IndexPoint, OrderTypeSpec
from exprank.series import INF, Series
from exprank.tower import stage_universe

U = OrderTypeSpec.of_size(2)
EV = Evaluator(U, depth=2)


def show(text):
    return format_value(EV.evaluate(text), U)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("log(t^{-e(t0,0)})", "t^{-e(t0,1)} (exact)"),
        ("exp(t^{-e(t0,1)})", "t^{-e(t0,0)} (exact)"),
        ("exp(0)", "1 (exact)"),
        ("log(1)", "0 (exact)"),
        ("chi(-7*e(t0,0) + e(t0,2))", "-e(t0,1)"),
        ("zeta(vG(v(t^{e(t1,2)})))", "(t1,3)"),
        ("v(0)", "inf"),
        ("2/3 + 1/6", "5/6"),
        ("e(t0,0) - 2*e(t1,1)", "e(t0,0) - 2*e(t1,1)"),
        ("(1 + t^{e(t0,0)})^-1 * (1 + t^{e(t0,0)})", "1 (mod t^{5*e(t0,0)})"),
        ("exp(log(t^{s2{-t^{s1{-t^{-e(t0,0)}}}}}))", "t^{s2{-t^{s1{-t^{-e(t0,0)}}}}} (exact)"),
        ("t^{s1{-t^{-e(t0,0)}}} + t^{-e(t0,0)}", "t^{s1{-t^{-e(t0,0)}}} + t^{s1{-t^{-e(t0,1)}}} (exact)"),
    ],
)
def test_evaluations(text, expected):
    assert show(text) == expected


def test_values_have_the_right_types():
    assert EV.evaluate("3") == Fraction(3)
    assert EV.evaluate("vG(e(t1,0) + e(t0,4))") == IndexPoint(0, 4)
    assert EV.evaluate("v(t^{e(t0,0)})") == U.e("t0", 0)
    assert EV.evaluate("v(0)") is INF
    a = EV.evaluate("log(t^{s1{-t^{-e(t0,0)}}})")
    assert isinstance(a, Series) and a.universe == stage_universe(U, 1)


def test_taylor_order_sets_precision():
    short = Evaluator(U, taylor_order=2).evaluate("inv(1 - t^{e(t0,0)})")
    assert short.floor == U.e("t0", 0, 3)


@pytest.mark.parametrize(
    "text, pos",
    [
        ("1/0", 1),
        ("foo(1)", 0),
        ("t^{e(t0,0)} +", 13),
        ("chi(t^{e(t0,0)})", 0),
        ("zeta(e(t0,0))", 0),
        ("log(0)", 0),
        ("(1 + 2", 6),
        ("t^{s3{-t^{-e(t0,0)}}}", 3),
        ("1 2", 2),
    ],
)
def test_errors_carry_positions(text, pos):
    with pytest.raises(ParseError) as info:
        EV.evaluate(text)
    assert info.value.position == pos


def test_exp_outside_the_image_is_reported():
    with pytest.raises(NotInImage):
        EV.evaluate("exp(t^{-e(t0,0)/2})")
    # the same element embedded one stage up is in the domain
    lifted = "t^{s1{-1/2*t^{-e(t0,1)}}}"
    assert str(evaluate(f"exp({lifted})", U)) == "t^{s1{-t^{-1/2*e(t0,0)}}} (exact)"
