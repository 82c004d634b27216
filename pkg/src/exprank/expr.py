"""Expression language for ``exprank eval``.

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ['^' ['-'] int]
    atom    := int | 't^{' exponent '}' | 'e(' label ',' int ')'
             | func '(' expr ')' | '(' expr ')'
    func    := log | exp | v | vG | chi | zeta | inv

Values are rationals, group elements, index points or series.  Integers and
rationals act as constant series where a series is expected.  Series at
different tower stages are lifted to the higher stage before combining.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .contraction import chi_model, zeta_apply
from .errors import DomainError
from .explog import PrecisionPolicy, full_exp, full_log
from .groups import GroupElement, IndexPoint, OrderTypeSpec
from .series import INF, Series
from .text import Scanner, read_exponent, read_point
from .tower import StageGroup, stage_of, tower_build, tower_embed

__all__ = ["Evaluator", "evaluate", "format_value"]

_NAME = re.compile(r"[A-Za-z]+")
_FUNCS = ("log", "exp", "vG", "v", "chi", "zeta", "inv")


class Evaluator:
    def __init__(self, base: OrderTypeSpec, depth=3, taylor_order=4, mode="monic",
                 width=Fraction(1, 10 ** 6), max_depth=3):
        self.base = base
        self.policy = PrecisionPolicy(taylor_order)
        self.tower = tower_build(base, depth, max_depth, mode, width, self.policy)

    def evaluate(self, text: str):
        sc = Scanner(text)
        value = self._expr(sc)
        if not sc.at_end():
            sc.fail("unexpected trailing text")
        return value

    # grammar

    def _expr(self, sc):
        value = self._term(sc)
        while True:
            if sc.eat("+"):
                value = self._add(sc, value, self._term(sc), 1)
            elif sc.eat("-"):
                value = self._add(sc, value, self._term(sc), -1)
            else:
                return value

    def _term(self, sc):
        value = self._unary(sc)
        while True:
            pos = sc.pos
            if sc.eat("*"):
                value = self._mul(sc, value, self._unary(sc))
            elif sc.eat("/"):
                value = self._div(sc, value, self._unary(sc), pos)
            else:
                return value

    def _unary(self, sc):
        if sc.eat("-"):
            return self._neg(sc, self._unary(sc))
        return self._power(sc)

    def _power(self, sc):
        value = self._atom(sc)
        pos = sc.pos
        if sc.peek("^") and not sc.peek("^{"):
            sc.eat("^")
            n = sc.integer()
            value = self._pow(sc, value, n, pos)
        return value

    def _atom(self, sc):
        if sc.eat("("):
            value = self._expr(sc)
            sc.expect(")")
            return value
        if sc.peek("t^{"):
            return self._monomial(sc)
        if sc.match(re.compile(r"(?=\d)")) is not None:
            s = sc.match(re.compile(r"\d+"))
            return Fraction(int(s))
        start = sc.pos
        name = sc.match(_NAME)
        if name is None:
            sc.fail("expected a number, t^{...}, e(...) or a function")
        if name == "e" and sc.peek("("):
            p = read_point(sc, self.base)
            return GroupElement(self.base, {p: 1})
        if name not in _FUNCS:
            sc.pos = start
            sc.fail(f"unknown name {name!r}")
        sc.expect("(")
        arg = self._expr(sc)
        sc.expect(")")
        try:
            return getattr(self, "_f_" + name)(arg)
        except DomainError as exc:
            sc.pos = start
            sc.fail(str(exc))

    def _monomial(self, sc):
        sc.expect("t^{")
        m = re.compile(r"\s*s(\d+)").match(sc.text, sc.pos)
        U = self.base
        if m:
            n = int(m.group(1))
            if n > self.tower.depth:
                sc.fail(f"stage {n} exceeds the tower depth {self.tower.depth}")
            U = StageGroup(self.base, n)
        e = read_exponent(sc, U)
        sc.expect("}")
        return Series.monomial(U, e)

    # arithmetic

    def _as_series(self, x, sc):
        if isinstance(x, Series):
            return x
        if isinstance(x, Fraction):
            return Series.constant(self.base, x)
        sc.fail(f"expected a series, got {_kind(x)}")

    def _unify(self, a, b):
        n = max(stage_of(a.universe), stage_of(b.universe))
        return tower_embed(a, n), tower_embed(b, n)

    def _add(self, sc, x, y, sign):
        if isinstance(x, Fraction) and isinstance(y, Fraction):
            return x + sign * y
        if isinstance(x, GroupElement) and isinstance(y, GroupElement):
            return x + y if sign > 0 else x - y
        a, b = self._unify(self._as_series(x, sc), self._as_series(y, sc))
        return a + b if sign > 0 else a - b

    def _neg(self, sc, x):
        if isinstance(x, (Fraction, GroupElement, Series)):
            return -x
        sc.fail(f"cannot negate {_kind(x)}")

    def _mul(self, sc, x, y):
        if isinstance(x, Fraction) and isinstance(y, Fraction):
            return x * y
        if isinstance(x, GroupElement) and isinstance(y, Fraction):
            return x.scale(y)
        if isinstance(y, GroupElement) and isinstance(x, Fraction):
            return y.scale(x)
        a, b = self._unify(self._as_series(x, sc), self._as_series(y, sc))
        return a * b

    def _div(self, sc, x, y, pos):
        if isinstance(y, Fraction):
            if y == 0:
                sc.pos = pos
                sc.fail("division by zero")
            if isinstance(x, (Fraction, GroupElement, Series)):
                return x / y
        a, b = self._unify(self._as_series(x, sc), self._as_series(y, sc))
        return a * self._invert(b, sc, pos)

    def _invert(self, b, sc, pos):
        if not b.terms:
            sc.pos = pos
            sc.fail("division by zero")
        return b.invert(self.policy.taylor_order)

    def _pow(self, sc, x, n, pos):
        if isinstance(x, Fraction):
            if x == 0 and n < 0:
                sc.pos = pos
                sc.fail("division by zero")
            return x ** n
        a = self._as_series(x, sc)
        if n < 0:
            return self._invert(a, sc, pos) ** (-n)
        return a ** n

    # functions

    def _components(self, a: Series):
        return self.tower.components(stage_of(a.universe))

    def _series_arg(self, x):
        if isinstance(x, Fraction):
            return Series.constant(self.base, x)
        if not isinstance(x, Series):
            raise DomainError(f"expected a series, got {_kind(x)}")
        return x

    def _f_log(self, x):
        a = self._series_arg(x)
        return full_log(a, self._components(a), self.policy)

    def _f_exp(self, x):
        a = self._series_arg(x)
        return full_exp(a, self._components(a), self.policy)

    def _f_inv(self, x):
        a = self._series_arg(x)
        if not a.terms:
            raise DomainError("cannot invert zero")
        return a.invert(self.policy.taylor_order)

    def _f_v(self, x):
        return self._series_arg(x).v()

    def _f_vG(self, x):
        if isinstance(x, Series):
            x = x.v()
        if not isinstance(x, GroupElement):
            raise DomainError(f"vG needs a group element, got {_kind(x)}")
        return x.vG()

    def _f_chi(self, x):
        if not isinstance(x, GroupElement):
            raise DomainError(f"chi needs a group element, got {_kind(x)}")
        return chi_model(x)

    def _f_zeta(self, x):
        if not isinstance(x, IndexPoint):
            raise DomainError(f"zeta needs an index point, got {_kind(x)}")
        return zeta_apply(x)


def _kind(x) -> str:
    return {Fraction: "a rational", GroupElement: "a group element", IndexPoint: "an index point",
            Series: "a series"}.get(type(x), type(x).__name__)


def format_value(x, base: OrderTypeSpec) -> str:
    if x is INF:
        return "inf"
    if isinstance(x, IndexPoint):
        return base.format_point(x)
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


def evaluate(text: str, base: OrderTypeSpec, **kw):
    return Evaluator(base, **kw).evaluate(text)
