"""Truncated Hahn series over an ordered exponent group with rational coefficients.

A :class:`Series` stores finitely many terms and an error floor: the true
element minus the stored polynomial has valuation at least ``floor``
(``INF`` means the stored polynomial is exact).  Every stored exponent lies
strictly below the floor, so the leading stored term, when there is one, is
the true leading term.

Exponents may be any immutable, hashable, totally ordered group elements
supporting ``+``, unary ``-``, rational scaling and ``sign()``; the base
field uses :class:`~exprank.groups.GroupElement`, the tower stages use
:class:`~exprank.tower.StageElement`.  The universe object must provide
``zero()``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import DomainError, IndeterminateValuation, PrecisionInsufficient, UniverseMismatch
from .groups import _signed_terms, lex_compare

__all__ = [
    "INF",
    "Series",
    "MulDecomposition",
    "AddDecomposition",
    "WData",
    "hs_v",
    "hs_add",
    "hs_neg",
    "hs_scale",
    "hs_mul",
    "hs_invert",
    "hs_compare",
    "hs_decompose_mul",
    "hs_decompose_add",
    "hs_w_data",
]


class _Infinity:
    """+inf: the value of 0, larger than every group element."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("exprank.INF")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise DomainError("inf - inf is undefined")
        return self

    def __mul__(self, q):
        if q <= 0:
            raise DomainError("inf may only be scaled by a positive number")
        return self

    __rmul__ = __mul__

    def sign(self):
        return 1

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "+inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def _min(a, b):
    return b if b < a else a


class Series:
    """An element of Q((G)) known modulo terms of valuation >= ``floor``."""

    __slots__ = ("universe", "terms", "floor", "_hash")

    def __init__(self, universe, terms=(), floor=INF):
        if isinstance(terms, dict):
            terms = terms.items()
        acc = {}
        for e, c in terms:
            acc[e] = acc.get(e, 0) + Fraction(c)
        self.universe = universe
        self.floor = floor
        self.terms = tuple(sorted(((e, c) for e, c in acc.items() if c != 0 and e < floor), key=_key))
        self._hash = None

    @classmethod
    def _raw(cls, universe, terms, floor):
        obj = cls.__new__(cls)
        obj.universe = universe
        obj.terms = terms
        obj.floor = floor
        obj._hash = None
        return obj

    @classmethod
    def _from_acc(cls, universe, acc, floor):
        terms = tuple(sorted(((e, c) for e, c in acc.items() if c != 0 and e < floor), key=_key))
        return cls._raw(universe, terms, floor)

    # constructors

    @classmethod
    def zero(cls, universe) -> "Series":
        return cls._raw(universe, (), INF)

    @classmethod
    def constant(cls, universe, q) -> "Series":
        q = Fraction(q)
        return cls._raw(universe, ((universe.zero(), q),) if q else (), INF)

    @classmethod
    def monomial(cls, universe, exponent, coeff=1) -> "Series":
        coeff = Fraction(coeff)
        return cls._raw(universe, ((exponent, coeff),) if coeff else (), INF)

    # inspection

    @property
    def is_exact(self) -> bool:
        return self.floor is INF

    @property
    def stored_zero(self) -> bool:
        return not self.terms

    def v(self):
        """Valuation: minimal stored exponent, INF for an exact zero."""
        if self.terms:
            return self.terms[0][0]
        if self.floor is INF:
            return INF
        raise IndeterminateValuation(f"valuation of 0 (mod t^{{{self.floor}}}) is unknown")

    def leading(self):
        if not self.terms:
            if self.floor is INF:
                raise DomainError("zero has no leading term")
            raise IndeterminateValuation("no stored term above the floor")
        return self.terms[0]

    def coeff(self, exponent) -> Fraction:
        for e, c in self.terms:
            if e == exponent:
                return c
        return Fraction(0)

    @property
    def support(self) -> tuple:
        return tuple(e for e, _ in self.terms)

    def truncate(self, floor) -> "Series":
        """Forget everything at or above ``floor`` (the floor can only drop)."""
        floor = _min(self.floor, floor)
        return Series._raw(self.universe, tuple((e, c) for e, c in self.terms if e < floor), floor)

    def with_floor(self, floor) -> "Series":
        return self.truncate(floor)

    # ring operations

    def _check(self, other):
        if other.universe is not self.universe and other.universe != self.universe:
            raise UniverseMismatch(f"{self.universe} vs {other.universe}")

    def _coerce(self, other):
        if isinstance(other, Series):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Series.constant(self.universe, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        floor = _min(self.floor, other.floor)
        acc = {}
        for e, c in self.terms:
            acc[e] = c
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return Series._from_acc(self.universe, acc, floor)

    __radd__ = __add__

    def __neg__(self):
        return Series._raw(self.universe, tuple((e, -c) for e, c in self.terms), self.floor)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, q) -> "Series":
        q = Fraction(q)
        if q == 0:
            return Series.zero(self.universe)
        return Series._raw(self.universe, tuple((e, c * q) for e, c in self.terms), self.floor)

    def shift(self, exponent) -> "Series":
        """Multiply by the exact monomial t^exponent."""
        return Series._raw(
            self.universe,
            tuple((e + exponent, c) for e, c in self.terms),
            self.floor + exponent if self.floor is not INF else INF,
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Series):
            return NotImplemented
        self._check(other)
        fa, fb = self.floor, other.floor
        floor = INF
        if self.terms and fb is not INF:
            floor = _min(floor, self.terms[0][0] + fb)
        if other.terms and fa is not INF:
            floor = _min(floor, other.terms[0][0] + fa)
        if fa is not INF and fb is not INF:
            floor = _min(floor, fa + fb)
        acc = {}
        for ea, ca in self.terms:
            for eb, cb in other.terms:
                e = ea + eb
                acc[e] = acc.get(e, 0) + ca * cb
        return Series._from_acc(self.universe, acc, floor)

    __rmul__ = __mul__

    def __truediv__(self, q):
        if isinstance(q, (int, Fraction)):
            return self.scale(1 / Fraction(q))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = Series.constant(self.universe, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def invert(self, taylor_order: int) -> "Series":
        return hs_invert(self, taylor_order)

    # order

    def sign(self) -> int:
        if self.terms:
            return 1 if self.terms[0][1] > 0 else -1
        if self.floor is INF:
            return 0
        raise PrecisionInsufficient(f"sign of 0 (mod t^{{{self.floor}}}) is undetermined")

    def compare(self, other) -> int:
        other = self._coerce(other)
        if self.floor is INF and other.floor is INF:
            return lex_compare(self.terms, other.terms)
        return (self - other).sign()

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def agrees_with(self, other) -> bool:
        """Equal stored terms below the lower of the two floors."""
        floor = _min(self.floor, other.floor)
        return self.truncate(floor).terms == other.truncate(floor).terms

    # structural equality: same stored terms and same floor
    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.terms == other.terms and self.floor == other.floor and self.universe == other.universe

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.terms, self.floor))
        return self._hash

    def __str__(self):
        return f"{self.body()} {self.floor_text()}"

    def body(self) -> str:
        if not self.terms:
            return "0"
        return _signed_terms(
            [(c, None if e.is_zero() else f"t^{{{e}}}") for e, c in self.terms]
        )

    def floor_text(self) -> str:
        return "(exact)" if self.floor is INF else f"(mod t^{{{self.floor}}})"

    def __repr__(self):
        return f"Series({self})"


class _Key:
    __slots__ = ("e",)

    def __init__(self, e):
        self.e = e

    def __lt__(self, other):
        return self.e < other.e


def _key(pair):
    return _Key(pair[0])


# decompositions


@dataclass(frozen=True)
class MulDecomposition:
    """a = residue * t^exponent * one_unit, with one_unit = 1 + eps, v(eps) > 0."""

    exponent: object
    residue: Fraction
    one_unit: Series

    def recompose(self) -> Series:
        return self.one_unit.shift(self.exponent).scale(self.residue)


@dataclass(frozen=True)
class AddDecomposition:
    """a = infinite_part + constant + infinitesimal."""

    infinite_part: Series
    constant: Fraction
    infinitesimal: Series

    def recompose(self) -> Series:
        return self.infinite_part + self.constant + self.infinitesimal


class WData(NamedTuple):
    in_Rw: bool
    in_Iw: bool
    in_units: bool
    wa: object  # GroupElement (projection of va) or INF


def hs_v(a: Series):
    return a.v()


def hs_add(a: Series, b: Series) -> Series:
    return a + b


def hs_neg(a: Series) -> Series:
    return -a


def hs_scale(a: Series, q) -> Series:
    return a.scale(q)


def hs_mul(a: Series, b: Series) -> Series:
    return a * b


def hs_compare(a: Series, b: Series) -> str:
    return "<=>"[a.compare(b) + 1]


def hs_decompose_mul(a: Series) -> MulDecomposition:
    if a.sign() <= 0:
        raise DomainError(f"multiplicative decomposition needs a > 0, got {a}")
    g, r = a.terms[0]
    u = a.shift(-g).scale(1 / r)
    return MulDecomposition(g, r, u)


def hs_decompose_add(a: Series) -> AddDecomposition:
    zero = a.universe.zero()
    if not zero < a.floor:
        raise PrecisionInsufficient(f"constant term of {a} is not determined")
    inf_terms = tuple((e, c) for e, c in a.terms if e.sign() < 0)
    const = a.coeff(zero)
    small = tuple((e, c) for e, c in a.terms if e.sign() > 0)
    return AddDecomposition(
        Series._raw(a.universe, inf_terms, INF),
        const,
        Series._raw(a.universe, small, a.floor),
    )


def hs_invert(a: Series, taylor_order: int) -> Series:
    """1/a via r^-1 t^-g sum_{i<=N} (-eps)^i, floor -g + (N+1) v(eps)."""
    if taylor_order < 0:
        raise DomainError("taylor order must be nonnegative")
    if not a.terms:
        raise DomainError(f"cannot invert {a}")
    g, r = a.terms[0]
    u = a.shift(-g).scale(1 / r)
    eps = u - 1
    if eps.terms:
        cap = eps.terms[0][0] * (taylor_order + 1)
    else:
        cap = eps.floor
    acc = Series.constant(a.universe, 1)
    power = Series.constant(a.universe, 1)
    neg = -eps
    for _ in range(taylor_order):
        power = (power * neg).truncate(cap)
        acc = acc + power
    return acc.truncate(cap).shift(-g).scale(1 / r)


def hs_w_data(a: Series, seg) -> WData:
    """Membership of a in R_w, I_w, U_w and the value wa = va mod G_w.

    ``seg`` is a final segment of Gamma (anything with ``contains(point)``);
    G_w consists of the elements supported inside it, so wa is va with the
    coordinates inside the segment dropped.
    """
    va = a.v()
    if va is INF:
        return WData(True, True, False, INF)
    wa = va.restrict(lambda p: not seg.contains(p))
    s = wa.sign()
    return WData(s >= 0, s > 0, s == 0, wa)
