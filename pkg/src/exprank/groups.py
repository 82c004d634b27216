"""The divisible value group: a Hahn sum of copies of Q over Gamma = T x Z.

An element is a finite-support map from index points to rationals, ordered
lexicographically: it is positive iff the coefficient at the smallest index
in its support is positive.  The natural valuation ``vG`` sends a nonzero
element to that smallest index (its archimedean class), so bigger elements
have smaller classes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import DomainError, UniverseMismatch

__all__ = [
    "OrderTypeSpec",
    "IndexPoint",
    "GroupElement",
    "og_add",
    "og_scale",
    "og_compare",
    "og_vG",
    "og_arch_equiv",
    "lex_compare",
    "format_rational",
]


@dataclass(frozen=True)
class OrderTypeSpec:
    """A finite totally ordered set of labels; position in ``labels`` is the order."""

    labels: tuple

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise DomainError("an order type needs at least one label")
        if len(set(labels)) != len(labels):
            raise DomainError(f"duplicate labels in {labels}")
        for lab in labels:
            if not lab or not all(c.isalnum() or c == "_" for c in lab):
                raise DomainError(f"label {lab!r} must be alphanumeric")

    @classmethod
    def of_size(cls, n: int) -> "OrderTypeSpec":
        return cls(tuple(f"t{i}" for i in range(n)))

    @classmethod
    def parse(cls, text: str) -> "OrderTypeSpec":
        """``"3"`` gives t0<t1<t2; ``"a,b,c"`` gives a<b<c."""
        text = text.strip()
        if text.isdigit():
            return cls.of_size(int(text))
        return cls(tuple(p.strip() for p in text.split(",") if p.strip()))

    def __len__(self):
        return len(self.labels)

    def tier(self, label) -> int:
        if isinstance(label, int):
            if not 0 <= label < len(self.labels):
                raise DomainError(f"tier {label} out of range")
            return label
        try:
            return self.labels.index(label)
        except ValueError:
            raise DomainError(f"unknown label {label!r}") from None

    def label_of(self, point: "IndexPoint") -> str:
        return self.labels[point.tier]

    def point(self, label, offset: int) -> "IndexPoint":
        return IndexPoint(self.tier(label), int(offset))

    def e(self, label, offset: int, coeff=1) -> "GroupElement":
        """The element with coefficient ``coeff`` at index (label, offset)."""
        return GroupElement(self, {self.point(label, offset): coeff})

    def zero(self) -> "GroupElement":
        return GroupElement(self, ())

    def same_order_type(self, other: "OrderTypeSpec") -> bool:
        # finite total orders are isomorphic iff equinumerous
        return len(self) == len(other)

    def format_point(self, point: "IndexPoint") -> str:
        return f"({self.label_of(point)},{point.offset})"

    def __str__(self):
        return "{" + " < ".join(self.labels) + "}"


class IndexPoint(NamedTuple):
    """A point (label, offset) of Gamma; ``tier`` is the label's position in T.

    Tuple order is exactly the lexicographic order of Gamma.
    """

    tier: int
    offset: int


def lex_compare(a, b) -> int:
    """Sign of (a - b) for two sorted ((key, coeff), ...) sequences.

    Both sequences are finite-support functions sorted by key; the difference
    is decided at the smallest key where they disagree.
    """
    i = j = 0
    na, nb = len(a), len(b)
    while True:
        if i == na and j == nb:
            return 0
        if j == nb or (i < na and a[i][0] < b[j][0]):
            return 1 if a[i][1] > 0 else -1
        if i == na or b[j][0] < a[i][0]:
            return -1 if b[j][1] > 0 else 1
        ca, cb = a[i][1], b[j][1]
        if ca != cb:
            return 1 if ca > cb else -1
        i += 1
        j += 1


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _signed_terms(pieces):
    """Join (coeff, body) pairs into ``a + b - c``; body None means bare constant."""
    out = []
    for k, (c, body) in enumerate(pieces):
        neg = c < 0
        mag = -c if neg else c
        if body is None:
            txt = format_rational(mag)
        elif mag == 1:
            txt = body
        else:
            txt = f"{format_rational(mag)}*{body}"
        if k == 0:
            out.append(("-" if neg else "") + txt)
        else:
            out.append((" - " if neg else " + ") + txt)
    return "".join(out)


class GroupElement:
    """An element of the Hahn sum over Gamma with rational coefficients.

    Immutable.  ``items`` is a tuple of (IndexPoint, Fraction) sorted by index
    with no zero coefficients.
    """

    __slots__ = ("universe", "items", "_hash")

    def __init__(self, universe: OrderTypeSpec, coeffs=()):
        if isinstance(coeffs, dict):
            pairs = coeffs.items()
        else:
            pairs = coeffs
        acc = {}
        for ip, c in pairs:
            ip = IndexPoint(*ip)
            if not 0 <= ip.tier < len(universe.labels):
                raise DomainError(f"index {ip} outside universe {universe}")
            acc[ip] = acc.get(ip, 0) + Fraction(c)
        self.universe = universe
        self.items = tuple(sorted((k, v) for k, v in acc.items() if v != 0))
        self._hash = None

    @classmethod
    def _raw(cls, universe, items):
        obj = cls.__new__(cls)
        obj.universe = universe
        obj.items = items
        obj._hash = None
        return obj

    def _check(self, other):
        if not isinstance(other, GroupElement):
            return False
        if other.universe is not self.universe and other.universe != self.universe:
            raise UniverseMismatch(f"{self.universe} vs {other.universe}")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        if not other.items:
            return self
        if not self.items:
            return other
        acc = dict(self.items)
        for k, v in other.items:
            acc[k] = acc.get(k, 0) + v
        return GroupElement._raw(
            self.universe, tuple(sorted((k, v) for k, v in acc.items() if v != 0))
        )

    def __neg__(self):
        return GroupElement._raw(self.universe, tuple((k, -v) for k, v in self.items))

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return self + (-other)

    def scale(self, q) -> "GroupElement":
        q = Fraction(q)
        if q == 0:
            return GroupElement._raw(self.universe, ())
        return GroupElement._raw(self.universe, tuple((k, v * q) for k, v in self.items))

    def __mul__(self, q):
        if isinstance(q, (int, Fraction)):
            return self.scale(q)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, q):
        if isinstance(q, (int, Fraction)):
            return self.scale(1 / Fraction(q))
        return NotImplemented

    def compare(self, other) -> int:
        self._check(other)
        return lex_compare(self.items, other.items)

    def sign(self) -> int:
        if not self.items:
            return 0
        return 1 if self.items[0][1] > 0 else -1

    def __lt__(self, other):
        if not self._check(other):
            return NotImplemented
        return lex_compare(self.items, other.items) < 0

    def __le__(self, other):
        if not self._check(other):
            return NotImplemented
        return lex_compare(self.items, other.items) <= 0

    def __gt__(self, other):
        if not self._check(other):
            return NotImplemented
        return lex_compare(self.items, other.items) > 0

    def __ge__(self, other):
        if not self._check(other):
            return NotImplemented
        return lex_compare(self.items, other.items) >= 0

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        if self.items != other.items:
            return False
        return self.universe is other.universe or self.universe == other.universe

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.items)
        return self._hash

    def __bool__(self):
        return bool(self.items)

    def is_zero(self) -> bool:
        return not self.items

    def __abs__(self):
        return -self if self.sign() < 0 else self

    @property
    def support(self) -> tuple:
        return tuple(k for k, _ in self.items)

    def coeff(self, point) -> Fraction:
        for k, v in self.items:
            if k == point:
                return v
        return Fraction(0)

    def vG(self) -> IndexPoint:
        if not self.items:
            raise DomainError("the zero element has no archimedean class")
        return self.items[0][0]

    def restrict(self, keep) -> "GroupElement":
        """Keep only the coordinates whose index satisfies ``keep``."""
        return GroupElement._raw(self.universe, tuple((k, v) for k, v in self.items if keep(k)))

    def __str__(self):
        if not self.items:
            return "0"
        fmt = self.universe.format_point
        return _signed_terms([(v, "e" + fmt(k)) for k, v in self.items])

    def __repr__(self):
        return f"GroupElement({self})"


def og_add(a: GroupElement, b: GroupElement) -> GroupElement:
    return a + b


def og_scale(a: GroupElement, q) -> GroupElement:
    return a.scale(q)


def og_compare(a: GroupElement, b: GroupElement) -> str:
    return "<=>"[a.compare(b) + 1]


def og_vG(a: GroupElement) -> IndexPoint:
    return a.vG()


def og_arch_equiv(a: GroupElement, b: GroupElement) -> bool:
    """Same archimedean class, i.e. equal natural valuation."""
    if a.is_zero() or b.is_zero():
        raise DomainError("archimedean equivalence is defined for nonzero elements")
    return a.vG() == b.vG()
