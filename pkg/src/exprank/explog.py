"""Logarithms on Q((G)) assembled from a strong logarithmic cross-section.

A positive element factors as a = r * t^g * (1 + eps).  Its logarithm is

    log a = h(-g) + log_mid(r) + rlog(1 + eps)

where ``h`` is the cross-section (the left part, landing in the negative
support series), ``log_mid`` a logarithm on the residue field and ``rlog``
the Mercator series (the right part).  The exponential inverts this where
the infinite part of its argument lies in the image of ``h``.

Residues are rational, so in the default monic mode only residue 1 can be
logged exactly.  ``normalized_log`` divides out the residue first; it differs
from the true logarithm by the constant log r, which never changes the
valuation of an infinite result.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .contraction import GroupCrossSection, chi_model, zeta_apply, zeta_equiv, zeta_inverse
from .errors import (
    DomainError,
    IncompatibleLog,
    NonMonicResidue,
    NotInImage,
    PrecisionInsufficient,
)
from .groups import GroupElement, IndexPoint, OrderTypeSpec
from .series import INF, Series, hs_decompose_add, hs_decompose_mul

__all__ = [
    "PrecisionPolicy",
    "LogCrossSection",
    "ResidueLog",
    "CanonicalRightLog",
    "LogComponents",
    "AssembledLog",
    "rexp",
    "rlog",
    "cross_section_apply",
    "full_log",
    "full_exp",
    "normalized_log",
    "chi_from_log",
    "zeta_from_chi",
    "check_strong",
    "check_T1",
    "t1_defect_valuation",
    "check_growth",
    "ell_equiv",
    "ell_equiv_witness",
    "assemble_log",
    "decompose_log",
    "standard_components",
]


@dataclass(frozen=True)
class PrecisionPolicy:
    taylor_order: int = 4

    def __post_init__(self):
        if self.taylor_order < 1:
            raise DomainError("taylor_order must be at least 1")


DEFAULT_POLICY = PrecisionPolicy()


# right logarithm / right exponential


def _infinitesimal_order(eps: Series, what: str):
    """The valuation to use for the Taylor remainder of eps; must be > 0."""
    if eps.terms:
        v = eps.terms[0][0]
        if v.sign() <= 0:
            raise DomainError(f"{what} needs v(eps) > 0, got v = {v}")
        return v
    if eps.floor is INF:
        return INF
    if eps.floor.sign() <= 0:
        raise PrecisionInsufficient(f"{what}: eps = {eps} is not certified infinitesimal")
    return eps.floor


def rexp(eps: Series, policy: PrecisionPolicy = DEFAULT_POLICY) -> Series:
    """sum_{i<=N} eps^i / i!, floor min(propagated, (N+1) v(eps))."""
    v = _infinitesimal_order(eps, "rexp")
    n = policy.taylor_order
    cap = INF if v is INF else v * (n + 1)
    acc = Series.constant(eps.universe, 1)
    power = acc
    for i in range(1, n + 1):
        # terms past the cap only feed terms past the cap
        power = (power * eps).truncate(cap)
        acc = acc + power.scale(Fraction(1, factorial(i)))
    return acc.truncate(cap)


def rlog(u: Series, policy: PrecisionPolicy = DEFAULT_POLICY) -> Series:
    """Mercator series sum_{i<=N} (-1)^(i+1) eps^i / i for u = 1 + eps."""
    eps = u - 1
    v = _infinitesimal_order(eps, "rlog")
    n = policy.taylor_order
    cap = INF if v is INF else v * (n + 1)
    acc = Series.zero(u.universe)
    power = Series.constant(u.universe, 1)
    for i in range(1, n + 1):
        power = (power * eps).truncate(cap)
        acc = acc + power.scale(Fraction((-1) ** (i + 1), i))
    return acc.truncate(cap)


@dataclass(frozen=True)
class CanonicalRightLog:
    """The right logarithm inverse to the exponential Taylor series."""

    def __call__(self, u: Series, policy: PrecisionPolicy = DEFAULT_POLICY) -> Series:
        return rlog(u, policy)

    def inverse(self, eps: Series, policy: PrecisionPolicy = DEFAULT_POLICY) -> Series:
        return rexp(eps, policy)


# residue logarithm


def _log_series_enclosure(r: Fraction, terms: int):
    """Enclosure of log r = 2 atanh(x), x = (r-1)/(r+1), with ``terms`` terms."""
    x = (r - 1) / (r + 1)
    s = Fraction(0)
    xp = x
    x2 = x * x
    for k in range(terms):
        s += xp / (2 * k + 1)
        xp *= x2
    s *= 2
    # |tail| <= 2|x|^(2K+1) / ((2K+1)(1-x^2))
    tail = 2 * abs(xp) / ((2 * terms + 1) * (1 - x2))
    return s - tail, s + tail


def _exp_enclosure(q: Fraction, terms: int):
    # e^q = (e^(q/m))^m with |q/m| <= 1
    m = 1
    while abs(q) > m:
        m *= 2
    y = q / m
    s = Fraction(0)
    p = Fraction(1)
    for i in range(terms):
        s += p
        p = p * y / (i + 1)
    # |tail| <= |y|^K / K! * e <= 3 |p|
    tail = 3 * abs(p)
    lo, hi = s - tail, s + tail
    if lo <= 0:
        return lo, hi
    return lo ** m, hi ** m


@dataclass(frozen=True)
class ResidueLog:
    """Logarithm on the residue field Q.

    ``monic``: only log 1 = 0 (and exp 0 = 1) are available.
    ``interval``: log r and exp q are enclosed in rational intervals of width
    at most ``width``; the midpoint is used as a reported value only.
    """

    mode: str = "monic"
    width: Fraction = Fraction(1, 10 ** 6)

    def __post_init__(self):
        if self.mode not in ("monic", "interval"):
            raise DomainError(f"unknown residue mode {self.mode!r}")
        object.__setattr__(self, "width", Fraction(self.width))

    def enclose_log(self, r) -> tuple:
        r = Fraction(r)
        if r <= 0:
            raise DomainError("log of a nonpositive residue")
        if r == 1:
            return Fraction(0), Fraction(0)
        # r = 2^k m with m in [2/3, 4/3]; |x| <= 1/3 for both parts
        k = 0
        m = r
        while m > Fraction(4, 3):
            m /= 2
            k += 1
        while m < Fraction(2, 3):
            m *= 2
            k -= 1
        terms = 4
        while True:
            lo_m, hi_m = _log_series_enclosure(m, terms)
            lo2, hi2 = _log_series_enclosure(Fraction(2), terms)
            if k >= 0:
                lo, hi = lo_m + k * lo2, hi_m + k * hi2
            else:
                lo, hi = lo_m + k * hi2, hi_m + k * lo2
            if hi - lo <= self.width:
                return lo, hi
            terms *= 2

    def enclose_exp(self, q) -> tuple:
        q = Fraction(q)
        if q == 0:
            return Fraction(1), Fraction(1)
        terms = 8
        while True:
            lo, hi = _exp_enclosure(q, terms)
            if lo > 0 and hi - lo <= self.width:
                return lo, hi
            terms *= 2

    def log(self, r) -> Fraction:
        r = Fraction(r)
        if r == 1:
            return Fraction(0)
        if self.mode == "monic":
            raise NonMonicResidue(f"log {r} is irrational; monic mode only logs residue 1")
        lo, hi = self.enclose_log(r)
        return (lo + hi) / 2

    def exp(self, q) -> Fraction:
        q = Fraction(q)
        if q == 0:
            return Fraction(1)
        if self.mode == "monic":
            raise NonMonicResidue(f"exp {q} is irrational; monic mode only exponentiates 0")
        lo, hi = self.enclose_exp(q)
        return (lo + hi) / 2


# the successor cross-section


@dataclass(frozen=True)
class LogCrossSection:
    """h(sum g_gamma e_gamma) = sum g_gamma t^{-e_{zeta gamma}}.

    An order preserving embedding of G into the negative-support series with
    v(h(g)) = s(zeta(vG g)); strong because zeta moves every class up.
    """

    universe: OrderTypeSpec

    def __call__(self, g: GroupElement) -> Series:
        return cross_section_apply(self, g)

    def lift_class(self, gamma: IndexPoint) -> GroupElement:
        """h~ = s o zeta on classes."""
        return GroupCrossSection(self.universe)(zeta_apply(gamma))

    def in_image(self, a: Series) -> bool:
        try:
            self.preimage(a)
        except NotInImage:
            return False
        return True

    def preimage(self, a: Series) -> GroupElement:
        """The g with h(g) = a; every exponent of a must be -e_gamma."""
        if not a.is_exact:
            raise NotInImage(f"{a} is not exact")
        coeffs = {}
        for e, c in a.terms:
            items = e.items
            if len(items) != 1 or items[0][1] != -1:
                raise NotInImage(f"exponent {e} of {a} is not of the form -e_gamma")
            coeffs[zeta_inverse(items[0][0])] = c
        return GroupElement(self.universe, coeffs)


def cross_section_apply(h: LogCrossSection, g: GroupElement) -> Series:
    U = h.universe
    terms = tuple(
        (GroupElement._raw(U, ((zeta_apply(gamma), Fraction(-1)),)), c) for gamma, c in g.items
    )
    # -e_gamma increases with gamma, so the order of g.items is kept
    return Series._raw(U, terms, INF)


@dataclass(frozen=True)
class LogComponents:
    """(cross-section, residue log, right log): the three parts of a logarithm."""

    cross_section: object
    mid: object = field(default_factory=ResidueLog)
    right: object = field(default_factory=CanonicalRightLog)


def standard_components(universe: OrderTypeSpec, mode="monic", width=Fraction(1, 10 ** 6)):
    return LogComponents(LogCrossSection(universe), ResidueLog(mode, width), CanonicalRightLog())


def full_log(a: Series, comps: LogComponents, policy: PrecisionPolicy = DEFAULT_POLICY) -> Series:
    d = hs_decompose_mul(a)
    left = comps.cross_section(-d.exponent)
    mid = comps.mid.log(d.residue)
    right = comps.right(d.one_unit, policy)
    out = left + right
    if mid:
        out = out + Series.constant(a.universe, mid)
    return out


def normalized_log(a: Series, comps: LogComponents, policy: PrecisionPolicy = DEFAULT_POLICY) -> Series:
    """log(a / r) for r the residue of a > 0; equals log a - log r."""
    d = hs_decompose_mul(a)
    left = comps.cross_section(-d.exponent)
    return left + comps.right(d.one_unit, policy)


def full_exp(a: Series, comps: LogComponents, policy: PrecisionPolicy = DEFAULT_POLICY) -> Series:
    d = hs_decompose_add(a)
    g = comps.cross_section.preimage(d.infinite_part)
    unit = comps.right.inverse(d.infinitesimal, policy)
    r = comps.mid.exp(d.constant)
    return unit.shift(-g).scale(r)


class AssembledLog:
    """The logarithm put together from its three components."""

    def __init__(self, comps: LogComponents):
        self.components = comps

    def __call__(self, a: Series, policy: PrecisionPolicy = DEFAULT_POLICY) -> Series:
        return full_log(a, self.components, policy)

    def exp(self, a: Series, policy: PrecisionPolicy = DEFAULT_POLICY) -> Series:
        return full_exp(a, self.components, policy)


def assemble_log(comps: LogComponents) -> AssembledLog:
    return AssembledLog(comps)


@dataclass(frozen=True)
class _ExtractedCrossSection:
    log: object
    universe: object
    policy: PrecisionPolicy

    def __call__(self, g) -> Series:
        # h = log_L o (-v)^-1 and (-v)^-1(g) = t^-g
        return self.log(Series.monomial(self.universe, -g), self.policy)


class _ExtractedResidue:
    def __init__(self, log, universe, policy):
        self._log = log
        self._universe = universe
        self._policy = policy

    def log(self, r) -> Fraction:
        out = self._log(Series.constant(self._universe, r), self._policy)
        return out.coeff(self._universe.zero())


class _ExtractedRight:
    def __init__(self, log):
        self._log = log

    def __call__(self, u: Series, policy: PrecisionPolicy = DEFAULT_POLICY) -> Series:
        return self._log(u, policy)


def _compat_witness(log, a: Series, policy):
    """Return a message if a violates compatibility (2) with v, else None."""
    va = a.v()
    la = log(a, policy)
    if la.terms:
        vla = la.terms[0][0]
    elif la.floor is INF or la.floor.sign() > 0:
        vla = INF  # known to lie in I_v
    else:
        raise PrecisionInsufficient(f"log({a}) = {la} undetermined")
    if va.sign() != 0:
        if vla is INF or vla.sign() >= 0:
            return f"log({a}) = {la} lies in R_v although v(a) = {va} != 0"
        return None
    if vla is not INF and vla.sign() < 0:
        return f"log({a}) = {la} leaves R_v although a is a unit"
    if a.terms[0][1] == 1 and vla is not INF and vla.sign() <= 0:
        return f"log({a}) = {la} leaves I_v although a is a 1-unit"
    return None


def decompose_log(log, universe, samples=(), policy: PrecisionPolicy = DEFAULT_POLICY) -> LogComponents:
    """Split a logarithm compatible with v into (h, log_mid, log_R) by restriction.

    ``samples`` are positive elements on which compatibility with v is
    verified first; a violation raises :class:`IncompatibleLog` with the
    offending element as ``witness``.
    """
    for a in samples:
        msg = _compat_witness(log, a, policy)
        if msg is not None:
            raise IncompatibleLog(msg, witness=a)
    return LogComponents(
        _ExtractedCrossSection(log, universe, policy),
        _ExtractedResidue(log, universe, policy),
        _ExtractedRight(log),
    )


# induced contraction


def chi_from_log(g: GroupElement, comps: LogComponents, policy: PrecisionPolicy = DEFAULT_POLICY):
    """chi(g) = v(log t^g) for g < 0."""
    if g.sign() >= 0:
        raise DomainError(f"chi is defined on negative values, got {g}")
    return full_log(Series.monomial(g.universe, g), comps, policy).v()


def zeta_from_chi(gamma: IndexPoint, comps: LogComponents, universe=None,
                  policy: PrecisionPolicy = DEFAULT_POLICY) -> IndexPoint:
    universe = universe or comps.cross_section.universe
    return chi_from_log(GroupCrossSection(universe)(gamma), comps, policy).vG()


# axiom checkers


def _require_positive_infinite(a: Series):
    if a.sign() <= 0 or a.v().sign() >= 0:
        raise DomainError(f"{a} is not positive infinite")


def check_strong(a: Series, comps: LogComponents, policy: PrecisionPolicy = DEFAULT_POLICY) -> bool:
    """va < v(log a) for positive infinite a."""
    _require_positive_infinite(a)
    return a.v() < normalized_log(a, comps, policy).v()


def t1_defect_valuation(b: Series, comps: LogComponents, policy: PrecisionPolicy = DEFAULT_POLICY):
    """v(b - log(1 + b)), or a lower bound (the floor) if nothing is stored."""
    d = b - full_log(b + 1, comps, policy)
    if d.terms:
        return d.terms[0][0], True
    return d.floor, d.floor is INF


def check_T1(b: Series, comps: LogComponents, policy: PrecisionPolicy = DEFAULT_POLICY) -> bool:
    """v(b - log(1 + b)) > vb for a nonzero infinitesimal b."""
    if not b.terms or b.v().sign() <= 0:
        raise DomainError(f"{b} is not a nonzero infinitesimal")
    vb = b.v()
    val, exact = t1_defect_valuation(b, comps, policy)
    if exact or val > vb:
        # a stored leading term is the true value; otherwise the floor bounds it
        return val > vb
    raise PrecisionInsufficient(f"v(b - log(1+b)) not decided above floor {val}")


def check_growth(a: Series, n: int, comps: LogComponents, policy: PrecisionPolicy = DEFAULT_POLICY) -> bool:
    """a > n log a for positive infinite a.

    Uses the normalized log; the dropped constant n log r cannot flip the
    sign because the decision is taken at an infinite exponent.
    """
    _require_positive_infinite(a)
    d = a - normalized_log(a, comps, policy).scale(n)
    if not d.terms or d.terms[0][0].sign() >= 0:
        raise PrecisionInsufficient(f"growth comparison for {a} is not decided by infinite terms")
    return d.terms[0][1] > 0


def ell_equiv(a: Series, other: Series) -> bool:
    """Class-level decision of log-equivalence for positive infinite a, a'."""
    _require_positive_infinite(a)
    _require_positive_infinite(other)
    return zeta_equiv(a.v().vG(), other.v().vG())


def _truncate_finite(x: Series) -> Series:
    # the infinite part decides comparisons between infinite elements
    return x.truncate(x.universe.zero())


def _le(x: Series, y: Series) -> bool:
    try:
        return x.compare(y) <= 0
    except PrecisionInsufficient:
        return False


class _Iterates:
    """Lazily computed a, log a, log log a, ... kept modulo finite elements."""

    def __init__(self, a, log):
        self._xs = [a]
        self._log = log

    def __getitem__(self, n):
        while len(self._xs) <= n:
            self._xs.append(_truncate_finite(self._log(self._xs[-1])))
        return self._xs[n]


def ell_equiv_witness(a: Series, other: Series, log, bound: int = 8):
    """Smallest n <= bound with log^n a <= a' and log^n a' <= a, else None.

    ``log`` maps a positive infinite element to its (normalized) logarithm.
    A comparison not decided above the floor counts as not yet witnessed.
    """
    xs = _Iterates(a, log)
    ys = _Iterates(other, log)
    for n in range(bound + 1):
        if _le(xs[n], other) and _le(ys[n], a):
            return n
    return None


def chi_model_agrees(g: GroupElement, comps: LogComponents, policy: PrecisionPolicy = DEFAULT_POLICY) -> bool:
    return chi_from_log(g, comps, policy) == chi_model(g)
