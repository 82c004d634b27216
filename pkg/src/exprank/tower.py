"""A chain of fields K_0 ⊂ K_1 ⊂ ... obtained by making the log surjective stage by stage.

Stage 0 is Q((G)) with the successor cross-section h_0.  For n >= 1 the value
group is G_n := A_{n-1}, the negative-support series of K_{n-1}, and
G_{n-1} sits inside G_n through h_{n-1}.  With this choice h_n is just the
inclusion K_{n-1} ⊂ K_n restricted to A_{n-1}, so it extends h_{n-1}
automatically and its image is the embedded copy of A_{n-1}.

A value of G_n (n >= 1) is a :class:`StageElement` wrapping its payload, an
exact series over G_{n-1}.  Lifting exponents and series between stages is
memoized; all objects are immutable so the caches are pure.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import DomainError, NoDescent, NonMonicResidue, NotInImage, PrecisionInsufficient
from .explog import (
    DEFAULT_POLICY,
    CanonicalRightLog,
    LogComponents,
    LogCrossSection,
    PrecisionPolicy,
    ResidueLog,
    cross_section_apply,
    ell_equiv_witness,
    full_exp,
    full_log,
    normalized_log,
)
from .groups import OrderTypeSpec
from .series import INF, Series, hs_decompose_add

__all__ = [
    "StageGroup",
    "StageElement",
    "StageCrossSection",
    "StageTower",
    "stage_of",
    "stage_universe",
    "lift_exponent",
    "drop_exponent",
    "lift_series",
    "drop_series",
    "tower_build",
    "tower_embed",
    "tower_unembed",
    "tower_check_strong",
    "tower_log",
    "tower_exp",
    "tower_log_descends",
    "restricted_exp_agreement",
    "domain_growth_witness",
    "infinite_part",
    "MAX_DEPTH",
]

MAX_DEPTH = 3


@dataclass(frozen=True)
class StageGroup:
    """The value group G_n of stage n >= 1."""

    base: OrderTypeSpec
    stage: int

    def __post_init__(self):
        if self.stage < 1:
            raise DomainError("stage groups start at stage 1; stage 0 is the base group")

    def lower(self):
        return stage_universe(self.base, self.stage - 1)

    def zero(self) -> "StageElement":
        return StageElement._raw(self, Series.zero(self.lower()))

    def __str__(self):
        return f"G{self.stage}"


def stage_universe(base: OrderTypeSpec, n: int):
    return base if n == 0 else StageGroup(base, n)


def stage_of(universe) -> int:
    return universe.stage if isinstance(universe, StageGroup) else 0


def _base_of(universe) -> OrderTypeSpec:
    return universe.base if isinstance(universe, StageGroup) else universe


class StageElement:
    """An element of G_n = A_{n-1}: an exact negative-support series over G_{n-1}."""

    __slots__ = ("universe", "payload", "_hash")

    def __init__(self, universe: StageGroup, payload: Series):
        if payload.universe != universe.lower():
            raise DomainError(f"payload lives over {payload.universe}, expected {universe.lower()}")
        if not payload.is_exact:
            raise DomainError("stage payloads are exact series")
        for e in payload.support:
            if e.sign() >= 0:
                raise DomainError(f"payload exponent {e} is not negative")
        self.universe = universe
        self.payload = payload
        self._hash = None

    @classmethod
    def _raw(cls, universe, payload):
        obj = cls.__new__(cls)
        obj.universe = universe
        obj.payload = payload
        obj._hash = None
        return obj

    @property
    def stage(self) -> int:
        return self.universe.stage

    def _same(self, other):
        return isinstance(other, StageElement) and other.universe == self.universe

    def __add__(self, other):
        if not self._same(other):
            return NotImplemented
        return StageElement._raw(self.universe, self.payload + other.payload)

    def __neg__(self):
        return StageElement._raw(self.universe, -self.payload)

    def __sub__(self, other):
        if not self._same(other):
            return NotImplemented
        return StageElement._raw(self.universe, self.payload - other.payload)

    def scale(self, q) -> "StageElement":
        return StageElement._raw(self.universe, self.payload.scale(q))

    def __mul__(self, q):
        if isinstance(q, (int, Fraction)):
            return self.scale(q)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, q):
        if isinstance(q, (int, Fraction)):
            return self.scale(1 / Fraction(q))
        return NotImplemented

    def sign(self) -> int:
        return self.payload.sign()

    def is_zero(self) -> bool:
        return self.payload.stored_zero

    def __bool__(self):
        return not self.is_zero()

    def compare(self, other) -> int:
        if not self._same(other):
            raise DomainError(f"cannot compare {self} with {other}")
        return self.payload.compare(other.payload)

    def __lt__(self, other):
        if not self._same(other):
            return NotImplemented
        return self.payload.compare(other.payload) < 0

    def __le__(self, other):
        if not self._same(other):
            return NotImplemented
        return self.payload.compare(other.payload) <= 0

    def __gt__(self, other):
        if not self._same(other):
            return NotImplemented
        return self.payload.compare(other.payload) > 0

    def __ge__(self, other):
        if not self._same(other):
            return NotImplemented
        return self.payload.compare(other.payload) >= 0

    def __eq__(self, other):
        if not isinstance(other, StageElement):
            return NotImplemented
        return self.universe == other.universe and self.payload.terms == other.payload.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.universe.stage, self.payload.terms))
        return self._hash

    def __str__(self):
        return f"s{self.stage}{{{self.payload.body()}}}"

    def __repr__(self):
        return f"StageElement({self})"


# moving between stages


@lru_cache(maxsize=1 << 16)
def lift_exponent(g):
    """G_k -> G_{k+1}: g goes to h_k(g), read as an element of A_k = G_{k+1}."""
    U = g.universe
    return StageElement._raw(StageGroup(_base_of(U), stage_of(U) + 1), stage_cross_section(g))


@lru_cache(maxsize=1 << 16)
def drop_exponent(x: StageElement):
    """Inverse of :func:`lift_exponent`; NotInImage if x is not lifted."""
    return stage_preimage(x.payload)


def lift_series(a: Series) -> Series:
    """K_k -> K_{k+1}, re-indexing the support through :func:`lift_exponent`."""
    U = StageGroup(_base_of(a.universe), stage_of(a.universe) + 1)
    floor = INF if a.floor is INF else lift_exponent(a.floor)
    # lifting is order preserving, so the term order is kept
    return Series._raw(U, tuple((lift_exponent(e), c) for e, c in a.terms), floor)


def drop_series(a: Series) -> Series:
    if stage_of(a.universe) == 0:
        raise NotInImage("stage 0 series have nowhere to descend")
    U = a.universe.lower()
    floor = INF if a.floor is INF else drop_exponent(a.floor)
    return Series._raw(U, tuple((drop_exponent(e), c) for e, c in a.terms), floor)


def stage_cross_section(g) -> Series:
    """h_k(g) for g in G_k."""
    U = g.universe
    if stage_of(U) == 0:
        return cross_section_apply(LogCrossSection(U), g)
    return lift_series(g.payload)


def stage_preimage(a: Series):
    """h_k^{-1}(a) for a series a over G_k; NotInImage outside the image."""
    U = a.universe
    if stage_of(U) == 0:
        return LogCrossSection(U).preimage(a)
    if not a.is_exact:
        raise NotInImage(f"{a} is not exact")
    if any(e.sign() >= 0 for e in a.support):
        raise NotInImage(f"{a} has a nonnegative exponent")
    return StageElement._raw(U, drop_series(a))


@dataclass(frozen=True)
class StageCrossSection:
    """h_n on G_n; for n = 0 this is the successor cross-section."""

    universe: object

    def __call__(self, g) -> Series:
        return stage_cross_section(g)

    def preimage(self, a: Series):
        return stage_preimage(a)

    def in_image(self, a: Series) -> bool:
        try:
            stage_preimage(a)
        except NotInImage:
            return False
        return True


# the tower


@dataclass(frozen=True)
class StageTower:
    base: OrderTypeSpec
    depth: int
    mode: str = "monic"
    width: Fraction = Fraction(1, 10 ** 6)
    policy: PrecisionPolicy = field(default=DEFAULT_POLICY)

    def universe(self, n: int):
        self._check_stage(n)
        return stage_universe(self.base, n)

    def _check_stage(self, n):
        if not 0 <= n <= self.depth:
            raise DomainError(f"stage {n} outside 0..{self.depth}")

    def components(self, n: int) -> LogComponents:
        self._check_stage(n)
        if n == 0:
            h = LogCrossSection(self.base)
        else:
            h = StageCrossSection(self.universe(n))
        return LogComponents(h, ResidueLog(self.mode, self.width), CanonicalRightLog())

    def stage_of(self, a: Series) -> int:
        n = stage_of(a.universe)
        self._check_stage(n)
        return n


def tower_build(base: OrderTypeSpec, depth: int, max_depth: int = MAX_DEPTH, mode="monic",
                width=Fraction(1, 10 ** 6), policy: PrecisionPolicy = DEFAULT_POLICY) -> StageTower:
    if depth < 0:
        raise DomainError("tower depth must be nonnegative")
    if depth > max_depth:
        raise DomainError(f"tower depth {depth} exceeds the configured bound {max_depth}")
    return StageTower(base, depth, mode, Fraction(width), policy)


def _stage_of_value(x) -> int:
    return stage_of(x.universe)


def tower_embed(x, to_stage: int):
    """Carry a group element or series up to stage ``to_stage``."""
    n = _stage_of_value(x)
    if n > to_stage:
        raise DomainError(f"cannot embed a stage {n} value into stage {to_stage}")
    step = lift_series if isinstance(x, Series) else lift_exponent
    for _ in range(to_stage - n):
        x = step(x)
    return x


def tower_unembed(x, to_stage: int):
    """Inverse of :func:`tower_embed`; NotInImage when x does not come from below."""
    n = _stage_of_value(x)
    if n < to_stage:
        raise DomainError(f"cannot bring a stage {n} value down to stage {to_stage}")
    step = drop_series if isinstance(x, Series) else drop_exponent
    for _ in range(n - to_stage):
        x = step(x)
    return x


def tower_check_strong(g, n: int) -> bool:
    """v(h_n(g)) > g for g < 0 in G_n."""
    if _stage_of_value(g) != n:
        raise DomainError(f"{g} does not live at stage {n}")
    if g.sign() >= 0:
        raise DomainError(f"{g} is not negative")
    return stage_cross_section(g).v() > g


def tower_log(tower: StageTower, a: Series, normalized=False) -> Series:
    comps = tower.components(tower.stage_of(a))
    if normalized:
        return normalized_log(a, comps, tower.policy)
    return full_log(a, comps, tower.policy)


def tower_exp(tower: StageTower, a: Series) -> Series:
    return full_exp(a, tower.components(tower.stage_of(a)), tower.policy)


def infinite_part(a: Series) -> Series:
    return Series._raw(a.universe, tuple((e, c) for e, c in a.terms if e.sign() < 0), INF)


def _descends_to_base(x: Series) -> bool:
    try:
        tower_unembed(infinite_part(x), 0)
    except NotInImage:
        return False
    return True


def tower_log_descends(tower: StageTower, a: Series) -> int:
    """Least k with the infinite part of log^k(a) coming from A_0."""
    if a.sign() <= 0 or a.v().sign() >= 0:
        raise DomainError(f"{a} is not positive infinite")
    n = tower.stage_of(a)
    x = a
    for k in range(n + 2):
        if _descends_to_base(x):
            return k
        x = tower_log(tower, x, normalized=True).truncate(tower.universe(n).zero())
    raise NoDescent(f"{a} did not reach A_0 within {n + 1} logarithms")


def descent_partner(tower: StageTower, a: Series):
    """(k, b): b is the stage 0 element whose embedding is the infinite part of log^k a."""
    n = tower.stage_of(a)
    k = tower_log_descends(tower, a)
    x = a
    for _ in range(k):
        x = tower_log(tower, x, normalized=True).truncate(tower.universe(n).zero())
    return k, tower_unembed(infinite_part(x), 0)


def stage_invariance_witness(tower: StageTower, a: Series, bound: int = 8):
    """Log-equivalence witness between a and the embedding of its stage 0 partner."""
    n = tower.stage_of(a)
    _, b = descent_partner(tower, a)
    comps = tower.components(n)
    return ell_equiv_witness(a, tower_embed(b, n), lambda x: normalized_log(x, comps, tower.policy), bound)


def _exp_series(eps: Series, order: int) -> Series:
    # plain sum eps^i / i!, kept apart from the library's rexp
    out = Series.constant(eps.universe, 1)
    for i in range(1, order + 1):
        term = Series.constant(eps.universe, Fraction(1, factorial(i)))
        for _ in range(i):
            term = term * eps
        out = out + term
    return out


def restricted_exp_agreement(tower: StageTower, a: Series) -> bool:
    """exp on a finite element equals exp(r) * sum eps^i / i! below the floor."""
    n = tower.stage_of(a)
    d = hs_decompose_add(a)
    if not d.infinite_part.stored_zero:
        raise DomainError(f"{a} is not finite")
    if d.constant and tower.mode == "monic":
        raise NonMonicResidue(f"monic mode only exponentiates residue 0, got {d.constant}")
    got = tower_exp(tower, a)
    expected = _exp_series(d.infinitesimal, tower.policy.taylor_order).scale(
        tower.components(n).mid.exp(d.constant)
    )
    if got.floor is INF and expected.floor is INF:
        return got == expected
    if got.floor is not INF and got.floor.sign() <= 0:
        raise PrecisionInsufficient(f"exp {a} known only modulo t^{{{got.floor}}}")
    return got.agrees_with(expected)


def domain_growth_witness(tower: StageTower, n: int) -> Series:
    """A stage n element exponentiable at stage n but not at stage n-1 (embedded).

    y_0 = t^{-e/2} is outside h_0's image; y_k = t^{s_k(-y_{k-1})} is
    outside h_k's image because -y_{k-1} is outside h_{k-1}'s.  The witness
    at stage n is y_{n-1} carried into K_n, where it lies in im(h_n).
    """
    if not 1 <= n <= tower.depth:
        raise DomainError(f"domain growth is measured at stages 1..{tower.depth}")
    base = tower.base
    y = Series.monomial(base, base.e(0, 0, Fraction(-1, 2)))
    for k in range(1, n):
        U = StageGroup(base, k)
        y = Series.monomial(U, StageElement(U, -y))
    return lift_series(y)
