"""Final segments of Gamma, compatibility with the logarithm, and the ranks.

Every nonempty final segment of Gamma = T x Z has the form

    {p : p >= (tier, offset)}

where ``offset`` may be ``None`` for "the whole copy of Z at ``tier``".  So a
segment is a threshold: ``(0, None)`` is all of Gamma, ``(t, n)`` a cut with
smallest element (t, n), and ``(t, None)`` the union of the copies from t up.
A final segment Gamma_w determines the convex subgroup G_w of elements
supported inside it, hence a coarsening w of v.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .contraction import GroupCrossSection, chi_model, zeta_apply
from .errors import DomainError, NonMonicResidue, NotInImage, PrecisionInsufficient
from .explog import DEFAULT_POLICY, chi_from_log, full_exp, full_log, normalized_log
from .groups import GroupElement, IndexPoint, OrderTypeSpec
from .series import Series, hs_w_data

__all__ = [
    "Window",
    "FinalSegment",
    "QuotientSegment",
    "seg_zeta_closure",
    "is_compatible",
    "compatible_by_chi",
    "compatible_by_zeta_complement",
    "compatibility_verdicts",
    "incompatibility_witness",
    "log_preserves_nonring",
    "enumerate_segments",
    "sigma",
    "epsilon",
    "check_sigma_bijection",
    "check_epsilon_order",
    "exponential_rank",
    "compatible_segments",
    "principal_exponential_rank",
    "principal_rank",
    "closed_segments_lack_minimum",
    "cofinality_class_check",
    "induced_contraction_agrees",
    "value_closure_check",
]


@dataclass(frozen=True)
class Window:
    """Offsets lo..hi used for exhaustive enumeration over Gamma."""

    lo: int = -3
    hi: int = 3

    def __post_init__(self):
        if self.lo > self.hi:
            raise DomainError(f"empty window [{self.lo}, {self.hi}]")

    def offsets(self, margin=0):
        return range(self.lo - margin, self.hi + margin + 1)

    def points(self, universe: OrderTypeSpec, margin=0):
        return [IndexPoint(t, n) for t in range(len(universe)) for n in self.offsets(margin)]


@dataclass(frozen=True)
class FinalSegment:
    universe: OrderTypeSpec
    tier: int
    offset: object = None  # int, or None for the whole copy

    def __post_init__(self):
        if not 0 <= self.tier < len(self.universe):
            raise DomainError("a final segment must be nonempty")

    @classmethod
    def all(cls, universe):
        return cls(universe, 0, None)

    @classmethod
    def cut(cls, universe, label, offset: int):
        """{(t,n): t > label} together with {(label,n): n >= offset}."""
        return cls(universe, universe.tier(label), int(offset))

    @classmethod
    def above(cls, universe, label):
        """{(t,n): t > label}; empty (rejected) for the top label."""
        return cls(universe, universe.tier(label) + 1, None)

    @classmethod
    def from_labels(cls, universe, label):
        """{(t,n): t >= label}."""
        return cls(universe, universe.tier(label), None)

    @property
    def kind(self) -> str:
        if self.offset is not None:
            return "cut"
        return "all" if self.tier == 0 else "label"

    def contains(self, p: IndexPoint) -> bool:
        if p.tier != self.tier:
            return p.tier > self.tier
        return self.offset is None or p.offset >= self.offset

    def contains_element(self, g: GroupElement) -> bool:
        """g in G_w: every coordinate of g is indexed inside the segment."""
        return all(self.contains(p) for p in g.support)

    def issubset(self, other: "FinalSegment") -> bool:
        if self.tier != other.tier:
            return self.tier > other.tier
        if other.offset is None:
            return True
        return self.offset is not None and self.offset >= other.offset

    def has_minimum(self) -> bool:
        return self.offset is not None

    def minimum(self) -> IndexPoint:
        if self.offset is None:
            raise DomainError(f"{self} has no smallest element")
        return IndexPoint(self.tier, self.offset)

    def project(self, g: GroupElement) -> GroupElement:
        """The image of g in vK / G_w: coordinates outside the segment."""
        return g.restrict(lambda p: not self.contains(p))

    def __str__(self):
        labels = self.universe.labels
        if self.kind == "all":
            return "ALL"
        if self.kind == "label":
            return f"above({labels[self.tier - 1]})"
        return f"cut({labels[self.tier]},{self.offset})"


@dataclass(frozen=True)
class QuotientSegment:
    """An upward closed nonempty set of labels: a final segment of Gamma/~zeta."""

    universe: OrderTypeSpec
    tiers: frozenset

    def __post_init__(self):
        if not self.tiers:
            raise DomainError("quotient segments are nonempty")
        lo = min(self.tiers)
        if set(self.tiers) != set(range(lo, len(self.universe))):
            raise DomainError(f"{sorted(self.tiers)} is not upward closed")

    def minimum_label(self) -> str:
        return self.universe.labels[min(self.tiers)]

    def issubset(self, other) -> bool:
        return self.tiers <= other.tiers

    def labels(self):
        return [self.universe.labels[t] for t in sorted(self.tiers)]

    def __str__(self):
        return "{" + ",".join(self.labels()) + "}"


# closure and compatibility


def seg_zeta_closure(seg: FinalSegment) -> FinalSegment:
    return FinalSegment(seg.universe, seg.tier, None)


def is_compatible(seg: FinalSegment) -> bool:
    """Gamma_w closed under zeta-equivalence."""
    return seg_zeta_closure(seg) == seg


def compatible_by_zeta_complement(seg: FinalSegment, window: Window = Window()) -> bool:
    """Gamma minus Gamma_w closed under zeta, checked pointwise on the window."""
    for p in window.points(seg.universe, margin=2):
        if not seg.contains(p) and seg.contains(zeta_apply(p)):
            return False
    return True


def _negative_probes(universe, window, margin=2):
    pts = window.points(universe, margin=margin)
    out = []
    for p in pts:
        out.append(GroupElement._raw(universe, ((p, Fraction(-1)),)))
    for p, q in product(pts, pts):
        if p < q:
            out.append(GroupElement(universe, {p: -2, q: Fraction(1, 2)}))
    return out


def compatible_by_chi(seg: FinalSegment, comps, window: Window = Window(), policy=DEFAULT_POLICY) -> bool:
    """(vK)^{<0} minus G_w closed under the contraction induced by the log."""
    for g in _negative_probes(seg.universe, window):
        if seg.contains_element(g):
            continue
        if seg.contains_element(chi_from_log(g, comps, policy)):
            return False
    return True


def compatibility_verdicts(seg: FinalSegment, comps, window: Window = Window(), policy=DEFAULT_POLICY):
    """Three independent verdicts: via chi, via zeta on the complement, via closure."""
    return {
        "chi": compatible_by_chi(seg, comps, window, policy),
        "zeta": compatible_by_zeta_complement(seg, window),
        "closure": is_compatible(seg),
    }


def _outside_ring(a: Series, seg) -> bool:
    return not hs_w_data(a, seg).in_Rw


def incompatibility_witness(seg: FinalSegment, comps, window: Window = Window(), policy=DEFAULT_POLICY):
    """A positive a outside R_w whose log falls into R_w, or None.

    Such an a violates log(K^{>0} \\ R_w) being inside K^{>0} \\ R_w.
    """
    U = seg.universe
    for p in window.points(U, margin=2):
        a = Series.monomial(U, GroupCrossSection(U)(p))
        if _outside_ring(a, seg) and not _outside_ring(full_log(a, comps, policy), seg):
            return a
    return None


def log_preserves_nonring(seg: FinalSegment, samples, comps, policy=DEFAULT_POLICY):
    """Check a > 0, a not in R_w  =>  log a > 0, log a not in R_w on samples.

    Returns the first counterexample or None.
    """
    for a in samples:
        if a.sign() <= 0 or not _outside_ring(a, seg):
            continue
        la = normalized_log(a, comps, policy)
        if la.sign() <= 0 or not _outside_ring(la, seg):
            return a
    return None


# the maps sigma and epsilon


def enumerate_segments(universe: OrderTypeSpec, window: Window = Window()):
    segs = []
    for t in range(len(universe)):
        segs.append(FinalSegment(universe, t, None))
        for n in window.offsets():
            segs.append(FinalSegment(universe, t, n))
    return segs


def sigma(seg: FinalSegment, window: Window = Window()) -> QuotientSegment:
    """Classes of the points of seg, computed by scanning window points."""
    tiers = frozenset(p.tier for p in window.points(seg.universe) if seg.contains(p))
    return QuotientSegment(seg.universe, tiers)


def epsilon(seg: FinalSegment, window: Window = Window()) -> QuotientSegment:
    if not is_compatible(seg):
        raise DomainError(f"{seg} is not compatible")
    return sigma(seg, window)


def _upward_sets(n):
    return [frozenset(range(k, n)) for k in range(n)]


def check_sigma_bijection(universe: OrderTypeSpec, window: Window = Window()):
    """sigma is well defined on ~-classes, injective, onto, and order preserving.

    Returns a list of failure messages (empty when everything holds).
    """
    failures = []
    segs = enumerate_segments(universe, window)
    by_class = {}
    for s in segs:
        by_class.setdefault(seg_zeta_closure(s), []).append(s)
    images = {}
    for cls, members in by_class.items():
        imgs = {sigma(m, window).tiers for m in members}
        if len(imgs) != 1:
            failures.append(f"sigma not constant on class of {cls}")
        images[cls] = imgs.pop()
    if len(set(images.values())) != len(images):
        failures.append("sigma not injective on classes")
    if set(images.values()) != set(_upward_sets(len(universe))):
        failures.append("sigma not onto the final segments of the quotient")
    for c1, c2 in product(images, images):
        if c1.issubset(c2) != (images[c1] <= images[c2]):
            failures.append(f"order mismatch between {c1} and {c2}")
    return failures


def check_epsilon_order(universe: OrderTypeSpec, window: Window = Window()):
    failures = []
    comp = [s for s in enumerate_segments(universe, window) if is_compatible(s)]
    imgs = {s: epsilon(s, window) for s in comp}
    if len({q.tiers for q in imgs.values()}) != len(comp):
        failures.append("epsilon not injective")
    for s1, s2 in product(comp, comp):
        if s1.issubset(s2) != imgs[s1].issubset(imgs[s2]):
            failures.append(f"epsilon order mismatch between {s1} and {s2}")
    return failures


def exponential_rank(universe: OrderTypeSpec):
    """All final segments of Gamma/~zeta, smallest first."""
    return [QuotientSegment(universe, tiers) for tiers in reversed(_upward_sets(len(universe)))]


def compatible_segments(universe: OrderTypeSpec):
    """Preimages of the exponential rank, in the same order."""
    return [FinalSegment(universe, min(q.tiers), None) for q in exponential_rank(universe)]


def principal_exponential_rank(universe: OrderTypeSpec) -> OrderTypeSpec:
    """Quotient segments with a smallest class, named by that class.

    Listed in label order, i.e. through the order reversing map that sends a
    class to the segment it starts.
    """
    mins = [q.minimum_label() for q in exponential_rank(universe) if q.tiers]
    return OrderTypeSpec(tuple(sorted(mins, key=universe.tier)))


def principal_rank(universe: OrderTypeSpec, window: Window = Window()) -> dict:
    """Summary of the principal segments (those with a smallest element)."""
    segs = enumerate_segments(universe, window)
    principal = [s for s in segs if s.has_minimum()]
    # order reversing: bigger minimum <=> smaller segment
    reversing = all(
        (s1.minimum() <= s2.minimum()) == s2.issubset(s1) for s1, s2 in product(principal, principal)
    )
    pts = window.points(universe)
    unions_ok = True
    for s in segs:
        below = [p for p in principal if p.issubset(s)]
        covered = {q for q in pts if any(b.contains(q) for b in below)}
        if covered != {q for q in pts if s.contains(q)}:
            unions_ok = False
    return {
        "principal_in_window": [str(s) for s in principal],
        "order_type": "Gamma reversed",
        "order_reversing": reversing,
        "whole_group_principal": FinalSegment.all(universe).has_minimum(),
        "segments_are_unions_of_principal": unions_ok,
    }


def closed_segments_lack_minimum(universe: OrderTypeSpec, window: Window = Window()) -> bool:
    """No zeta-closed final segment has a smallest element (zeta is onto)."""
    return not any(
        s.has_minimum() for s in enumerate_segments(universe, window) if seg_zeta_closure(s) == s
    )


def cofinality_class_check(a: Series, seg: FinalSegment) -> bool:
    """Whether the zeta-class of vG(va) is the smallest class of epsilon(seg).

    The class-level form of cofinality of the iterated exponentials of a in R_w.
    """
    if a.sign() <= 0 or a.v().sign() >= 0:
        raise DomainError(f"{a} is not positive infinite")
    if not is_compatible(seg):
        raise DomainError(f"{seg} is not compatible")
    return a.v().vG().tier == seg.tier


def induced_contraction_agrees(seg: FinalSegment, samples, comps, policy=DEFAULT_POLICY):
    """chi_w computed as w(log a) agrees with chi projected to vK/G_w.

    Also checks that zeta_w is zeta restricted outside Gamma_w and that
    chi_w does not depend on the representative.  Returns the first
    disagreeing sample, or None.
    """
    if not is_compatible(seg):
        raise DomainError(f"{seg} is not compatible")
    U = seg.universe
    inside = GroupElement._raw(U, ((IndexPoint(len(U) - 1, 0), Fraction(1)),))
    for a in samples:
        wd = hs_w_data(a, seg)
        if a.sign() <= 0 or wd.in_Rw:
            continue
        projected = seg.project(chi_model(a.v()))
        direct = hs_w_data(normalized_log(a, comps, policy), seg).wa
        if projected != direct:
            return a
        if direct.vG() != zeta_apply(wd.wa.vG()) or seg.contains(direct.vG()):
            return a
        if seg.contains_element(inside):
            a2 = a.shift(inside)
            if hs_w_data(normalized_log(a2, comps, policy), seg).wa != direct:
                return a
    return None


def value_closure_check(seg: FinalSegment, samples, comps, policy=DEFAULT_POLICY):
    """va in G_w (va != 0) => v(log a) in G_w, and likewise v(exp a) when defined.

    Returns the first counterexample or None.
    """
    for a in samples:
        if a.stored_zero:
            continue
        va = a.v()
        if not seg.contains_element(va):
            continue
        if a.sign() > 0 and not va.is_zero():
            if not seg.contains_element(normalized_log(a, comps, policy).v()):
                return a
        try:
            fa = full_exp(a, comps, policy)
        except (NotInImage, NonMonicResidue, PrecisionInsufficient):
            continue
        if not seg.contains_element(fa.v()):
            return a
    return None
