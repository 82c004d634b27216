"""The successor automorphism zeta on Gamma and the model contraction on G<0.

zeta moves every point one step up inside its own copy of Z, so two points
are zeta-equivalent exactly when they carry the same label.  The contraction
``chi_model`` is s o zeta o vG with the group cross-section s(gamma) = -e_gamma.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .groups import GroupElement, IndexPoint, OrderTypeSpec

__all__ = [
    "ZetaMap",
    "GroupCrossSection",
    "zeta_apply",
    "zeta_inverse",
    "zeta_equiv",
    "zeta_equiv_witness",
    "zeta_quotient_order_type",
    "chi_model",
    "chi_equiv",
    "chi_equiv_witness",
]


@dataclass(frozen=True)
class ZetaMap:
    universe: OrderTypeSpec

    def __call__(self, gamma: IndexPoint) -> IndexPoint:
        return zeta_apply(gamma)

    def iterate(self, gamma: IndexPoint, n: int) -> IndexPoint:
        return IndexPoint(gamma.tier, gamma.offset + n)

    def quotient(self) -> OrderTypeSpec:
        return zeta_quotient_order_type(self)


@dataclass(frozen=True)
class GroupCrossSection:
    """gamma -> -e_gamma: a negative element whose class is gamma."""

    universe: OrderTypeSpec

    def __call__(self, gamma: IndexPoint) -> GroupElement:
        return GroupElement._raw(self.universe, ((IndexPoint(*gamma), -1),))


def zeta_apply(gamma: IndexPoint) -> IndexPoint:
    return IndexPoint(gamma.tier, gamma.offset + 1)


def zeta_inverse(gamma: IndexPoint) -> IndexPoint:
    return IndexPoint(gamma.tier, gamma.offset - 1)


def zeta_equiv(gamma: IndexPoint, other: IndexPoint) -> bool:
    """Decided by the class descriptor: same copy of Z."""
    return gamma.tier == other.tier


def zeta_equiv_witness(gamma: IndexPoint, other: IndexPoint, bound: int):
    """Smallest n <= bound with zeta^n(gamma) >= other and zeta^n(other) >= gamma.

    Literal search over iterates, kept independent of the descriptor rule.
    Returns None when no witness exists within the bound.
    """
    x, y = gamma, other
    for n in range(bound + 1):
        if x >= other and y >= gamma:
            return n
        x, y = zeta_apply(x), zeta_apply(y)
    return None


def zeta_quotient_order_type(z: ZetaMap) -> OrderTypeSpec:
    # one class per copy of Z, ordered as the labels
    return z.universe


def chi_model(g: GroupElement) -> GroupElement:
    if g.sign() >= 0:
        raise DomainError(f"chi is defined on negative elements, got {g}")
    return GroupCrossSection(g.universe)(zeta_apply(g.vG()))


def chi_equiv(g: GroupElement, other: GroupElement) -> bool:
    if g.sign() >= 0 or other.sign() >= 0:
        raise DomainError("chi-equivalence is defined on negative elements")
    return zeta_equiv(g.vG(), other.vG())


def chi_equiv_witness(g: GroupElement, other: GroupElement, bound: int, chi=chi_model):
    """Smallest n <= bound with chi^n(g) >= other and chi^n(other) >= g, else None."""
    x, y = g, other
    for n in range(bound + 1):
        if x >= other and y >= g:
            return n
        x, y = chi(x), chi(y)
    return None
