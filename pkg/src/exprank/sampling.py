"""Seeded random elements for the property suites.

Series have at most four terms, exponents with offsets in the window and
coefficients drawn from ``COEFF_POOL``.  Everything is driven by a single
``random.Random`` so a (seed, config) pair always yields the same stream.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .groups import GroupElement, IndexPoint, OrderTypeSpec
from .series import Series
from .tower import StageElement, StageGroup

__all__ = ["COEFF_POOL", "Sampler"]

COEFF_POOL = tuple(Fraction(x) for x in (1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2), 3, -3))
POSITIVE_POOL = tuple(c for c in COEFF_POOL if c > 0)


class Sampler:
    def __init__(self, seed, window=(-3, 3), max_terms=4):
        self.rng = random.Random(seed)
        self.lo, self.hi = window
        self.max_terms = max_terms

    def coeff(self) -> Fraction:
        return self.rng.choice(COEFF_POOL)

    def positive_coeff(self) -> Fraction:
        return self.rng.choice(POSITIVE_POOL)

    def point(self, universe: OrderTypeSpec) -> IndexPoint:
        return IndexPoint(self.rng.randrange(len(universe)), self.rng.randint(self.lo, self.hi))

    # value groups

    def group_element(self, universe: OrderTypeSpec, max_terms=3) -> GroupElement:
        """A nonzero element of G."""
        while True:
            n = self.rng.randint(1, max_terms)
            g = GroupElement(universe, [(self.point(universe), self.coeff()) for _ in range(n)])
            if g:
                return g

    def exponent(self, universe, sign=0, depth_terms=2):
        """A nonzero value at any stage; ``sign`` forces it negative or positive."""
        if isinstance(universe, StageGroup):
            lower = universe.lower()
            n = self.rng.randint(1, depth_terms)
            terms = [(self.exponent(lower, -1, depth_terms), self.coeff()) for _ in range(n)]
            payload = Series(lower, terms)
            if payload.stored_zero:
                payload = Series(lower, terms[:1])
            g = StageElement(universe, payload)
        else:
            g = self.group_element(universe)
        if sign and g.sign() != sign:
            g = -g
        return g

    # series

    def _tail(self, universe, lead, count):
        """Terms with exponents strictly above ``lead``."""
        return [(lead + self.exponent(universe, 1), self.coeff()) for _ in range(count)]

    def series(self, universe, exact=True) -> Series:
        n = self.rng.randint(1, self.max_terms)
        terms = [(self.exponent(universe), self.coeff()) for _ in range(n)]
        if self.rng.random() < 0.3:
            terms.append((universe.zero(), self.coeff()))
        a = Series(universe, terms)
        if not exact and a.terms:
            top = max((e for e, _ in a.terms), key=_Sortable)
            a = a.truncate(top + self.exponent(universe, 1))
        return a

    def positive_infinite(self, universe, monic=False) -> Series:
        lead = self.exponent(universe, -1)
        c = Fraction(1) if monic else self.positive_coeff()
        count = self.rng.randint(0, self.max_terms - 1)
        terms = [(lead, c)] + self._tail(universe, lead, count)
        if self.rng.random() < 0.3:
            terms.append((universe.zero(), self.coeff()))
        return Series(universe, terms)

    def infinitesimal(self, universe) -> Series:
        lead = self.exponent(universe, 1)
        count = self.rng.randint(0, self.max_terms - 1)
        return Series(universe, [(lead, self.coeff())] + self._tail(universe, lead, count))

    def one_unit(self, universe) -> Series:
        return self.infinitesimal(universe) + 1

    def positive(self, universe, monic=False) -> Series:
        """A positive element of any size."""
        kind = self.rng.randrange(3)
        if kind == 0:
            return self.positive_infinite(universe, monic)
        c = Fraction(1) if monic else self.positive_coeff()
        if kind == 1:
            return self.infinitesimal(universe) + c
        eps = self.infinitesimal(universe)
        lead = eps.terms[0][0]
        return Series(universe, [(lead, c)] + self._tail(universe, lead, self.rng.randint(0, 2)))


class _Sortable:
    __slots__ = ("e",)

    def __init__(self, e):
        self.e = e

    def __lt__(self, other):
        return self.e < other.e
