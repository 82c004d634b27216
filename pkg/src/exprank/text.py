"""Parsers for the printed forms of group elements, series and stage elements.

    group    := '0' | gterm (('+' | '-') gterm)*        leading '-' allowed
    gterm    := [rat '*'] 'e(' label ',' int ')' ['/' rat]
    series   := body [floor]
    body     := sterm (('+' | '-') sterm)*              leading '-' allowed
    sterm    := rat | [rat '*'] 't^{' exponent '}'
    floor    := '(exact)' | '(mod t^{' exponent '})'
    exponent := group                                   at stage 0
              | 's' n '{' body '}'                      at stage n >= 1

Printing is ``str()`` on the objects; parse(str(x)) == x for all of them.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import DomainError, ParseError
from .groups import GroupElement, IndexPoint, OrderTypeSpec
from .series import INF, Series
from .tower import StageElement, StageGroup, stage_universe

__all__ = ["parse_group", "parse_series", "parse_stage_element", "parse_point", "Scanner"]

_INT = re.compile(r"\d+")
_LABEL = re.compile(r"[A-Za-z0-9_]+")


class Scanner:
    """Cursor over a string that skips blanks between tokens."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.ws()
        return self.text.startswith(s, self.pos)

    def eat(self, s: str) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def expect(self, s: str):
        if not self.eat(s):
            self.fail(f"expected {s!r}")

    def at_end(self) -> bool:
        self.ws()
        return self.pos >= len(self.text)

    def fail(self, msg):
        got = self.text[self.pos:self.pos + 10] or "end of input"
        raise ParseError(f"{msg} near {got!r}", self.pos)

    def match(self, pattern):
        self.ws()
        m = pattern.match(self.text, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return m.group(0)

    def integer(self) -> int:
        neg = self.eat("-")
        s = self.match(_INT)
        if s is None:
            self.fail("expected an integer")
        return -int(s) if neg else int(s)

    def rational(self) -> Fraction:
        """Unsigned p or p/q."""
        s = self.match(_INT)
        if s is None:
            self.fail("expected a number")
        q = Fraction(int(s))
        if self.peek("/") and not self.text.startswith("/", self.pos + 1):
            save = self.pos
            self.eat("/")
            d = self.match(_INT)
            if d is None:
                self.pos = save
                return q
            if int(d) == 0:
                self.fail("division by zero")
            q /= int(d)
        return q

    def label(self) -> str:
        s = self.match(_LABEL)
        if s is None:
            self.fail("expected a label")
        return s


def _signs(sc: Scanner, term):
    """term (('+'|'-') term)* with an optional leading '-'; yields signed results."""
    out = []
    sign = -1 if sc.eat("-") else 1
    while True:
        out.append((sign, term()))
        if sc.eat("+"):
            sign = 1
        elif sc.eat("-"):
            sign = -1
        else:
            return out


def read_point(sc: Scanner, universe: OrderTypeSpec) -> IndexPoint:
    sc.expect("(")
    sc.ws()
    start = sc.pos
    lab = sc.label()
    sc.expect(",")
    n = sc.integer()
    sc.expect(")")
    try:
        return universe.point(lab, n)
    except DomainError as exc:
        sc.pos = start
        sc.fail(str(exc))


def _gterm(sc: Scanner, universe):
    coeff = Fraction(1)
    if sc.match(re.compile(r"(?=\d)")) is not None:
        coeff = sc.rational()
        if not sc.eat("*"):
            if coeff != 0:
                sc.fail("a group element has no constant term")
            return None, coeff
    sc.expect("e")
    p = read_point(sc, universe)
    if sc.eat("/"):
        d = sc.rational()
        if d == 0:
            sc.fail("division by zero")
        coeff /= d
    return p, coeff


def read_group(sc: Scanner, universe: OrderTypeSpec) -> GroupElement:
    acc = {}
    for sign, (p, c) in _signs(sc, lambda: _gterm(sc, universe)):
        if p is not None:
            acc[p] = acc.get(p, 0) + sign * c
    return GroupElement(universe, acc)


def read_exponent(sc: Scanner, universe):
    if isinstance(universe, OrderTypeSpec):
        return read_group(sc, universe)
    start = sc.pos
    sc.expect("s")
    n = sc.integer()
    if n != universe.stage:
        sc.pos = start
        sc.fail(f"expected a stage {universe.stage} element")
    sc.expect("{")
    payload = read_body(sc, universe.lower())
    sc.expect("}")
    try:
        return StageElement(universe, payload)
    except DomainError as exc:
        sc.pos = start
        sc.fail(str(exc))


def _sterm(sc: Scanner, universe):
    coeff = Fraction(1)
    if not sc.peek("t^{"):
        coeff = sc.rational()
        if not sc.eat("*"):
            return universe.zero(), coeff
    sc.expect("t^{")
    e = read_exponent(sc, universe)
    sc.expect("}")
    return e, coeff


def read_body(sc: Scanner, universe) -> Series:
    terms = [(e, sign * c) for sign, (e, c) in _signs(sc, lambda: _sterm(sc, universe))]
    return Series(universe, terms)


def read_series(sc: Scanner, universe) -> Series:
    body = read_body(sc, universe)
    floor = INF
    if sc.eat("(exact)"):
        pass
    elif sc.eat("(mod"):
        sc.expect("t^{")
        floor = read_exponent(sc, universe)
        sc.expect("}")
        sc.expect(")")
    return Series(universe, body.terms, floor)


def _finish(sc: Scanner, value):
    if not sc.at_end():
        sc.fail("unexpected trailing text")
    return value


_STAGE_TAG = re.compile(r"t\^\{\s*s(\d+)\s*\{")


def detect_stage(text: str) -> int:
    m = _STAGE_TAG.search(text)
    return int(m.group(1)) if m else 0


def parse_point(text: str, universe: OrderTypeSpec) -> IndexPoint:
    sc = Scanner(text)
    return _finish(sc, read_point(sc, universe))


def parse_group(text: str, universe: OrderTypeSpec) -> GroupElement:
    sc = Scanner(text)
    return _finish(sc, read_group(sc, universe))


def parse_series(text: str, base: OrderTypeSpec, stage=None) -> Series:
    """Parse a series; the stage is read off the first stage tag unless given."""
    if stage is None:
        stage = detect_stage(text)
    sc = Scanner(text)
    return _finish(sc, read_series(sc, stage_universe(base, stage)))


def parse_stage_element(text: str, base: OrderTypeSpec):
    m = re.match(r"\s*s(\d+)", text)
    if not m:
        return parse_group(text, base)
    sc = Scanner(text)
    return _finish(sc, read_exponent(sc, StageGroup(base, int(m.group(1)))))
