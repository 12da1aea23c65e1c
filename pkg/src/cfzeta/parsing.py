"""Text grammars for surds, continued fractions and integer matrices.

    surd    := ["("] term (("+" | "-") term)* [")"] ["/" int]
    term    := int | [int "*"] "sqrt(" int ")"
    cf      := "[" [int ("," int)*] ";" ["("] int ("," int)* [")"] "]"
    matrix  := "[" "[" int "," int "]" "," "[" int "," int "]" "]"

Whitespace is ignored everywhere.
"""

from __future__ import annotations

from typing import Union

from .cf import CFExpansion
from .matrix import IntMatrix
from .qfield import QuadraticSurd, SurdError, surd_floor
from .torus import ToralAutomorphism

__all__ = ["ParseError", "RationalInputError", "parse_surd", "parse_cf", "parse_matrix", "parse_input"]


class ParseError(ValueError):
    """Malformed input; ``position`` is the 0-based offset of the problem."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


class RationalInputError(ValueError):
    """The input parses but denotes a rational number."""


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def fail(self, message: str):
        raise ParseError(message, self.text, self.pos)

    def accept(self, token: str) -> bool:
        self._skip()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str) -> None:
        if not self.accept(token):
            self.fail(f"expected {token!r}")

    def integer(self, signed: bool = True) -> int:
        self._skip()
        start = self.pos
        if signed and self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.pos = start
            self.fail("expected an integer")
        return int(self.text[start : self.pos])

    def at_int(self) -> bool:
        return self.peek().isdigit()

    def end(self) -> None:
        if self.peek():
            self.fail("unexpected trailing input")


def parse_surd(text: str, reduce: bool = True) -> QuadraticSurd:
    """Parse ``(p+sqrt(d))/q`` style input.

    With ``reduce`` the value is taken mod 1, so the result lies in (0, 1).
    """
    sc = _Scanner(text)
    wrapped = sc.accept("(")
    rat, rad, d = 0, 0, None
    sign = 1
    if sc.accept("-"):
        sign = -1
    else:
        sc.accept("+")
    while True:
        coef = 1
        if sc.at_int():
            coef = sc.integer(signed=False)
            if not sc.accept("*"):
                rat += sign * coef
                coef = None
        if coef is not None:
            start = sc.pos
            sc.expect("sqrt(")
            radicand = sc.integer(signed=False)
            sc.expect(")")
            if d is not None:
                sc.pos = start
                sc.fail("only one square root term is allowed")
            d, rad = radicand, sign * coef
        nxt = sc.peek()
        if nxt == "+":
            sign = 1
        elif nxt == "-":
            sign = -1
        else:
            break
        sc.pos += 1
    if wrapped:
        sc.expect(")")
    den = 1
    if sc.accept("/"):
        den = sc.integer()
        if den == 0:
            sc.fail("zero denominator")
    sc.end()
    if d is None or rad == 0:
        raise RationalInputError(f"input {text!r} is rational; a quadratic irrational is required")
    try:
        x = QuadraticSurd.from_parts(rat, rad, den, d)
    except SurdError as exc:
        if "square" in str(exc):
            raise RationalInputError(f"input {text!r} is rational (sqrt({d}) is an integer)") from exc
        raise ParseError(str(exc), text, 0) from exc
    if reduce:
        x = x - surd_floor(x)
    return x


def _int_list(sc: _Scanner, stop: str) -> list[int]:
    out: list[int] = []
    if sc.peek() in stop:
        return out
    out.append(sc.integer())
    while sc.accept(","):
        out.append(sc.integer())
    return out


def parse_cf(text: str) -> CFExpansion:
    """Parse ``[a1,...,ak;(b1,...,bl)]``; the parentheses are optional."""
    sc = _Scanner(text)
    sc.expect("[")
    pre = _int_list(sc, ";")
    sc.expect(";")
    paren = sc.accept("(")
    start = sc.pos
    per = _int_list(sc, ")]")
    if not per:
        sc.fail("period must be non-empty")
    if paren:
        sc.expect(")")
    sc.expect("]")
    sc.end()
    if any(a < 1 for a in pre + per):
        sc.pos = start
        sc.fail("partial quotients must be positive")
    return CFExpansion(tuple(pre), tuple(per))


def parse_matrix(text: str) -> ToralAutomorphism:
    """Parse ``[[a,b],[c,d]]`` into a hyperbolic toral automorphism."""
    sc = _Scanner(text)
    sc.expect("[")
    rows = []
    for i in range(2):
        if i:
            sc.expect(",")
        sc.expect("[")
        a = sc.integer()
        sc.expect(",")
        b = sc.integer()
        sc.expect("]")
        rows.append([a, b])
    sc.expect("]")
    sc.end()
    return ToralAutomorphism(IntMatrix(rows))


def parse_input(text: str) -> Union[QuadraticSurd, CFExpansion, ToralAutomorphism]:
    """Dispatch on the shape of ``text`` to one of the three grammars."""
    stripped = text.strip()
    if stripped.startswith("[") and stripped[1:].lstrip().startswith("["):
        return parse_matrix(text)
    if stripped.startswith("["):
        return parse_cf(text)
    return parse_surd(text)
