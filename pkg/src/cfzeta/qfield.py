"""Exact arithmetic for real quadratic surds.

A surd is stored as ``(p + sqrt(d)) / q`` with integers ``p, q, d``,
``d > 0`` non-square and ``q | d - p**2``.  Among all such triples
representing the same real number the one with the smallest ``|q|`` is
kept, so structural equality coincides with equality of values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

import mpmath

__all__ = [
    "QuadraticSurd",
    "QuadraticNumber",
    "SurdError",
    "surd_new",
    "surd_floor",
    "gauss_step",
    "galois_conjugate",
    "minimal_polynomial",
    "surd_to_float",
]


class SurdError(ValueError):
    """Base class for invalid surd construction."""


class NonPositiveRadicandError(SurdError):
    pass


class SquareRadicandError(SurdError):
    pass


class ZeroDenominatorError(SurdError):
    pass


def _is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def _sign(n: int) -> int:
    return (n > 0) - (n < 0)


@dataclass(frozen=True)
class QuadraticSurd:
    """The real number ``(p_num + sqrt(d_rad)) / q_den`` in reduced PQa form.

    Use :func:`surd_new` (or :meth:`from_parts`) rather than the raw
    constructor; it validates and canonicalises the triple.
    """

    p_num: int
    q_den: int
    d_rad: int

    @classmethod
    def from_parts(cls, a: int, b: int, c: int, d: int) -> "QuadraticSurd":
        """Canonical surd for ``(a + b*sqrt(d)) / c`` with ``b != 0``."""
        if b == 0:
            raise SurdError("radical coefficient must be nonzero")
        s = _sign(b)
        return surd_new(s * a, s * c, b * b * d)

    # -- basic predicates --------------------------------------------------

    def sign(self) -> int:
        """Exact sign of the value (never zero, the value is irrational)."""
        p, d = self.p_num, self.d_rad
        top = 1 if p >= 0 or d > p * p else -1
        return top * _sign(self.q_den)

    def __neg__(self) -> "QuadraticSurd":
        return surd_new(self.p_num, -self.q_den, self.d_rad)

    def __abs__(self) -> "QuadraticSurd":
        return self if self.sign() > 0 else -self

    def __sub__(self, other: int) -> "QuadraticSurd":
        if not isinstance(other, int):
            return NotImplemented
        return surd_new(self.p_num - other * self.q_den, self.q_den, self.d_rad)

    def __add__(self, other: int) -> "QuadraticSurd":
        if not isinstance(other, int):
            return NotImplemented
        return surd_new(self.p_num + other * self.q_den, self.q_den, self.d_rad)

    def __lt__(self, other: int) -> bool:
        if not isinstance(other, int):
            return NotImplemented
        return (self - other).sign() < 0

    def __gt__(self, other: int) -> bool:
        if not isinstance(other, int):
            return NotImplemented
        return (self - other).sign() > 0

    def __float__(self) -> float:
        return float(surd_to_float(self, 64))

    def __str__(self) -> str:
        p, q, d = self.p_num, self.q_den, self.d_rad
        if p == 0:
            return f"sqrt({d})/{q}"
        return f"({p}+sqrt({d}))/{q}"

    def mobius(self, a: int, b: int, c: int, d: int) -> "QuadraticSurd":
        """Image under ``x -> (a x + b) / (c x + d)`` for an integer matrix
        with nonzero determinant."""
        p, q, D = self.p_num, self.q_den, self.d_rad
        u = a * p + b * q
        v = c * p + d * q
        num_rat = u * v - a * c * D
        den = v * v - c * c * D
        det = a * d - b * c
        if det == 0:
            raise SurdError("singular Mobius transformation")
        return QuadraticSurd.from_parts(num_rat, det * q, den, D)

    def as_number(self, d: int | None = None) -> "QuadraticNumber":
        """This value as an element ``r + s*sqrt(d)`` of a fixed field."""
        return QuadraticNumber(Fraction(self.p_num, self.q_den), Fraction(1, self.q_den), self.d_rad).rebase(
            self.d_rad if d is None else d
        )


def surd_new(p: int, q: int, d: int) -> QuadraticSurd:
    """Canonical surd with value ``(p + sqrt(d)) / q``.

    Raises
    ------
    NonPositiveRadicandError
        If ``d <= 0``.
    SquareRadicandError
        If ``d`` is a perfect square (the value would be rational).
    ZeroDenominatorError
        If ``q == 0``.
    """
    if q == 0:
        raise ZeroDenominatorError("denominator q must be nonzero")
    if d <= 0:
        raise NonPositiveRadicandError(f"radicand must be positive, got {d}")
    if _is_square(d):
        raise SquareRadicandError(f"radicand {d} is a perfect square")
    # The primitive minimal polynomial A x^2 + B x + C (A > 0) bounds every
    # valid denominator: q | d - p^2 forces q = +-k A, so |q| is A or 2A at best.
    s = _sign(q)
    A, B, C = q * q, -2 * p * q, p * p - d
    g = gcd(gcd(A, B), C)
    A, B, C = A // g, B // g, C // g
    p, q, d = -s * B, 2 * s * A, B * B - 4 * A * C
    # d - p^2 = -4 A C, so halving keeps q | d - p^2 whenever B is even
    if B % 2 == 0:
        p, q, d = p // 2, q // 2, d // 4
    return QuadraticSurd(p, q, d)


def surd_floor(x: QuadraticSurd) -> int:
    """Greatest integer below ``x``, using only integer square roots."""
    s = isqrt(x.d_rad)
    p, q = x.p_num, x.q_den
    if q > 0:
        return (p + s) // q
    return (-p - s - 1) // (-q)


def gauss_step(x: QuadraticSurd) -> tuple[int, QuadraticSurd]:
    """One step of the Gauss map ``x -> {1/x}``.

    Returns the partial quotient ``floor(1/x)`` and the new surd.
    """
    if not (x > 0 and x < 1):
        raise ValueError(f"gauss_step needs 0 < x < 1, got {x}")
    p, q, d = x.p_num, x.q_den, x.d_rad
    # 1/x = (-p + sqrt(d)) / ((d - p^2) / q), exact by the PQa invariant
    q1 = (d - p * p) // q
    inv = QuadraticSurd(-p, q1, d)
    a = surd_floor(inv)
    return a, surd_new(-p - a * q1, q1, d)


def galois_conjugate(x: QuadraticSurd) -> QuadraticSurd:
    """``(p - sqrt(d)) / q``."""
    return surd_new(-x.p_num, -x.q_den, x.d_rad)


def minimal_polynomial(x: QuadraticSurd) -> tuple[int, int, int]:
    """Primitive ``(a, b, c)`` with ``a > 0`` and ``a x^2 + b x + c = 0``."""
    p, q, d = x.p_num, x.q_den, x.d_rad
    a, b, c = q * q, -2 * p * q, p * p - d
    g = gcd(gcd(a, b), c)
    return a // g, b // g, c // g


def surd_to_float(x: QuadraticSurd, bits: int = 128) -> mpmath.mpf:
    """Value of ``x`` with relative error below ``2**(1 - bits)``."""
    if bits < 53:
        raise ValueError("bits must be at least 53")
    p, q, d = x.p_num, x.q_den, x.d_rad
    with mpmath.workprec(bits + 16):
        root = mpmath.sqrt(d)
        if p >= 0:
            val = (p + root) / q
        else:
            # p + sqrt(d) = (d - p^2) / (sqrt(d) - p), no cancellation
            val = mpmath.mpf(d - p * p) / ((root - p) * q)
    with mpmath.workprec(bits):
        return +val


@dataclass(frozen=True)
class QuadraticNumber:
    """Element ``r + s*sqrt(d)`` of the field Q(sqrt(d)), rationals exact."""

    r: Fraction
    s: Fraction
    d: int

    def rebase(self, d: int) -> "QuadraticNumber":
        """Same value written over ``sqrt(d)``; ``d * self.d`` must be a square."""
        if d == self.d or self.s == 0:
            return QuadraticNumber(self.r, self.s, d)
        t = isqrt(d * self.d)
        if t * t != d * self.d:
            raise ValueError(f"sqrt({self.d}) does not lie in Q(sqrt({d}))")
        # sqrt(self.d) = (t / d) sqrt(d)
        return QuadraticNumber(self.r, self.s * Fraction(t, d), d)

    def _coerce(self, other) -> "QuadraticNumber":
        if isinstance(other, QuadraticNumber):
            return other.rebase(self.d)
        if isinstance(other, QuadraticSurd):
            return other.as_number(self.d)
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber(Fraction(other), Fraction(0), self.d)
        raise TypeError(type(other))

    def __add__(self, other):
        o = self._coerce(other)
        return QuadraticNumber(self.r + o.r, self.s + o.s, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.r, -self.s, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return QuadraticNumber(self.r * o.r + self.s * o.s * self.d, self.r * o.s + self.s * o.r, self.d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticNumber":
        norm = self.r * self.r - self.s * self.s * self.d
        if norm == 0:
            raise ZeroDivisionError("zero has no inverse")
        return QuadraticNumber(self.r / norm, -self.s / norm, self.d)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __eq__(self, other) -> bool:
        if not isinstance(other, (QuadraticNumber, QuadraticSurd, int, Fraction)):
            return NotImplemented
        try:
            o = self._coerce(other)
        except ValueError:
            return False
        return self.r == o.r and self.s == o.s

    def __hash__(self) -> int:
        return hash((self.r, self.s * self.s * self.d))

    def is_zero(self) -> bool:
        return self.r == 0 and self.s == 0

    def to_surd(self) -> QuadraticSurd:
        """Back to canonical surd form (requires an irrational value)."""
        den = self.r.denominator * self.s.denominator
        a = self.r * den
        b = self.s * den
        assert a.denominator == 1 and b.denominator == 1
        return QuadraticSurd.from_parts(int(a), int(b), den, self.d)
