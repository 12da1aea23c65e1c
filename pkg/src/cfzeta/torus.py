"""Hyperbolic automorphisms of the 2-torus attached to quadratic irrationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import NamedTuple, Sequence, Union

import mpmath

from .cf import CFExpansion, _minimal_period, n0_n1
from .genfun import spectral_radius
from .matrix import IntMatrix
from .ratfun import Poly, PowerSeries, RationalFunction, series_exp

__all__ = [
    "ToralAutomorphism",
    "NotHyperbolicError",
    "from_quadratic",
    "fix_count",
    "fix_points_bruteforce",
    "entropy",
    "zeta",
    "zeta_series",
    "zeta_pole_radius",
    "PrimeReport",
    "is_prime_hyperbolic",
    "norm_and_geodesic_length",
]

BRUTEFORCE_GUARD = 10**6


class NotHyperbolicError(ValueError):
    pass


@dataclass(frozen=True)
class ToralAutomorphism:
    """``x -> M x mod Z^2`` for a hyperbolic integer matrix ``M``."""

    m: IntMatrix

    def __post_init__(self):
        m = self.m if isinstance(self.m, IntMatrix) else IntMatrix(self.m)
        object.__setattr__(self, "m", m)
        if m.n != 2:
            raise ValueError("toral automorphisms here act on the 2-torus")
        det, tr = m.det(), m.trace()
        if abs(det) != 1:
            raise ValueError(f"|det M| must be 1, got det = {det}")
        if (det == 1 and abs(tr) <= 2) or (det == -1 and tr == 0):
            raise NotHyperbolicError(f"matrix {m.tolist()} is not hyperbolic")

    @property
    def det(self) -> int:
        return self.m.det()

    @property
    def trace(self) -> int:
        return self.m.trace()

    def apply(self, x: Sequence[Fraction], n: int = 1) -> tuple[Fraction, Fraction]:
        """Exact image of a rational point under ``f^n``, reduced mod 1."""
        xs = [Fraction(c) for c in x]
        den = lcm(*(c.denominator for c in xs))
        v = _power(self.m, n) @ [c.numerator * (den // c.denominator) for c in xs]
        return tuple(Fraction(c % den, den) for c in v)


@lru_cache(maxsize=64)
def _power(m: IntMatrix, n: int) -> IntMatrix:
    return m**n


def from_quadratic(cf: CFExpansion) -> ToralAutomorphism:
    """The map induced by ``N0 N1 N0^{-1}`` (level 1)."""
    N0, N1 = n0_n1(cf, 1)
    return ToralAutomorphism(N0 @ N1 @ N0.inverse())


def fix_count(f: ToralAutomorphism, n: int) -> int:
    """``#Fix(f^n) = |det(id - M^n)|``."""
    if n < 1:
        raise ValueError("n must be positive")
    return abs((IntMatrix.identity(2) - f.m**n).det())


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _solve_range(coef: int, lo: int, hi: int) -> tuple[int, int] | None:
    """Integers ``t`` with ``lo <= coef * t <= hi``; ``None`` means unconstrained."""
    if coef == 0:
        return None if lo <= 0 <= hi else (1, 0)
    if coef > 0:
        return _ceil_div(lo, coef), hi // coef
    return _ceil_div(hi, coef), lo // coef


def fix_points_bruteforce(f: ToralAutomorphism, n: int, guard: int = BRUTEFORCE_GUARD) -> list[tuple[Fraction, Fraction]]:
    """All ``x`` in ``[0,1)^2`` with ``M^n x = x mod Z^2``, by enumeration.

    Scans the integer vectors ``v`` in the bounding box of
    ``(M^n - id)[0,1)^2`` and keeps those whose preimage
    ``(M^n - id)^{-1} v`` lies in the unit square.
    """
    A = f.m**n - IntMatrix.identity(2)
    (a, b), (c, d) = A.rows
    delta = a * d - b * c
    if abs(delta) > guard:
        raise ValueError(f"|det(M^n - id)| = {abs(delta)} exceeds the enumeration guard {guard}")
    sigma = 1 if delta > 0 else -1
    D = abs(delta)
    v1_lo, v1_hi = min(0, a) + min(0, b), max(0, a) + max(0, b)
    v2_lo, v2_hi = min(0, c) + min(0, d), max(0, c) + max(0, d)
    points = []
    for v1 in range(v1_lo, v1_hi + 1):
        lo, hi = v2_lo, v2_hi
        # x1 = sigma (d v1 - b v2) / D in [0, 1)
        # x2 = sigma (a v2 - c v1) / D in [0, 1)
        for rng in (
            _solve_range(-sigma * b, -sigma * d * v1, D - 1 - sigma * d * v1),
            _solve_range(sigma * a, sigma * c * v1, D - 1 + sigma * c * v1),
        ):
            if rng is not None:
                lo, hi = max(lo, rng[0]), min(hi, rng[1])
        for v2 in range(lo, hi + 1):
            u = sigma * (d * v1 - b * v2)
            w = sigma * (a * v2 - c * v1)
            if 0 <= u < D and 0 <= w < D:
                points.append((Fraction(u, D), Fraction(w, D)))
    return points


def entropy(f: ToralAutomorphism, prec: int = 128) -> mpmath.mpf:
    """Topological entropy ``log specrad(M)``."""
    lam = spectral_radius(f.m, prec + 16)
    with mpmath.workprec(prec):
        return mpmath.log(lam)


def zeta(f: ToralAutomorphism) -> RationalFunction:
    """Artin-Mazur zeta function in closed form.

    With ``s`` the sign of the dominant eigenvalue (the sign of the trace),
    ``zeta(z) = (1 - s z)(1 - s det z) / det(id - s z M)``.
    """
    s = 1 if f.trace > 0 else -1
    det, tr = f.det, f.trace
    num = Poly([1, -s]) * Poly([1, -s * det])
    den = Poly([1, -s * tr, det])
    return RationalFunction(num, den)


def zeta_series(f: ToralAutomorphism, order: int) -> PowerSeries:
    """``exp(sum_{n<=order} #Fix(f^n) z^n / n)`` computed from the counts."""
    if order < 1:
        raise ValueError("order must be positive")
    log_series = PowerSeries([0] + [Fraction(fix_count(f, n), n) for n in range(1, order + 1)], order)
    return series_exp(log_series)


def zeta_pole_radius(f: ToralAutomorphism, prec: int = 128) -> mpmath.mpf:
    """Smallest modulus among the poles of the closed-form zeta function."""
    den = zeta(f).den
    with mpmath.workprec(prec + 32):
        roots = mpmath.polyroots([mpmath.mpf(c.numerator) / c.denominator for c in reversed(den.coeffs)], extraprec=prec)
        r = min(abs(x) for x in roots)
    with mpmath.workprec(prec):
        return +r


class PrimeReport(NamedTuple):
    prime: bool
    case: str  # "a", "b" or "none"
    length: int  # period length the verdict refers to


def is_prime_hyperbolic(cf: Union[CFExpansion, Sequence[int]]) -> PrimeReport:
    """Arithmetic primality test for the period block of a continued fraction.

    A block of even length ``L`` gives a prime element when either ``L`` is
    its minimal period (case a) or ``L`` is twice an odd minimal period
    (case b).  A block of odd minimal length is judged at doubled length,
    which always lands in case b.  Blocks such as ``[1,2,1,2]`` that repeat
    an even period are not prime.
    """
    block = tuple(cf.period) if isinstance(cf, CFExpansion) else tuple(int(a) for a in cf)
    if not block:
        raise ValueError("period block must be non-empty")
    L = len(block)
    m = _minimal_period(block)
    if L == m and L % 2 == 1:
        return PrimeReport(True, "b", 2 * L)
    if L % 2 == 0 and m == L:
        return PrimeReport(True, "a", L)
    if L % 2 == 0 and L == 2 * m and m % 2 == 1:
        return PrimeReport(True, "b", L)
    return PrimeReport(False, "none", L)


def norm_and_geodesic_length(f: ToralAutomorphism, prec: int = 128) -> tuple[mpmath.mpf, mpmath.mpf]:
    """Norm ``t^2`` and closed-geodesic length ``2 log t``.

    ``t > 1`` solves ``t + 1/t = |tr M|`` when ``det M = 1`` and
    ``t - 1/t = |tr M|`` when ``det M = -1``.
    """
    tr = abs(f.trace)
    with mpmath.workprec(prec + 16):
        if f.det == 1:
            t = (tr + mpmath.sqrt(tr * tr - 4)) / 2
        else:
            t = (tr + mpmath.sqrt(tr * tr + 4)) / 2
        norm = t * t
        length = abs(mpmath.log(norm))
    with mpmath.workprec(prec):
        return +norm, +length
