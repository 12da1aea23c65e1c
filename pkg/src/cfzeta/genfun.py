"""Rational generating functions of convergent monomials.

For a quadratic irrational with convergents ``p_n / q_n`` the series
``F_{p^(r-s) q^s}(z) = sum_n p_n^(r-s) q_n^s z^n`` are rational, with
closed form ``P0(z) + (id - z^l N)^(-1) P1(z)`` where ``N = N0 N1 N0^-1``
is built from level-``r`` E-matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath

from .cf import CFExpansion, convergents, e_matrix, expand, monomial_vector, n0_n1
from .matrix import IntMatrix, matprod
from .qfield import QuadraticSurd, gauss_step
from .ratfun import Poly, PowerSeries, RationalFunction, poly_adjugate_det, series_expand

__all__ = [
    "MAX_LEVEL",
    "GenFunVector",
    "ShiftReport",
    "generating_vector",
    "p0_p1",
    "direct_series",
    "spectral_radius",
    "radius_of_convergence",
    "shift_identity_check",
    "dominant_growth_ratios",
    "closed_form_series",
    "conjugated_period_matrix",
]

# symbolic inversion of (id - z^l N) grows quickly with the level
MAX_LEVEL = 4


@dataclass(frozen=True)
class GenFunVector:
    """``entries[s] = F_{p^(r-s) q^s}`` for ``s = 0..r``."""

    r: int
    entries: tuple[RationalFunction, ...]
    denominator: Poly = field(compare=False)

    def __getitem__(self, s: int) -> RationalFunction:
        return self.entries[s]

    def __len__(self) -> int:
        return len(self.entries)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "entries": [{"s": s, "monomial": _monomial_name(self.r, s), **f.to_json()} for s, f in enumerate(self.entries)],
        }


def _monomial_name(r: int, s: int) -> str:
    return f"p^{r - s} q^{s}"


def _check_level(r: int) -> None:
    if r < 1:
        raise ValueError("level r must be at least 1")
    if r > MAX_LEVEL:
        raise ValueError(f"level r={r} exceeds the supported maximum {MAX_LEVEL}")


def p0_p1(cf: CFExpansion, r: int) -> tuple[list[Poly], list[Poly]]:
    """Polynomial vectors summing ``z^n v_n`` over the preperiod
    (``0 <= n < k``) and over the first period (``k <= n < k + l``), where
    ``v_n`` is the degree-``r`` monomial vector of ``(p_n, q_n)``."""
    k, ell = cf.k, cf.ell
    conv = convergents(cf, k + ell)
    p0 = [[0] * k for _ in range(r + 1)]
    p1 = [[0] * (k + ell) for _ in range(r + 1)]
    for n, (p, q) in enumerate(conv):
        target = p0 if n < k else p1
        for s, v in enumerate(monomial_vector(p, q, r)):
            target[s][n] = v
    return [Poly(c) for c in p0], [Poly(c) for c in p1]


def conjugated_period_matrix(cf: CFExpansion, r: int) -> IntMatrix:
    """``N0 N1 N0^{-1}`` at level ``r``."""
    N0, N1 = n0_n1(cf, r)
    return N0 @ N1 @ N0.inverse()


@lru_cache(maxsize=512)
def generating_vector(cf: CFExpansion, r: int = 1) -> GenFunVector:
    """Closed-form generating functions of all degree-``r`` convergent monomials.

    Parameters
    ----------
    cf : CFExpansion
        Expansion of the quadratic irrational.
    r : int
        Monomial degree, ``1 <= r <= MAX_LEVEL``.

    Returns
    -------
    GenFunVector
        ``r + 1`` rational functions, entry ``s`` generating ``p_n^(r-s) q_n^s``.
    """
    _check_level(r)
    N = conjugated_period_matrix(cf, r)
    ell = cf.ell
    dim = r + 1
    M = [[Poly([int(i == j)]) - Poly.monomial(ell, N[i, j]) for j in range(dim)] for i in range(dim)]
    adj, det = poly_adjugate_det(M)
    P0, P1 = p0_p1(cf, r)
    entries = []
    for s in range(dim):
        top = sum((adj[s][j] * P1[j] for j in range(dim)), Poly())
        entries.append(RationalFunction(P0[s] * det + top, det))
    return GenFunVector(r, tuple(entries), det)


def direct_series(cf: CFExpansion, r: int, s: int, order: int) -> PowerSeries:
    """``sum_{n <= order} p_n^(r-s) q_n^s z^n`` straight from the convergents."""
    if not 0 <= s <= r:
        raise ValueError("need 0 <= s <= r")
    conv = convergents(cf, order + 1)
    return PowerSeries([p ** (r - s) * q**s for p, q in conv], order)


def spectral_radius(m: IntMatrix, prec: int = 128, tol_bits: int = 50) -> mpmath.mpf:
    """Spectral radius of an integer matrix.

    2x2 matrices are solved from the characteristic polynomial; larger
    (non-negative, primitive) matrices by power iteration until the
    relative change drops below ``2**-tol_bits``.
    """
    with mpmath.workprec(prec + 16):
        if m.n == 2:
            tr, det = m.trace(), m.det()
            disc = tr * tr - 4 * det
            if disc < 0:
                return mpmath.sqrt(abs(det))
            root = mpmath.sqrt(disc)
            lam = (abs(tr) + root) / 2
        else:
            lam = _power_iteration(m, tol_bits)
    with mpmath.workprec(prec):
        return +lam


def _power_iteration(m: IntMatrix, tol_bits: int, max_iter: int = 100_000) -> mpmath.mpf:
    n = m.n
    rows = [[mpmath.mpf(v) for v in row] for row in m.rows]
    vec = [mpmath.mpf(1)] * n
    lam = mpmath.mpf(0)
    tol = mpmath.mpf(2) ** (-tol_bits)
    for _ in range(max_iter):
        nxt = [mpmath.fsum(a * b for a, b in zip(row, vec)) for row in rows]
        norm = max(abs(v) for v in nxt)
        new_lam = norm / max(abs(v) for v in vec)
        vec = [v / norm for v in nxt]
        if lam and abs(new_lam - lam) <= tol * new_lam:
            return new_lam
        lam = new_lam
    raise RuntimeError("power iteration did not converge")


def radius_of_convergence(cf: CFExpansion, r: int = 1, prec: int = 128) -> mpmath.mpf:
    """``specrad(N1)^(-1/l)`` with ``N1`` the level-``r`` period product."""
    _check_level(r)
    N1 = n0_n1(cf, r)[1]
    lam = spectral_radius(N1, prec)
    with mpmath.workprec(prec):
        return lam ** (mpmath.mpf(-1) / cf.ell)


def dominant_growth_ratios(m: IntMatrix, n_max: int) -> list[Fraction]:
    """``max entry of m^(n+1) / max entry of m^n`` for ``n = 1..n_max``."""
    out = []
    power = m
    prev = max(max(row) for row in power.rows)
    for _ in range(n_max):
        power = power @ m
        cur = max(max(row) for row in power.rows)
        out.append(Fraction(cur, prev))
        prev = cur
    return out


@dataclass
class ShiftReport:
    passed: bool
    m: int
    r: int
    order: int
    mismatch: tuple[int, int] | None = None  # (component s, coefficient index)


def shift_identity_check(x: QuadraticSurd, m: int, r: int, order: int) -> ShiftReport:
    """Check the ``m``-fold Gauss-shift identity for the monomial generating
    functions of ``x`` on series truncated at ``order``.

    The left side is summed from the convergents of ``x``; the right side
    is ``sum_{n<m} z^n v_n + z^m E(a_1;r)...E(a_m;r) F^(m)`` with ``F^(m)``
    summed from an independent expansion of ``T^m(x)``.
    """
    if m <= 0:
        return ShiftReport(True, m, r, order)
    cf = expand(x)
    shifted = x
    quotients = []
    for _ in range(m):
        a, shifted = gauss_step(shifted)
        quotients.append(a)
    cf_hat = expand(shifted)
    E = matprod([e_matrix(a, r) for a in quotients], r + 1)
    lhs = [direct_series(cf, r, s, order) for s in range(r + 1)]
    rhs_hat = [direct_series(cf_hat, r, s, order) for s in range(r + 1)]
    head = convergents(cf, m)
    for s in range(r + 1):
        coeffs = [0] * (order + 1)
        for n, (p, q) in enumerate(head):
            if n <= order:
                coeffs[n] += monomial_vector(p, q, r)[s]
        for j in range(r + 1):
            if E[s, j]:
                for n in range(order + 1 - m):
                    coeffs[n + m] += E[s, j] * rhs_hat[j][n]
        for n in range(order + 1):
            if coeffs[n] != lhs[s][n]:
                return ShiftReport(False, m, r, order, (s, n))
    return ShiftReport(True, m, r, order)


def closed_form_series(cf: CFExpansion, r: int, s: int, order: int) -> PowerSeries:
    return series_expand(generating_vector(cf, r)[s], order)
