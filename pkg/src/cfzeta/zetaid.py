"""The zeta-function identity for a quadratic irrational, checked exactly.

The convergent pair matrices ``C_n = [[p_n, p_n+1], [q_n, q_n+1]]``
factor as ``E(a_1) ... E(a_n+1)``.  Summing ``z^n C_n`` over the preperiod,
the first period and all further periods gives

    X = Y + U W V,    W = (id - z^l N1)^(-1),

so ``trace W`` is computable from the convergent generating functions
alone.  On the other side ``trace W`` is a sum of traces of ``N1^n``, which
are the fixed-point counts of the toral map up to explicit corrections.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cf import CFExpansion, convergents, e_matrix, n0_n1
from .genfun import generating_vector
from .matrix import IntMatrix, matprod
from .ratfun import (
    Poly,
    PowerSeries,
    RationalFunction,
    Z,
    mat_mul,
    mat_rf_inverse,
    mat_trace,
    poly_adjugate_det,
    series_expand,
)
from .torus import from_quadratic, zeta

__all__ = [
    "IdentityReport",
    "SingularVError",
    "uvxy",
    "w_direct",
    "w_from_uvxy",
    "det_v",
    "det_v_formula",
    "zeta_side",
    "main_identity_check",
    "period_traces",
    "trace_w_series",
    "pair_series_decomposition_check",
]

RFMatrix = list[list[RationalFunction]]


class SingularVError(ZeroDivisionError):
    """``V(z)`` is singular; ``witness`` holds ``det V``."""

    def __init__(self, witness: Poly):
        super().__init__(f"V(z) is singular, det V = {witness}")
        self.witness = witness


def _poly_matrix(m: IntMatrix, shift: int = 0) -> list[list[Poly]]:
    return [[Poly.monomial(shift, m[i, j]) for j in range(m.n)] for i in range(m.n)]


def _add_poly_matrix(acc: list[list[Poly]], other: list[list[Poly]]) -> list[list[Poly]]:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(acc, other)]


def _rf(m: list[list[Poly]]) -> RFMatrix:
    return [[RationalFunction(v) for v in row] for row in m]


def _zero2() -> list[list[Poly]]:
    return [[Poly(), Poly()], [Poly(), Poly()]]


def _v_poly(cf: CFExpansion) -> list[list[Poly]]:
    k = cf.k
    V = _zero2()
    prod = IntMatrix.identity(2)
    for m in range(cf.ell):
        prod = prod @ e_matrix(cf.term(k + m + 1), 1)
        V = _add_poly_matrix(V, _poly_matrix(prod, m))
    return V


def _pair_series(cf: CFExpansion, order: int) -> list[list[PowerSeries]]:
    conv = convergents(cf, order + 2)
    p = [c[0] for c in conv]
    q = [c[1] for c in conv]
    return [
        [PowerSeries(p[: order + 1], order), PowerSeries(p[1 : order + 2], order)],
        [PowerSeries(q[: order + 1], order), PowerSeries(q[1 : order + 2], order)],
    ]


def uvxy(cf: CFExpansion, N: int | None = None) -> tuple[RFMatrix, RFMatrix, RFMatrix, RFMatrix]:
    """The four matrices ``U, V, X, Y``.

    Parameters
    ----------
    cf : CFExpansion
        Expansion of the quadratic irrational.
    N : int, optional
        Order to which ``X`` (built from closed forms) is compared with the
        directly summed pair series.  Defaults to ``2 (k + l) + 4``, which
        is also the minimum accepted.

    Returns
    -------
    tuple
        ``(U, V, X, Y)`` as 2x2 lists of rational functions.
    """
    k, ell = cf.k, cf.ell
    floor = 2 * (k + ell) + 4
    if N is None:
        N = floor
    if N < floor:
        raise ValueError(f"order N={N} is too small to certify X (need N >= {floor})")
    N0 = n0_n1(cf, 1)[0]
    U = _poly_matrix(N0, k)
    V = _v_poly(cf)
    Y = _zero2()
    prod = IntMatrix.identity(2)
    for n in range(k):
        prod = prod @ e_matrix(cf.term(n + 1), 1)
        Y = _add_poly_matrix(Y, _poly_matrix(prod, n))
    gv = generating_vector(cf, 1)
    fp, fq = gv[0], gv[1]
    z = RationalFunction(Z)
    # p_0 = 0, q_0 = 1
    X = [[fp, fp / z], [fq, (fq - 1) / z]]
    direct = _pair_series(cf, N)
    for i in range(2):
        for j in range(2):
            if series_expand(X[i][j], N) != direct[i][j]:
                raise AssertionError(f"closed form of X[{i}][{j}] disagrees with the convergent series")
    return _rf(U), _rf(V), X, _rf(Y)


def w_direct(cf: CFExpansion) -> RFMatrix:
    """``(id - z^l N1)^(-1)``."""
    N1 = n0_n1(cf, 1)[1]
    M = [[Poly([int(i == j)]) - Poly.monomial(cf.ell, N1[i, j]) for j in range(2)] for i in range(2)]
    return mat_rf_inverse(M)


def w_from_uvxy(cf: CFExpansion, N: int | None = None) -> RFMatrix:
    """``U^(-1) (X - Y) V^(-1)``; raises :class:`SingularVError` if ``det V = 0``."""
    U, V, X, Y = uvxy(cf, N)
    dv = det_v(cf)
    if dv.is_zero():
        raise SingularVError(dv)
    XY = [[X[i][j] - Y[i][j] for j in range(2)] for i in range(2)]
    return mat_mul(mat_mul(mat_rf_inverse(U), XY), mat_rf_inverse(V))


def det_v(cf: CFExpansion) -> Poly:
    """Determinant of ``V(z)``, an integer polynomial of degree at most ``2l - 2``."""
    return poly_adjugate_det(_v_poly(cf))[1]


def _det2(a: int, b: int, c: int, d: int) -> int:
    return a * d - b * c


def det_v_formula(cf: CFExpansion) -> Poly:
    """``det V`` from the convergents ``p_m, q_m`` of ``T^k(theta)``.

    ``det[[p0,pl],[q0,ql]] z^(l-1)`` plus, for ``0 < m < l``,
    ``det[[p0,pm],[q0,qm]] z^(m-1) + det[[pm,pl],[qm,ql]] z^(l+m-1)``.
    """
    ell = cf.ell
    conv = convergents(cf.shift(cf.k), ell + 1)
    (p0, q0), (pl, ql) = conv[0], conv[ell]
    out = Poly.monomial(ell - 1, _det2(p0, pl, q0, ql))
    for m in range(1, ell):
        pm, qm = conv[m]
        out = out + Poly.monomial(m - 1, _det2(p0, pm, q0, qm))
        out = out + Poly.monomial(ell + m - 1, _det2(pm, pl, qm, ql))
    return out


def zeta_side(cf: CFExpansion) -> RationalFunction:
    """``2 + w (log zeta)'(w) + w / (1 - w) + (-z)^l / (1 - (-z)^l)`` with ``w = z^l``."""
    ell = cf.ell
    f = from_quadratic(cf)
    w = RationalFunction(Poly.monomial(ell))
    v = RationalFunction(Poly.monomial(ell, (-1) ** ell))
    dlog = zeta(f).log_derivative().compose_power(ell)
    return 2 + w * dlog + w / (1 - w) + v / (1 - v)


@dataclass
class IdentityReport:
    lhs: RationalFunction
    rhs: RationalFunction
    equal_exact: bool
    series_checked_to: int
    witness: int | None = None  # first differing series coefficient

    def to_json(self) -> dict:
        return {
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "lhs_text": str(self.lhs),
            "rhs_text": str(self.rhs),
            "equal_exact": self.equal_exact,
            "series_checked_to": self.series_checked_to,
            "witness": self.witness,
        }


def main_identity_check(cf: CFExpansion, N: int = 40) -> IdentityReport:
    """Compare the zeta side with ``trace(U^(-1) (X - Y) V^(-1))``.

    Equality is decided on canonical rational functions; the series
    comparison up to ``z^N`` is a second, independent witness.
    """
    if N < 10:
        raise ValueError("order N must be at least 10")
    lhs = zeta_side(cf)
    rhs = mat_trace(w_from_uvxy(cf, max(N, 2 * (cf.k + cf.ell) + 4)))
    sl, sr = series_expand(lhs, N), series_expand(rhs, N)
    witness = next((n for n in range(N + 1) if sl[n] != sr[n]), None)
    equal = lhs == rhs and witness is None
    return IdentityReport(lhs, rhs, equal, N, None if equal else (witness if witness is not None else -1))


def period_traces(cf: CFExpansion, n_max: int) -> list[tuple[int, int]]:
    """``(trace, det)`` of ``N1^n`` for ``n = 1..n_max``."""
    N1 = n0_n1(cf, 1)[1]
    out = []
    power = IntMatrix.identity(2)
    for _ in range(n_max):
        power = power @ N1
        out.append((power.trace(), power.det()))
    return out


def trace_w_series(cf: CFExpansion, order: int) -> PowerSeries:
    return series_expand(mat_trace(w_direct(cf)), order)


def pair_series_decomposition_check(cf: CFExpansion, m: int, order: int) -> bool:
    """``sum_n z^n C_n = sum_{n<m} z^n C_n + z^m E(a_1)..E(a_m) sum_n z^n C_n(T^m theta)``
    on series truncated at ``order``."""
    full = _pair_series(cf, order)
    head = matprod([e_matrix(cf.term(i), 1) for i in range(1, m + 1)], 2)
    tail = _pair_series(cf.shift(m), order)
    conv = convergents(cf, m + 1) if m else []
    for i in range(2):
        for j in range(2):
            coeffs = [0] * (order + 1)
            for n in range(min(m, order + 1)):
                coeffs[n] = conv[n + j][i]
            for c in range(2):
                for n in range(order + 1 - m):
                    coeffs[n + m] += head[i, c] * tail[c][j][n]
            if PowerSeries(coeffs, order) != full[i][j]:
                return False
    return True
