"""Levy constants of quadratic irrationals, computed four ways."""

from __future__ import annotations

import math
import statistics
from fractions import Fraction
from dataclasses import asdict, dataclass
from random import Random

import mpmath
import numpy as np

from .cf import CFExpansion, convergents, expand, n0_n1
from .genfun import spectral_radius
from .matrix import IntMatrix
from .qfield import QuadraticNumber, QuadraticSurd, gauss_step, surd_to_float

__all__ = [
    "LEVY_AE",
    "LevyReport",
    "levy_exact",
    "levy_empirical",
    "levy_birkhoff",
    "levy_report",
    "renorm_intervals",
    "renorm_product_identity",
    "levy_ae_montecarlo",
]

#: pi^2 / (12 log 2), the almost-everywhere value of lim (1/n) log q_n
LEVY_AE = math.pi**2 / (12 * math.log(2))


def _period_matrix(cf: CFExpansion) -> IntMatrix:
    return n0_n1(cf, 1)[1]


def levy_exact(cf: CFExpansion, prec: int = 128) -> mpmath.mpf:
    """``(1/l) log specrad(N1)`` with the spectral radius taken from the
    characteristic polynomial of the period matrix."""
    lam = spectral_radius(_period_matrix(cf), prec + 16)
    with mpmath.workprec(prec):
        return mpmath.log(lam) / cf.ell


def levy_empirical(cf: CFExpansion, n: int, prec: int = 128) -> mpmath.mpf:
    """``(1/n) log q_n`` with ``q_n`` exact."""
    if n < 2:
        raise ValueError("depth n must be at least 2")
    q_n = convergents(cf, n + 1)[n][1]
    with mpmath.workprec(prec):
        return mpmath.log(mpmath.mpf(q_n)) / n


def levy_birkhoff(cf: CFExpansion, prec: int = 128) -> mpmath.mpf:
    """Minus the average of ``log T^s(theta^k)`` over the periodic orbit."""
    x = cf.periodic_surd()
    with mpmath.workprec(prec + 16):
        total = mpmath.mpf(0)
        for _ in range(cf.ell):
            total += mpmath.log(surd_to_float(x, prec + 16))
            _, x = gauss_step(x)
        val = -total / cf.ell
    with mpmath.workprec(prec):
        return +val


@dataclass
class LevyReport:
    ell: int
    charpoly: tuple[int, int, int]  # constant term first
    exact: mpmath.mpf
    empirical: mpmath.mpf
    depth: int
    birkhoff: mpmath.mpf
    exact_vs_birkhoff: mpmath.mpf
    exact_vs_empirical: mpmath.mpf

    def to_json(self, digits: int = 30) -> dict:
        out = asdict(self)
        for key in ("exact", "empirical", "birkhoff", "exact_vs_birkhoff", "exact_vs_empirical"):
            out[key] = mpmath.nstr(out[key], digits)
        out["charpoly"] = list(self.charpoly)
        return out


def levy_report(cf: CFExpansion, depth: int = 10_000, prec: int = 128) -> LevyReport:
    exact = levy_exact(cf, prec)
    emp = levy_empirical(cf, depth, prec)
    birk = levy_birkhoff(cf, prec)
    with mpmath.workprec(prec):
        return LevyReport(
            ell=cf.ell,
            charpoly=_period_matrix(cf).charpoly(),
            exact=exact,
            empirical=emp,
            depth=depth,
            birkhoff=birk,
            exact_vs_birkhoff=abs(exact - birk),
            exact_vs_empirical=abs(exact - emp),
        )


def renorm_intervals(x: QuadraticSurd, n: int) -> list[QuadraticSurd]:
    """Exact ``|q_i x - p_i|`` for ``i = 0..n``."""
    conv = convergents(expand(x), n + 1)
    P, Q, D = x.p_num, x.q_den, x.d_rad
    # q x - p = (q P - p Q + q sqrt(D)) / Q
    return [abs(QuadraticSurd.from_parts(q * P - p * Q, q, Q, D)) for p, q in conv]


def renorm_product_identity(x: QuadraticSurd, n: int) -> bool:
    """Exact check of ``|D_j| / |D_0| = T(x) T^2(x) ... T^j(x)`` for all ``j <= n``."""
    deltas = [d.as_number(x.d_rad) for d in renorm_intervals(x, n)]
    prod = QuadraticNumber(Fraction(1), Fraction(0), x.d_rad)
    y = x
    for j in range(1, n + 1):
        _, y = gauss_step(y)
        prod = prod * y
        if deltas[j] / deltas[0] != prod:
            return False
    return True


def _draw_rational(rng: Random, digits: int) -> tuple[int, int]:
    q = rng.randrange(10 ** (digits - 1), 10**digits)
    p = rng.randrange(1, q)
    return p, q


def _log_q_at_depth(p: int, q: int, depth: int) -> float | None:
    """``log q_depth`` of ``p/q`` by the integer Euclidean algorithm, or
    ``None`` if the expansion is shorter than ``depth``."""
    # p/q in (0, 1): first partial quotient comes from q / p
    q_prev, q_cur = 0, 1
    num, den = q, p
    for _ in range(depth):
        if den == 0:
            return None
        a, rem = divmod(num, den)
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        num, den = den, rem
    return float(mpmath.log(q_cur))


def levy_ae_montecarlo(samples: int, depth: int, seed: int, digits: int | None = None) -> tuple[float, float]:
    """Mean and sample standard deviation of ``(1/depth) log q_depth`` over
    uniform random rationals with ``digits``-digit denominators.

    Every sample has its own generator spawned from ``seed``, so the
    result does not depend on evaluation order.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    if depth < 100:
        raise ValueError("depth must be at least 100")
    if digits is None:
        digits = math.ceil(1.8 * depth)
    needed = 1.5 * depth * math.log10(math.exp(1.19))
    if digits < needed:
        raise ValueError(f"{digits}-digit denominators are too small for depth {depth} (need >= {needed:.0f})")
    children = np.random.SeedSequence(seed).spawn(samples)
    values = []
    for child in children:
        hi, lo = (int(w) for w in child.generate_state(2, dtype=np.uint64))
        rng = Random(hi << 64 | lo)
        while True:
            lq = _log_q_at_depth(*_draw_rational(rng, digits), depth)
            if lq is not None:
                break
        values.append(lq / depth)
    mean = statistics.fmean(values)
    spread = statistics.stdev(values) if len(values) > 1 else 0.0
    return mean, spread
