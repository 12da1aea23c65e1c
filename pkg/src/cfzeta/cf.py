"""Continued fractions of quadratic irrationals and the E-matrix calculus."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, NamedTuple

from .matrix import IntMatrix, matprod
from .qfield import QuadraticSurd, gauss_step, surd_new

__all__ = [
    "CFExpansion",
    "ABCoefficients",
    "expand",
    "convergents",
    "convergents_of_terms",
    "e_matrix",
    "e_factorization",
    "n0_n1",
    "ab_coefficients",
    "monomial_vector",
]

# Lagrange guarantees termination; this only guards against a broken invariant.
_MAX_ORBIT = 1_000_000


def _minimal_period(block: tuple[int, ...]) -> int:
    n = len(block)
    for d in range(1, n + 1):
        if n % d == 0 and block[:d] * (n // d) == block:
            return d
    return n


@dataclass(frozen=True)
class CFExpansion:
    """Eventually periodic simple continued fraction ``[a_1..a_k; (a_k+1..a_k+l)]``.

    The constructor canonicalises: the period is shortened to its minimal
    length and the preperiod is rolled into the period as far as possible,
    so ``k`` and ``l`` are always minimal.
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        pre = tuple(int(a) for a in self.preperiod)
        per = tuple(int(a) for a in self.period)
        if not per:
            raise ValueError("period must be non-empty")
        if any(a < 1 for a in pre + per):
            raise ValueError("partial quotients must be positive integers")
        per = per[: _minimal_period(per)]
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = per[-1:] + per[:-1]
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @property
    def k(self) -> int:
        return len(self.preperiod)

    @property
    def ell(self) -> int:
        return len(self.period)

    def term(self, n: int) -> int:
        """Partial quotient ``a_n`` (1-indexed)."""
        if n < 1:
            raise IndexError("partial quotients are indexed from 1")
        if n <= self.k:
            return self.preperiod[n - 1]
        return self.period[(n - self.k - 1) % self.ell]

    def terms(self, count: int, start: int = 1) -> list[int]:
        return [self.term(i) for i in range(start, start + count)]

    def shift(self, m: int) -> "CFExpansion":
        """Expansion of ``T^m(theta)``."""
        if m <= self.k:
            return CFExpansion(self.preperiod[m:], self.period)
        j = (m - self.k) % self.ell
        return CFExpansion((), self.period[j:] + self.period[:j])

    def periodic_surd(self) -> QuadraticSurd:
        """The purely periodic complete quotient ``T^k(theta)``."""
        (a, b), (c, d) = n0_n1(self, 1)[1].rows
        # fixed point of x -> (a x + b) / (c x + d) in (0, 1)
        return surd_new(a - d, 2 * c, (a - d) ** 2 + 4 * b * c)

    def to_surd(self) -> QuadraticSurd:
        """The quadratic irrational in (0, 1) with this expansion."""
        x = self.periodic_surd()
        for a in reversed(self.preperiod):
            x = x.mobius(0, 1, 1, a)
        return x

    def __str__(self) -> str:
        pre = ",".join(map(str, self.preperiod))
        per = ",".join(map(str, self.period))
        return f"[{pre};({per})]"


def expand(x: QuadraticSurd) -> CFExpansion:
    """Continued fraction of a surd in (0, 1) by exact Gauss-map iteration.

    The orbit of complete quotients is tracked in a dict; the first repeat
    fixes both the minimal preperiod and the minimal period.
    """
    seen: dict[QuadraticSurd, int] = {}
    quotients: list[int] = []
    cur = x
    while cur not in seen:
        if len(quotients) > _MAX_ORBIT:
            raise RuntimeError("continued fraction orbit did not close")
        seen[cur] = len(quotients)
        a, cur = gauss_step(cur)
        quotients.append(a)
    k = seen[cur]
    return CFExpansion(tuple(quotients[:k]), tuple(quotients[k:]))


def convergents_of_terms(terms: Iterable[int], n: int) -> list[tuple[int, int]]:
    """First ``n`` convergents ``(p_i, q_i)``, seeded with ``(0, 1)``."""
    out = [(0, 1)]
    p_prev, q_prev = 1, 0
    p, q = 0, 1
    it = iter(terms)
    while len(out) < n:
        a = next(it)
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
        out.append((p, q))
    return out[:n]


def convergents(cf: CFExpansion, n: int) -> list[tuple[int, int]]:
    """``[(p_0, q_0), ..., (p_{n-1}, q_{n-1})]`` with ``(p_0, q_0) = (0, 1)``
    and ``(p_1, q_1) = (1, a_1)``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return convergents_of_terms((cf.term(i) for i in range(1, n)), n)


def e_matrix(a: int, r: int) -> IntMatrix:
    """``E(a; r)``: carries the degree-``r`` monomials of ``(p, q)`` one Gauss
    step back.

    Row ``s`` expands ``p^(r-s) q^s`` with ``p = q'`` and ``q = p' + a q'``
    in the basis ``p'^(r-c) q'^c``.
    """
    if a < 1 or r < 1:
        raise ValueError("need a >= 1 and r >= 1")
    rows = []
    for s in range(r + 1):
        row = []
        for c in range(r + 1):
            j = r - c
            row.append(comb(s, j) * a ** (s - j) if j <= s else 0)
        rows.append(row)
    return IntMatrix(rows)


def e_factorization(a: int, r: int) -> tuple[IntMatrix, IntMatrix]:
    """``E(a; r) = R(r) @ U(a; r)`` with ``R`` the anti-diagonal permutation
    and ``U`` upper unitriangular."""
    e = e_matrix(a, r)
    n = r + 1
    R = IntMatrix([[int(i + j == r) for j in range(n)] for i in range(n)])
    U = IntMatrix(reversed(e.rows))
    return R, U


def n0_n1(cf: CFExpansion, r: int) -> tuple[IntMatrix, IntMatrix]:
    """Level-``r`` products over the preperiod and over one period."""
    N0 = matprod([e_matrix(a, r) for a in cf.preperiod], r + 1)
    N1 = matprod([e_matrix(a, r) for a in cf.period], r + 1)
    return N0, N1


class ABCoefficients(NamedTuple):
    """Entries of ``E(a_{n-m}) ... E(a_n) = [[B_m, B_m1], [A_m, A_m1]]``."""

    A_m: int
    A_m1: int
    B_m: int
    B_m1: int


def ab_coefficients(cf: CFExpansion, n: int, m: int) -> ABCoefficients:
    if not 0 <= m <= n - 1:
        raise IndexError(f"need 0 <= m <= n - 1, got n={n}, m={m}")
    prod = matprod([e_matrix(cf.term(i), 1) for i in range(n - m, n + 1)], 2)
    (b_m, b_m1), (a_m, a_m1) = prod.rows
    return ABCoefficients(a_m, a_m1, b_m, b_m1)


def monomial_vector(p: int, q: int, r: int) -> list[int]:
    """``[p^r, p^(r-1) q, ..., q^r]``."""
    return [p ** (r - s) * q**s for s in range(r + 1)]
