"""Exact univariate polynomials, rational functions and truncated power
series over the rationals.

Rational functions are kept in lowest terms.  The denominator is an
integer primitive polynomial whose lowest-order nonzero coefficient is
positive, so ``1/(1 - z - z^2)`` prints the way it is usually written and
equality is structural.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence, Union

__all__ = [
    "Poly",
    "RationalFunction",
    "PowerSeries",
    "poly_gcd",
    "series_expand",
    "series_exp",
    "mat_rf_inverse",
    "poly_adjugate_det",
    "Z",
]

Scalar = Union[int, Fraction]


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


class Poly:
    """Polynomial in ``z`` with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        c = [_frac(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def monomial(cls, n: int, c: Scalar = 1) -> "Poly":
        return cls([0] * n + [c])

    @property
    def degree(self) -> int:
        """Degree, ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self) -> int:
        """Index of the lowest nonzero coefficient."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ValueError("zero polynomial has no valuation")

    def lc(self) -> Fraction:
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return _render_poly(self)

    def __add__(self, other) -> "Poly":
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> "Poly":
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self.coeffs)
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        return reduce(lambda acc, _: acc * self, range(k), Poly([1]))

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lc()
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for i in range(len(rem) - dq - 1, -1, -1):
            c = rem[i + dq] / lead
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return Poly(quot), Poly(rem[:dq] if dq > 0 else [])

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def __call__(self, z):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def compose_power(self, ell: int, sign: int = 1) -> "Poly":
        """``P(sign * z^ell)``."""
        out = [Fraction(0)] * (self.degree * ell + 1 if self.coeffs else 0)
        for i, c in enumerate(self.coeffs):
            out[i * ell] = c * sign**i
        return Poly(out)

    def shift_down(self, n: int) -> "Poly":
        """Divide by ``z^n`` (requires the low coefficients to vanish)."""
        if any(self.coeffs[:n]):
            raise ArithmeticError(f"polynomial is not divisible by z^{n}")
        return Poly(self.coeffs[n:])

    def integer_primitive(self) -> tuple[Fraction, list[int]]:
        """``self = c * P`` with ``P`` integer, primitive, positive leading coefficient."""
        if self.is_zero():
            return Fraction(0), []
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(gcd, ints)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), [v // g for v in ints]

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise ValueError("polynomial has non-integer coefficients")
        return [int(c) for c in self.coeffs]


def _as_poly(v):
    if isinstance(v, Poly):
        return v
    if isinstance(v, (int, Fraction)):
        return Poly([v])
    return NotImplemented


Z = Poly([0, 1])


# -- gcd ------------------------------------------------------------------


def _iprem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer polynomials (lowest degree first)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    delta = len(a) - len(b) + 1
    while len(r) - 1 >= db and r:
        c = r[-1]
        shift = len(r) - 1 - db
        r = [lb * v for v in r]
        for j, bj in enumerate(b):
            r[shift + j] -= c * bj
        r.pop()
        delta -= 1
        while r and r[-1] == 0:
            r.pop()
    return [v * lb**delta for v in r] if delta > 0 else r


def _icontent(a: list[int]) -> int:
    return reduce(gcd, a, 0)


def _iprimitive(a: list[int]) -> list[int]:
    g = _icontent(a)
    if a[-1] < 0:
        g = -g
    return [v // g for v in a]


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Greatest common divisor as an integer primitive polynomial with
    positive leading coefficient (subresultant PRS over the integers)."""
    if a.is_zero():
        return Poly(b.integer_primitive()[1]) if not b.is_zero() else Poly()
    if b.is_zero():
        return Poly(a.integer_primitive()[1])
    A = a.integer_primitive()[1]
    B = b.integer_primitive()[1]
    if len(A) < len(B):
        A, B = B, A
    g = h = 1
    while True:
        delta = len(A) - len(B)
        R = _iprem(A, B)
        if not R:
            return Poly(_iprimitive(B))
        if len(R) == 1:
            return Poly([1])
        A, B = B, [v // (g * h**delta) for v in R]
        g = A[-1]
        h = g**delta // h ** (delta - 1) if delta else h
        # h^(1-delta) * g^delta; delta == 0 keeps h unchanged


# -- rendering ------------------------------------------------------------


def _render_poly(p: Poly, var: str = "z") -> str:
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for i, c in enumerate(p.coeffs):
        if not c:
            continue
        mag = abs(c)
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag} {mono}" if mag.denominator == 1 else f"({mag}) {mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def _exact_json(c: Fraction):
    return int(c) if c.denominator == 1 else [c.numerator, c.denominator]


# -- rational functions ---------------------------------------------------


class RationalFunction:
    """``num / den`` in canonical lowest terms."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, *, _canonical: bool = False):
        num = _as_poly(num) if not isinstance(num, Poly) else num
        den = _as_poly(den) if not isinstance(den, Poly) else den
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num: Poly = num
        self.den: Poly = den

    @classmethod
    def const(cls, c: Scalar) -> "RationalFunction":
        return cls(Poly([c]), Poly([1]), _canonical=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Poly)):
            other = RationalFunction(other)
        return isinstance(other, RationalFunction) and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalFunction({self})"

    def __str__(self) -> str:
        num = _render_poly(self.num)
        if self.den == Poly([1]):
            return num
        if sum(1 for c in self.num.coeffs if c) > 1:
            num = f"({num})"
        den = _render_poly(self.den)
        if sum(1 for c in self.den.coeffs if c) > 1 or self.den.coeffs[-1] != 1:
            den = f"({den})"
        return f"{num} / {den}"

    def to_json(self) -> dict:
        return {"num": [_exact_json(c) for c in self.num.coeffs], "den": [_exact_json(c) for c in self.den.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "RationalFunction":
        def conv(v):
            return Fraction(v[0], v[1]) if isinstance(v, list) else Fraction(v)

        return cls(Poly(conv(v) for v in obj["num"]), Poly(conv(v) for v in obj["den"]))

    def __add__(self, other) -> "RationalFunction":
        other = _as_rf(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den, _canonical=True)

    def __sub__(self, other) -> "RationalFunction":
        other = _as_rf(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "RationalFunction":
        return _as_rf(other) - self

    def __mul__(self, other) -> "RationalFunction":
        other = _as_rf(other)
        if other is NotImplemented:
            return other
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("cannot invert the zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other) -> "RationalFunction":
        other = _as_rf(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other) -> "RationalFunction":
        return _as_rf(other) * self.inverse()

    def __pow__(self, k: int) -> "RationalFunction":
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.num**k, self.den**k)

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def log_derivative(self) -> "RationalFunction":
        """``f' / f``."""
        return self.derivative() / self

    def compose_power(self, ell: int, sign: int = 1) -> "RationalFunction":
        """``f(sign * z^ell)``."""
        return RationalFunction(self.num.compose_power(ell, sign), self.den.compose_power(ell, sign))

    def __call__(self, z):
        return self.num(z) / self.den(z)

    def is_integral(self) -> bool:
        return self.num.is_integral() and self.den.is_integral()

    def series(self, order: int) -> "PowerSeries":
        return series_expand(self, order)


def _as_rf(v):
    if isinstance(v, RationalFunction):
        return v
    if isinstance(v, (int, Fraction)):
        return RationalFunction.const(v)
    if isinstance(v, Poly):
        return RationalFunction(v, Poly([1]), _canonical=True)
    return NotImplemented


def _canonicalize(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if num.is_zero():
        return Poly(), Poly([1])
    if den.degree > 0 and num.degree > 0:
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
    scale, ints = den.integer_primitive()
    if ints[den.valuation()] < 0:
        scale = -scale
        ints = [-v for v in ints]
    return num * (1 / scale), Poly(ints)


# -- power series ---------------------------------------------------------


class PowerSeries:
    """Truncated series ``c_0 + c_1 z + ... + c_N z^N``; ``order`` is ``N``."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence[Scalar], order: int | None = None):
        order = len(coeffs) - 1 if order is None else order
        c = [_frac(v) for v in list(coeffs)[: order + 1]]
        c += [Fraction(0)] * (order + 1 - len(c))
        self.coeffs: tuple[Fraction, ...] = tuple(c)
        self.order = order

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def __len__(self) -> int:
        return self.order + 1

    def __eq__(self, other) -> bool:
        return isinstance(other, PowerSeries) and self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"PowerSeries({[str(c) for c in self.coeffs]})"

    def truncate(self, order: int) -> "PowerSeries":
        return PowerSeries(self.coeffs, min(order, self.order))

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        return PowerSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], n)

    def __neg__(self) -> "PowerSeries":
        return PowerSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return self + (-other)

    def __mul__(self, other) -> "PowerSeries":
        if isinstance(other, (int, Fraction)):
            return PowerSeries([c * other for c in self.coeffs], self.order)
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            a = self.coeffs[i]
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return PowerSeries(out, n)

    __rmul__ = __mul__

    def shift(self, m: int) -> "PowerSeries":
        """Multiply by ``z^m`` keeping the same order."""
        return PowerSeries([0] * m + list(self.coeffs), self.order)

    def derivative(self) -> "PowerSeries":
        return PowerSeries([i * c for i, c in enumerate(self.coeffs) if i], self.order - 1)

    def integral(self) -> "PowerSeries":
        return PowerSeries([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)], self.order + 1)

    def inverse(self) -> "PowerSeries":
        if self.coeffs[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        return series_expand(RationalFunction(Poly([1]), Poly(self.coeffs), _canonical=True), self.order)

    def log(self) -> "PowerSeries":
        if self.coeffs[0] != 1:
            raise ValueError("log needs constant term 1")
        return (self.derivative() * self.inverse().truncate(self.order - 1)).integral()

    def exp(self) -> "PowerSeries":
        return series_exp(self)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise ValueError("series has non-integer coefficients")
        return [int(c) for c in self.coeffs]


def series_expand(f: RationalFunction, order: int) -> PowerSeries:
    """Maclaurin coefficients ``c_0..c_order`` of ``f`` by long division."""
    den = f.den.coeffs
    if not den or den[0] == 0:
        raise ZeroDivisionError("rational function has a pole at the origin")
    d0 = den[0]
    num = f.num
    out: list[Fraction] = []
    for n in range(order + 1):
        acc = num[n]
        for j in range(1, min(n, len(den) - 1) + 1):
            acc -= den[j] * out[n - j]
        out.append(acc / d0)
    return PowerSeries(out, order)


def series_exp(s: PowerSeries) -> PowerSeries:
    """``exp(s)`` for a series with zero constant term.

    Uses ``n f_n = sum_{k=1..n} k s_k f_{n-k}`` from ``f' = s' f``.
    """
    if s.coeffs[0] != 0:
        raise ValueError("series_exp needs a zero constant term")
    f = [Fraction(1)]
    for n in range(1, s.order + 1):
        acc = sum((k * s.coeffs[k] * f[n - k] for k in range(1, n + 1)), Fraction(0))
        f.append(acc / n)
    return PowerSeries(f, s.order)


# -- matrices of rational functions ----------------------------------------


def _poly_det_cofactor(m: list[list[Poly]]) -> Poly:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = Poly()
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * _poly_det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def _poly_adjugate_cofactor(m: list[list[Poly]]) -> list[list[Poly]]:
    n = len(m)
    if n == 1:
        return [[Poly([1])]]
    adj = [[Poly()] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1 :] for k, row in enumerate(m) if k != i]
            c = _poly_det_cofactor(minor)
            adj[j][i] = c if (i + j) % 2 == 0 else -c
    return adj


def _poly_adjugate_bareiss(m: list[list[Poly]]) -> tuple[list[list[Poly]], Poly]:
    """Fraction-free Gauss-Jordan on ``[M | I]``; returns ``(adj M, det M)``."""
    n = len(m)
    a = [list(row) + [Poly([int(i == j)]) for j in range(n)] for i, row in enumerate(m)]
    sign = 1
    prev = Poly([1])
    for k in range(n):
        piv = next((i for i in range(k, n) if not a[i][k].is_zero()), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(n):
            if i == k:
                continue
            a[i] = [(x * a[k][k] - a[i][k] * y).exact_div(prev) for x, y in zip(a[i], a[k])]
        prev = a[k][k]
    # after the sweep the left block is d*I with d = sign * det and the
    # right block is d * M^{-1}
    det = prev * sign
    adj = [[v * sign for v in row[n:]] for row in a]
    return adj, det


def poly_adjugate_det(m: Sequence[Sequence[Poly]]) -> tuple[list[list[Poly]], Poly]:
    """Adjugate and determinant of a polynomial matrix: cofactors up to
    dimension 3, fraction-free elimination above."""
    m = [[_as_poly(v) for v in row] for row in m]
    if len(m) <= 3:
        return _poly_adjugate_cofactor(m), _poly_det_cofactor(m)
    return _poly_adjugate_bareiss(m)


def mat_rf_inverse(M: Sequence[Sequence]) -> list[list[RationalFunction]]:
    """Exact inverse of a square matrix of rational functions."""
    rows = [[_as_rf(v) for v in row] for row in M]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    common = Poly([1])
    for row in rows:
        for v in row:
            if v.den != common:
                common = common * v.den.exact_div(poly_gcd(common, v.den))
    polys = [[v.num * common.exact_div(v.den) for v in row] for row in rows]
    adj, det = poly_adjugate_det(polys)
    if det.is_zero():
        raise ZeroDivisionError("matrix is singular")
    return [[RationalFunction(a * common, det) for a in row] for row in adj]


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    """Product of matrices whose entries support ``+`` and ``*``."""
    cols = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col)), RationalFunction.const(0)) for col in cols] for row in A]


def mat_trace(A: Sequence[Sequence]):
    return sum((A[i][i] for i in range(len(A))), RationalFunction.const(0))
