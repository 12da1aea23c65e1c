"""Square matrices over arbitrary-precision integers."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

__all__ = ["IntMatrix"]


class IntMatrix:
    """Immutable square integer matrix, stored row-major as nested tuples."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise ValueError("IntMatrix must be square and non-empty")
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self.rows]})"

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if other.n != self.n:
                raise ValueError("dimension mismatch")
            cols = list(zip(*other.rows))
            return IntMatrix([[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows])
        vec = list(other)
        return [sum(a * b for a, b in zip(row, vec)) for row in self.rows]

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix([[c * a for a in r] for r in self.rows])

    def __pow__(self, k: int) -> "IntMatrix":
        if k < 0:
            return self.inverse() ** (-k)
        result = IntMatrix.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def transpose(self) -> "IntMatrix":
        return IntMatrix(zip(*self.rows))

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.n))

    def det(self) -> int:
        """Determinant by Bareiss fraction-free elimination."""
        a = [list(r) for r in self.rows]
        n = self.n
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def inverse(self) -> "IntMatrix":
        """Inverse of a unimodular matrix (raises if not integral)."""
        inv = self.rational_inverse()
        if any(v.denominator != 1 for row in inv for v in row):
            raise ValueError("matrix is not unimodular; inverse is not integral")
        return IntMatrix([[int(v) for v in row] for row in inv])

    def rational_inverse(self) -> list[list[Fraction]]:
        n = self.n
        a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(self.rows)]
        for col in range(n):
            piv = next((i for i in range(col, n) if a[i][col] != 0), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            a[col], a[piv] = a[piv], a[col]
            pv = a[col][col]
            a[col] = [v / pv for v in a[col]]
            for i in range(n):
                if i != col and a[i][col] != 0:
                    f = a[i][col]
                    a[i] = [x - f * y for x, y in zip(a[i], a[col])]
        return [row[n:] for row in a]

    def charpoly(self) -> tuple[int, ...]:
        """Characteristic polynomial coefficients, constant term first,
        for 2x2 matrices: ``x^2 - tr x + det``."""
        if self.n != 2:
            raise NotImplementedError("charpoly is only provided for 2x2 matrices")
        return (self.det(), -self.trace(), 1)


def matprod(mats: Sequence[IntMatrix], n: int) -> IntMatrix:
    """Ordered product, identity of size ``n`` when empty."""
    result = IntMatrix.identity(n)
    for m in mats:
        result = result @ m
    return result
