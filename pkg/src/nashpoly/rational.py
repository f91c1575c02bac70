"""Exact rational scalars and small dense linear algebra.

Every geometric predicate in this package is exact: scalars are
`fractions.Fraction` (arbitrary precision, stored in lowest terms with a
positive denominator), and square systems are solved by fraction-free
Bareiss elimination over the integers after clearing denominators.
There is no floating point anywhere downstream of this module.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

Rational = Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


class DimensionMismatch(ValueError):
    """Operands have incompatible shapes."""


def parse_rational(text: str) -> Fraction:
    """Parse a rational literal: optional sign, integer, optional '/' positive integer."""
    token = text.strip()
    if not _RATIONAL_RE.match(token):
        raise ValueError(f"not a rational literal: {text!r}")
    if "/" in token and int(token.split("/")[1]) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(token)


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Matrix:
    """Immutable exact-rational matrix (row-major)."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if not data:
            raise ValueError("matrix needs at least one row")
        width = len(data[0])
        if width == 0 or any(len(row) != width for row in data):
            raise ValueError("matrix rows must be non-empty and equal length")
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "_data", data)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        one, zero = Fraction(1), Fraction(0)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self._data[i][j]

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self._data == other._data

    def __hash__(self) -> int:
        return hash(self._data)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in row) for row in self._data)
        return f"Matrix({self.rows}x{self.cols}: {body})"

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self._data))

    def matvec(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if len(v) != self.cols:
            raise DimensionMismatch(f"matvec: {self.cols} columns vs vector of {len(v)}")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self._data)

    def min_entry(self) -> Fraction:
        return min(x for row in self._data for x in row)

    def shift(self, c) -> "Matrix":
        """Add the constant c to every entry."""
        c = Fraction(c)
        return Matrix([[x + c for x in row] for row in self._data])


def _clear_denominators(rows, rhs):
    """Scale each equation by a positive integer so coefficients and rhs are ints."""
    int_rows, int_rhs = [], []
    for row, b in zip(rows, rhs):
        scale = lcm(*(x.denominator for x in row), b.denominator)
        int_rows.append([int(x * scale) for x in row])
        int_rhs.append(int(b * scale))
    return int_rows, int_rhs


def solve_linear(m: Matrix, rhs: Sequence) -> tuple[Fraction, ...] | None:
    """Solve the square system m.x = rhs exactly; None when m is singular.

    Bareiss fraction-free elimination on the integer-scaled augmented matrix,
    then exact back substitution.
    """
    n = m.rows
    if m.cols != n:
        raise DimensionMismatch(f"solve_linear needs a square matrix, got {n}x{m.cols}")
    rhs = [Fraction(x) for x in rhs]
    if len(rhs) != n:
        raise DimensionMismatch(f"rhs length {len(rhs)} vs system size {n}")
    rows, b = _clear_denominators(m, rhs)
    a = [rows[i] + [b[i]] for i in range(n)]
    prev = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k] != 0), None)
        if piv is None:
            return None
        if piv != k:
            a[piv], a[k] = a[k], a[piv]
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ai, ak = a[i], a[k]
            for j in range(k + 1, n + 1):
                ai[j] = (ai[j] * akk - aik * ak[j]) // prev
            ai[k] = 0
        prev = akk
    x: list[Fraction] = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = a[i][n] - sum(a[i][j] * x[j] for j in range(i + 1, n))
        x[i] = Fraction(s, a[i][i])
    return tuple(x)


def det_sign(m: Matrix) -> int:
    """Exact sign of det(m): -1, 0, or +1."""
    n = m.rows
    if m.cols != n:
        raise DimensionMismatch(f"det_sign needs a square matrix, got {n}x{m.cols}")
    rows, _ = _clear_denominators(m, [Fraction(0)] * n)
    a = [list(row) for row in rows]
    sign = 1
    prev = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            a[piv], a[k] = a[k], a[piv]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ai, ak = a[i], a[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * akk - aik * ak[j]) // prev
            ai[k] = 0
        prev = akk
    last = a[n - 1][n - 1]
    return sign if last > 0 else -sign


def gauss_classify(rows: Sequence[Sequence], rhs: Sequence) -> tuple[str, tuple[Fraction, ...] | None]:
    """Row-reduce a general (possibly non-square) exact system.

    Returns ("unique", x), ("none", None) for an inconsistent system, or
    ("many", None) for a consistent underdetermined one.
    """
    a = [list(map(Fraction, row)) + [Fraction(x)] for row, x in zip(rows, rhs)]
    n_rows = len(a)
    n_cols = len(a[0]) - 1 if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(n_rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    if any(all(x == 0 for x in a[i][:n_cols]) and a[i][n_cols] != 0 for i in range(r, n_rows)):
        return "none", None
    if len(pivots) < n_cols:
        return "many", None
    x = [Fraction(0)] * n_cols
    for i, c in enumerate(pivots):
        x[c] = a[i][n_cols]
    return "unique", tuple(x)
