"""Exact rational matrices (lists of rows of Fractions)."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

__all__ = [
    "QMatrix",
    "det",
    "solve",
    "rank",
    "minor",
    "pluecker",
    "transpose",
    "matmul",
    "inverse",
    "parse_q",
    "fmt_q",
]

Matrix = list[list[Fraction]]


def parse_q(s) -> Fraction:
    return s if isinstance(s, Fraction) else Fraction(str(s))


def fmt_q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


class QMatrix:
    """k x n exact-rational matrix with 1-based column access."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = [[parse_q(x) for x in r] for r in rows]
        if self.rows and len({len(r) for r in self.rows}) != 1:
            raise ValueError("ragged matrix")

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def col(self, a: int) -> list[Fraction]:
        return [r[a - 1] for r in self.rows]

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "QMatrix":
        k = len(cols[0])
        return cls([[cols[j][i] for j in range(len(cols))] for i in range(k)])

    def columns(self) -> list[list[Fraction]]:
        return [self.col(a) for a in range(1, self.n + 1)]

    def permute_columns(self, rho) -> "QMatrix":
        """[M_rho(1) ... M_rho(n)]."""
        return QMatrix.from_columns([self.col(rho(a)) for a in range(1, self.n + 1)])

    def scale_columns(self, signs: Sequence) -> "QMatrix":
        return QMatrix.from_columns([[s * x for x in c] for s, c in zip(signs, self.columns())])

    def left_mul(self, g: Matrix) -> "QMatrix":
        return QMatrix(matmul(g, self.rows))

    def __eq__(self, other) -> bool:
        return isinstance(other, QMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(tuple(map(tuple, self.rows)))

    def __repr__(self) -> str:
        return f"QMatrix({[[fmt_q(x) for x in r] for r in self.rows]})"

    def to_json(self) -> list[list[str]]:
        return [[fmt_q(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, data) -> "QMatrix":
        return cls(data)


def det(m: Sequence[Sequence[Fraction]]) -> Fraction:
    a = [list(r) for r in m]
    size = len(a)
    result = Fraction(1)
    for c in range(size):
        piv = next((r for r in range(c, size) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            result = -result
        pv = a[c][c]
        result *= pv
        for r in range(c + 1, size):
            if a[r][c]:
                factor = a[r][c] / pv
                row_c = a[c]
                a[r] = [x - factor * y for x, y in zip(a[r], row_c)]
    return result


def solve(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction]:
    """Solve the square system a x = b exactly; raises on singular a."""
    size = len(a)
    aug = [list(map(Fraction, r)) + [Fraction(v)] for r, v in zip(a, b)]
    for c in range(size):
        piv = next((r for r in range(c, size) if aug[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(size):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [aug[r][size] for r in range(size)]


def rank(m: Sequence[Sequence[Fraction]]) -> int:
    a = [list(map(Fraction, r)) for r in m]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    rk = 0
    for c in range(cols):
        piv = next((r for r in range(rk, rows) if a[r][c] != 0), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        for r in range(rk + 1, rows):
            if a[r][c]:
                f = a[r][c] / a[rk][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[rk])]
        rk += 1
        if rk == rows:
            break
    return rk


def transpose(m: Sequence[Sequence]) -> Matrix:
    return [list(r) for r in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(r, c)), Fraction(0)) for c in bt] for r in a]


def inverse(m: Sequence[Sequence[Fraction]]) -> Matrix:
    size = len(m)
    cols = [solve(m, [Fraction(int(i == j)) for i in range(size)]) for j in range(size)]
    return transpose(cols)


def minor(M: QMatrix, cols: Sequence[int]) -> Fraction:
    """Determinant of the columns in the given order (1-based)."""
    return det([[r[c - 1] for c in cols] for r in M.rows])


def pluecker(M: QMatrix, I) -> Fraction:
    I = sorted(I)
    if len(I) != M.k:
        raise ValueError(f"|I| = {len(I)} but k = {M.k}")
    return minor(M, I)
