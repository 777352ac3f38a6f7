"""A small dense exact matrix type and a Gauss-Jordan inverse used as the oracle."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import SingularMatrix
from .rationals import format_rational

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class ExactMatrix:
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(x if type(x) is Fraction else Fraction(x) for x in r) for r in self.rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def of(cls, rows: Iterable[Iterable]) -> "ExactMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "ExactMatrix":
        m = n if m is None else m
        return cls(tuple((_ZERO,) * m for _ in range(n)))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(tuple(tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def outer(cls, u: Sequence, v: Sequence, scale=1) -> "ExactMatrix":
        scale = Fraction(scale)
        return cls(tuple(tuple(scale * a * b for b in v) for a in u))

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix(tuple(zip(*self.rows)))

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return ExactMatrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + other.scale(-1)

    def scale(self, c) -> "ExactMatrix":
        c = Fraction(c)
        return ExactMatrix(tuple(tuple(c * a for a in r) for r in self.rows))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape[1] != other.shape[0]:
            raise ValueError("shape mismatch")
        cols = other.T.rows
        return ExactMatrix(tuple(tuple(sum((a * b for a, b in zip(r, c)), _ZERO) for c in cols) for r in self.rows))

    def matvec(self, v: Sequence) -> tuple[Fraction, ...]:
        return tuple(sum((a * Fraction(b) for a, b in zip(r, v)), _ZERO) for r in self.rows)

    def quadratic(self, x: Sequence, y: Sequence | None = None) -> Fraction:
        """``x^T M y`` (``y`` defaults to ``x``)."""
        y = x if y is None else y
        return sum((Fraction(a) * b for a, b in zip(x, self.matvec(y))), _ZERO)

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.rows)

    def is_symmetric(self) -> bool:
        return self == self.T

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "ExactMatrix":
        return ExactMatrix(tuple(r[c0:c1] for r in self.rows[r0:r1]))

    def to_json(self) -> list[list[str]]:
        return [[format_rational(x) for x in r] for r in self.rows]


def place_blocks(n: int, blocks: Iterable[tuple[int, int, ExactMatrix]]) -> ExactMatrix:
    """An ``n x n`` matrix with each ``(row, col, block)`` written at that offset."""
    grid = [[_ZERO] * n for _ in range(n)]
    for r0, c0, blk in blocks:
        for i, row in enumerate(blk.rows):
            grid[r0 + i][c0:c0 + len(row)] = row
    return ExactMatrix(tuple(tuple(r) for r in grid))


def q_inverse_direct(m: ExactMatrix) -> ExactMatrix:
    """Exact inverse by Gauss-Jordan elimination, pivoting on the first nonzero entry.

    Integer matrices go through the fraction-free variant, which is the same
    elimination with every division deferred to the end.
    """
    n, k = m.shape
    if n != k:
        raise ValueError("matrix must be square")
    if all(x.denominator == 1 for r in m.rows for x in r):
        return _inverse_integer(m)
    return _inverse_fraction(m)


def _inverse_integer(m: ExactMatrix) -> ExactMatrix:
    n = m.shape[0]
    aug = [[int(x) for x in r] + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(m.rows)]
    prev = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        prow = aug[col]
        d = prow[col]
        for r in range(n):
            if r != col:
                row = aug[r]
                f = row[col]
                # Bareiss: each quotient is an exact integer division
                row[:] = [(d * a - f * b) // prev for a, b in zip(row, prow)]
        prev = d
    # the left half is now prev * I
    return ExactMatrix(tuple(tuple(Fraction(x, prev) for x in r[n:]) for r in aug))


def _inverse_fraction(m: ExactMatrix) -> ExactMatrix:
    n = m.shape[0]
    aug = [list(r) + [_ONE if i == j else _ZERO for j in range(n)] for i, r in enumerate(m.rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        prow = aug[col]
        inv = 1 / prow[col]
        prow[:] = [x * inv for x in prow]
        for r in range(n):
            if r != col:
                f = aug[r][col]
                if f:
                    row = aug[r]
                    row[:] = [a - f * b for a, b in zip(row, prow)]
    return ExactMatrix(tuple(tuple(r[n:]) for r in aug))


def det_bareiss(m: ExactMatrix) -> Fraction:
    """Determinant by fraction-free Bareiss elimination (exact for integer input)."""
    n, k = m.shape
    if n != k:
        raise ValueError("matrix must be square")
    if n == 0:
        return _ONE
    a = [list(r) for r in m.rows]
    sign = 1
    prev = _ONE
    for c in range(n - 1):
        if a[c][c] == 0:
            swap = next((r for r in range(c + 1, n) if a[r][c] != 0), None)
            if swap is None:
                return _ZERO
            a[c], a[swap] = a[swap], a[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]) / prev
        prev = a[c][c]
    return sign * a[n - 1][n - 1]
