"""Exact rational linear algebra: rank, kernels, and echelon forms.

Every dimension count in this package comes down to the rank of a dense
matrix over Q.  Scalars are `fractions.Fraction` (exposed as `Rational`);
rank is computed by clearing denominators row-wise and running
fraction-free (Bareiss) integer elimination, which keeps intermediate
entries at minor-determinant size instead of letting them explode.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Rational = Fraction


def _clear_row_denominators(row: Sequence[Fraction]) -> list[int]:
    lcm = 1
    for x in row:
        d = x.denominator
        lcm = lcm // gcd(lcm, d) * d
    return [int(x * lcm) for x in row]


def integer_rows(rows: Iterable[Sequence[Fraction]]) -> list[list[int]]:
    """Rescale each row by the lcm of its denominators (rank-preserving)."""
    out = []
    for row in rows:
        if all(isinstance(x, int) for x in row):
            out.append(list(row))
        else:
            out.append(_clear_row_denominators([Fraction(x) for x in row]))
    return out


def rank_int(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free Bareiss elimination.

    Pivots are chosen of smallest nonzero magnitude in the current column;
    all divisions are exact.  The input is consumed.
    """
    if not rows or not rows[0]:
        return 0
    nrows, ncols = len(rows), len(rows[0])
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        piv, best = -1, 0
        for i in range(r, nrows):
            a = rows[i][c]
            if a and (piv < 0 or abs(a) < best):
                piv, best = i, abs(a)
        if piv < 0:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        pc = prow[c]
        for i in range(r + 1, nrows):
            row = rows[i]
            ric = row[c]
            if ric:
                for j in range(c + 1, ncols):
                    row[j] = (row[j] * pc - ric * prow[j]) // prev
                row[c] = 0
            else:
                for j in range(c + 1, ncols):
                    row[j] = (row[j] * pc) // prev
        prev = pc
        r += 1
    return r


def bareiss_pivots(rows: list[list[int]]) -> tuple[int, list[int]]:
    """Rank and pivot columns of an integer matrix (Bareiss elimination).

    The non-pivot columns index a coordinate complement of the row space.
    The input is consumed.
    """
    if not rows or not rows[0]:
        return 0, []
    nrows, ncols = len(rows), len(rows[0])
    pivots: list[int] = []
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        piv, best = -1, 0
        for i in range(r, nrows):
            a = rows[i][c]
            if a and (piv < 0 or abs(a) < best):
                piv, best = i, abs(a)
        if piv < 0:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        pc = prow[c]
        for i in range(r + 1, nrows):
            row = rows[i]
            ric = row[c]
            if ric:
                for j in range(c + 1, ncols):
                    row[j] = (row[j] * pc - ric * prow[j]) // prev
                row[c] = 0
            else:
                for j in range(c + 1, ncols):
                    row[j] = (row[j] * pc) // prev
        prev = pc
        pivots.append(c)
        r += 1
    return r, pivots


class ExactMatrix:
    """Dense matrix over Q, immutable after construction."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows: Sequence[Sequence[Fraction | int]]):
        self.rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(row) != self.ncols for row in self.rows):
            raise ValueError("ragged rows")

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(list(zip(*self.rows))) if self.rows else ExactMatrix([])

    def rank(self) -> int:
        return rank_int(integer_rows(self.rows))

    def kernel_dimension(self) -> int:
        return self.ncols - self.rank()

    def rank_naive(self) -> int:
        """Plain rational Gaussian elimination; oracle for the Bareiss path."""
        rows = [list(row) for row in self.rows]
        r = 0
        for c in range(self.ncols):
            piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            inv = 1 / rows[r][c]
            rows[r] = [x * inv for x in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
            r += 1
            if r == len(rows):
                break
        return r


def rank(matrix: ExactMatrix) -> int:
    return matrix.rank()


def kernel_dimension(matrix: ExactMatrix) -> int:
    return matrix.kernel_dimension()


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    work = [[Fraction(x) for x in row] for row in rows]
    ncols = len(work[0]) if work else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = 1 / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                row = work[i]
                prow = work[r]
                work[i] = [a - f * b for a, b in zip(row, prow)]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def kernel_standard(
    rows: Sequence[Sequence[Fraction]], ncols: int
) -> tuple[list[list[Fraction]], list[int]]:
    """Kernel basis in standard form, with the free columns that index it.

    Basis vector k has value 1 at free column k and 0 at the other free
    columns, so the coordinates of any kernel element with respect to this
    basis can be read off at the free columns.
    """
    if not rows:
        basis = [[Fraction(i == j) for j in range(ncols)] for i in range(ncols)]
        return basis, list(range(ncols))
    reduced, pivots = rref(rows)
    pivot_set = set(pivots)
    basis = []
    free_cols = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[free]
        basis.append(v)
        free_cols.append(free)
    return basis, free_cols


def right_kernel_basis(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : M v = 0}, one vector per non-pivot column of the RREF."""
    return kernel_standard(rows, ncols)[0]


class Echelon:
    """Incremental row space over Q with unit pivots; supports reduce/insert."""

    __slots__ = ("ncols", "rows", "pivots")

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Sequence[Fraction]) -> list[Fraction]:
        v = [Fraction(x) for x in vec]
        for row, p in zip(self.rows, self.pivots):
            f = v[p]
            if f:
                for j in range(p, self.ncols):
                    v[j] -= f * row[j]
        return v

    def insert(self, vec: Sequence[Fraction]) -> bool:
        """Reduce `vec` against the space; grow the space if independent."""
        v = self.reduce(vec)
        lead = next((j for j in range(self.ncols) if v[j]), None)
        if lead is None:
            return False
        inv = 1 / v[lead]
        v = [x * inv for x in v]
        for row in self.rows:
            f = row[lead]
            if f:
                for j in range(lead, self.ncols):
                    row[j] -= f * v[j]
        at = next((k for k, p in enumerate(self.pivots) if p > lead), len(self.pivots))
        self.rows.insert(at, v)
        self.pivots.insert(at, lead)
        return True
