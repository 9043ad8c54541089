"""Fraction-free Gauss-Jordan elimination over the integers.

All routines take a matrix as a list of rows of Python ints (or
``Fraction``; rows are cleared of denominators first) and never create
rational intermediates.  With the Bareiss update

    a_ij <- (p_k * a_ij - a_ik * a_kj) / p_{k-1}

applied to every row other than the pivot row, each entry stays an integer
minor of the input, every division is exact, and at the end all pivots
equal the same nonzero integer ``d``.  The reduced form ``E / d`` is the
rational RREF.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .errors import InconsistencyError

Number = int | Fraction


def _integral_row(row: Sequence[Number]) -> list[int]:
    dens = [x.denominator for x in row if isinstance(x, Fraction)]
    if not dens:
        return [int(x) for x in row]
    m = lcm(*dens)
    return [int(x * m) for x in row]


def primitive(vector: Sequence[int]) -> list[int]:
    """Divide by the content; first nonzero entry made positive."""
    g = 0
    for x in vector:
        g = gcd(g, x)
    if g == 0:
        return list(vector)
    lead = next(x for x in vector if x)
    if lead < 0:
        g = -g
    return [x // g for x in vector]


@dataclass(frozen=True)
class Reduction:
    """Fraction-free RREF: ``rows / scale`` is the reduced row echelon form."""

    rows: list[list[int]]
    pivots: list[int]
    scale: int
    ncols: int

    @property
    def rank(self) -> int:
        return len(self.pivots)


def gauss_jordan(matrix: Sequence[Sequence[Number]], ncols: int | None = None) -> Reduction:
    """Reduce ``matrix``; pivots are chosen as the first nonzero entry in column order."""
    a = [_integral_row(r) for r in matrix]
    if ncols is None:
        ncols = len(a[0]) if a else 0
    nrows = len(a)
    prev = 1
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        prow = a[r]
        p = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            row = a[i]
            f = row[c]
            if f:
                a[i] = [(p * x - f * y) // prev for x, y in zip(row, prow)]
            elif p != prev:
                a[i] = [(p * x) // prev for x in row]
        prev = p
        pivots.append(c)
        r += 1
    return Reduction(a[:r], pivots, prev if pivots else 1, ncols)


def rank(matrix: Sequence[Sequence[Number]], ncols: int | None = None) -> int:
    return gauss_jordan(matrix, ncols).rank


def kernel(matrix: Sequence[Sequence[Number]], ncols: int | None = None) -> list[list[int]]:
    """Integer basis of the right null space, one primitive vector per free column."""
    red = gauss_jordan(matrix, ncols)
    pivot_set = set(red.pivots)
    basis = []
    for f in range(red.ncols):
        if f in pivot_set:
            continue
        v = [0] * red.ncols
        v[f] = red.scale
        for i, p in enumerate(red.pivots):
            v[p] = -red.rows[i][f]
        basis.append(primitive(v))
    return basis


def solve(matrix: Sequence[Sequence[Number]], rhs: Sequence[Number]) -> list[Fraction]:
    """Unique solution of a square nonsingular system."""
    n = len(matrix)
    aug = []
    for row, b in zip(matrix, rhs):
        aug.append(list(row) + [b])
    red = gauss_jordan(aug, n + 1)
    if red.pivots != list(range(n)):
        raise InconsistencyError("system matrix is singular")
    return [Fraction(red.rows[i][n], red.scale) for i in range(n)]
