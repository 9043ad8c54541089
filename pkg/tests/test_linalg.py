from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from radon_filtration import linalg
from radon_filtration.errors import InconsistencyError


def fraction_rref(matrix):
    """Textbook Gauss-Jordan over Fraction, as an independent oracle."""
    m = [[Fraction(x) for x in row] for row in matrix]
    pivots, r = [], 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        m[r] = [x / m[r][c] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


matrices = st.integers(1, 6).flatmap(
    lambda cols: st.lists(st.lists(st.integers(-4, 4), min_size=cols, max_size=cols), min_size=1, max_size=6)
)


@given(matrices)
def test_reduction_matches_rational_rref(m):
    red = linalg.gauss_jordan(m)
    rows, pivots = fraction_rref(m)
    assert red.pivots == pivots
    assert [[Fraction(x, red.scale) for x in row] for row in red.rows] == rows


@given(matrices)
def test_kernel_vectors(m):
    basis = linalg.kernel(m)
    assert len(basis) + linalg.rank(m) == len(m[0])
    for v in basis:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)
    if basis:
        assert linalg.rank(basis) == len(basis)


@given(matrices)
def test_rank_independent_of_row_order(m):
    assert linalg.rank(m) == linalg.rank(list(reversed(m)))


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3), st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_solve(m, b):
    if linalg.rank(m) < 3:
        with pytest.raises(InconsistencyError):
            linalg.solve(m, b)
        return
    x = linalg.solve(m, b)
    assert [sum(Fraction(a) * y for a, y in zip(row, x)) for row in m] == b


def test_fraction_input_and_small_cases():
    assert linalg.rank([[Fraction(1, 2), Fraction(1, 3)], [3, 2]]) == 1
    assert linalg.kernel([[1, 1, 1]]) == [[1, -1, 0], [1, 0, -1]]
    assert linalg.kernel([[1, 0], [0, 1]]) == []
    assert linalg.primitive([0, -4, 6]) == [0, 2, -3]
