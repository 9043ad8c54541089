from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from radon_filtration.errors import ParameterError
from radon_filtration.matrix import (
    ExactMatrix,
    exact_matmul,
    format_rational,
    matrix_from_triplets,
    parse_rational,
)
from radon_filtration.operators import SubsetGeometry, build_radon


def test_rational_format():
    assert format_rational(3) == "3/1"
    assert format_rational(Fraction(-2, 4)) == "-1/2"
    assert parse_rational("6/4") == Fraction(3, 2)


def test_overflow_guard_falls_back_to_exact():
    big = np.array([[2**40, 2**40]], dtype=object)
    col = np.array([[2**40], [2**40]], dtype=object)
    assert exact_matmul(big, col)[0, 0] == 2**81


@given(st.lists(st.lists(st.integers(-10**12, 10**12), min_size=3, max_size=3), min_size=2, max_size=4))
def test_matmul_agrees_with_python(rows):
    a = np.array(rows, dtype=object)
    got = exact_matmul(a, a.T)
    want = [[sum(x * y for x, y in zip(r, s)) for s in rows] for r in rows]
    assert got.tolist() == want


def test_json_and_matrix_market_round_trip():
    m = ExactMatrix([[1, Fraction(1, 2)], [0, -3]])
    assert ExactMatrix.from_json(m.to_json()) == m
    assert ExactMatrix.from_matrix_market(m.to_matrix_market()) == m
    assert m.to_json()["entries"] == [["1/1", "1/2"], ["0/1", "-3/1"]]


def test_composition_checks_levels():
    g = SubsetGeometry(4)
    r0, r1 = build_radon(g, 0), build_radon(g, 1)
    assert (r1 @ r0).shape == (6, 1)
    with pytest.raises(ParameterError):
        r0 @ r1


def test_proportionality_and_difference():
    a = ExactMatrix([[2, 0], [4, 6]])
    b = ExactMatrix([[1, 0], [2, 3]])
    assert a.proportionality(b) == 2
    assert a.first_difference(b) == (0, 0, 2, 1)
    assert a.scaled(Fraction(1, 2)) == b
    assert ExactMatrix([[1, 1]]).proportionality(ExactMatrix([[1, 2]])) is None


def test_triplets_add_up():
    m = matrix_from_triplets([(0, 0, 1), (0, 0, 2), (1, 1, 5)], 2, 2)
    assert m.row_lists() == [[3, 0], [0, 5]]
    assert m.row_sums() == [3, 5]
