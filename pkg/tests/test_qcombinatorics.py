from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from radon_filtration.errors import ParameterError
from radon_filtration.qcombinatorics import (
    QParameter,
    binomial,
    factor_prime_power,
    gaussian_binomial,
    q_factorial,
    q_int,
    q_power,
)
from radon_filtration.subspace_geometry import enumerate_level

qs = st.sampled_from([2, 3, 4, 5, 7])


def test_binomial_values_and_out_of_range():
    assert binomial(5, 2) == 10
    assert binomial(4, 0) == 1
    assert binomial(3, 4) == 0
    assert binomial(3, -1) == 0
    with pytest.raises(ParameterError):
        binomial(-1, 0)


def test_q_integers():
    assert q_int(0, 2) == 0
    assert q_int(3, 2) == 7
    assert q_int(4, 3) == 40
    assert q_factorial(3, 2) == 1 * 3 * 7
    assert q_factorial(0, 5) == 1


@pytest.mark.parametrize("n,m,q,expected", [(4, 2, 2, 35), (2, 1, 3, 4), (3, 1, 2, 7), (5, 2, 2, 155), (4, 2, 3, 130)])
def test_gaussian_binomial_known(n, m, q, expected):
    assert gaussian_binomial(n, m, q) == expected


@pytest.mark.parametrize("n,m,q", [(4, 2, 2), (2, 1, 3), (3, 2, 2), (3, 1, 3), (4, 1, 4)])
def test_gaussian_binomial_counts_subspaces(n, m, q):
    assert gaussian_binomial(n, m, q) == len(enumerate_level(n, m, q))


@given(n=st.integers(0, 9), m=st.integers(-1, 10), q=qs)
def test_gaussian_symmetry_and_range(n, m, q):
    assert gaussian_binomial(n, m, q) == gaussian_binomial(n, n - m, q)
    if m < 0 or m > n:
        assert gaussian_binomial(n, m, q) == 0


@given(n=st.integers(1, 9), m=st.integers(1, 8), q=qs)
def test_gaussian_second_pascal_rule(n, m, q):
    # G(n, m) = q^(n-m) G(n-1, m-1) + G(n-1, m)
    assert gaussian_binomial(n, m, q) == q ** (n - m) * gaussian_binomial(n - 1, m - 1, q) + gaussian_binomial(n - 1, m, q)


@given(n=st.integers(0, 9), m=st.integers(0, 9), q=qs)
def test_gaussian_from_factorials(n, m, q):
    if m <= n:
        assert gaussian_binomial(n, m, q) * q_factorial(m, q) * q_factorial(n - m, q) == q_factorial(n, q)


@given(n=st.integers(0, 12), m=st.integers(0, 12))
def test_q_equals_one_is_classical(n, m):
    assert gaussian_binomial(n, m, 1) == binomial(n, m)
    assert q_int(n, 1) == n


def test_q_power_is_exact():
    assert q_power(2, -3) == Fraction(1, 8)
    assert q_power(3, 2) == 9


@pytest.mark.parametrize("q,pe", [(2, (2, 1)), (4, (2, 2)), (9, (3, 2)), (27, (3, 3)), (7, (7, 1))])
def test_factor_prime_power(q, pe):
    assert factor_prime_power(q) == pe
    assert (QParameter(q).p, QParameter(q).e) == pe


@pytest.mark.parametrize("bad", [0, 1, 6, 12, -3])
def test_qparameter_rejects_non_prime_powers(bad):
    with pytest.raises(ParameterError):
        QParameter(bad)
