import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from radon_filtration import closed_forms as cf
from radon_filtration.errors import ParameterError
from radon_filtration.operators import SubsetGeometry, SubspaceGeometry
from radon_filtration.spectral_oracle import decompose_level, spherical_from_projector

GRID = [SubsetGeometry(n) for n in range(1, 9)] + [
    SubspaceGeometry(n, q) for n, q in [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (4, 3), (5, 2)]
]


def _q(g):
    return getattr(g, "q", None)


def test_alpha_examples():
    assert cf.alpha_ladder(6, 3, 2).values[0] == Fraction(1, 3)
    assert cf.alpha_ladder(4, 2, 1).values[1] == Fraction(-1, 2)
    lad = cf.alpha_ladder(3, 1, 1, 2)
    assert not any(lad.recurrence_residuals())
    assert not any(cf.ladder_kernel_residual(3, 1, 1, 2))


def test_spherical_examples():
    for n in range(2, 9):
        assert cf.spherical_closed_form("subset", n, 1, 1, 1) == Fraction(-1, n - 1)
        assert all(cf.spherical_closed_form("subset", n, 1, 0, j) == 1 for j in range(2))
    assert cf.spherical_closed_form("subspace", 3, 1, 1, 1, 2) == Fraction(-1, 6)
    assert cf.dual_spherical("subset", 4, 1, 1, 1) == Fraction(-1, 3)
    assert cf.dual_spherical("subspace", 3, 1, 1, 1, 2) == Fraction(-1, 6)


def test_eigenvalue_examples():
    assert cf.eigenvalue_closed_form("subset", 6, 3, 3) == -3
    assert cf.eigenvalue_closed_form("subspace", 4, 2, 0, 2) == 18
    for n in range(2, 9):
        assert cf.eigenvalue_closed_form("subset", n, 1, 0) == n - 1
        for s in range(n // 2 + 1):
            assert cf.eigenvalue_closed_form("subset", n, s, 0) == s * (n - s)


@pytest.mark.parametrize("g", GRID, ids=str)
def test_closed_forms_match_oracles(g):
    q = _q(g)
    for s in range(g.n // 2 + 1):
        rep = decompose_level(g, s)
        for t in range(s + 1):
            closed = [cf.spherical_closed_form(g.family, g.n, s, t, j, q) for j in range(s + 1)]
            assert closed == rep.components[t].profile
            assert closed == spherical_from_projector(g, s, t, dual=True)
            assert rep.components[t].eigenvalue == cf.eigenvalue_closed_form(g.family, g.n, s, t, q)
            assert closed == [cf.dual_spherical_from_beta(g.n, s, t, j, q) for j in range(s + 1)]
            assert not any(cf.ladder_kernel_residual(g.n, s, t, q))
            assert not any(cf.beta_ladder(g.n, s, t, q).recurrence_residuals())
        assert cf.weighted_orthogonality(g.family, g.n, s, q) is None


@given(n=st.integers(1, 14), data=st.data())
def test_q_equal_one_recovers_the_classical_profile(n, data):
    s = data.draw(st.integers(0, n // 2))
    t = data.draw(st.integers(0, s))
    j = data.draw(st.integers(0, s))
    assert cf.spherical_q_specialized(n, s, t, j, 1) == cf.spherical_closed_form("subset", n, s, t, j)


@given(n=st.integers(2, 12), q=st.sampled_from([2, 3, 4, 5]), data=st.data())
def test_q_eigenvalue_printed_form_agrees(n, q, data):
    s = data.draw(st.integers(0, n // 2))
    t = data.draw(st.integers(0, s))
    assert cf.eigenvalue_printed_q(n, s, t, q) == cf.eigenvalue_closed_form("subspace", n, s, t, q)


@given(n=st.integers(2, 10), q=st.sampled_from([2, 3, 4]), data=st.data())
def test_top_dual_profile_is_a_single_term(n, q, data):
    s = data.draw(st.integers(0, n // 2))
    for j in range(s + 1):
        assert cf.dual_spherical_single_term(n, s, s, j, q) == cf.spherical_closed_form("subspace", n, s, s, j, q)


@given(n=st.integers(1, 14), q=st.sampled_from([None, 2, 3]), data=st.data())
def test_profiles_start_at_one_and_eigenvalues_separate(n, q, data):
    s = data.draw(st.integers(0, n // 2))
    family = "subset" if q is None else "subspace"
    table = cf.spherical_table(family, n, s, q)
    assert all(vals[0] == 1 for _, vals in table.rows)
    lams = [cf.eigenvalue_closed_form(family, n, s, t, q) for t in range(s + 1)]
    assert len(set(lams)) == len(lams)


def test_table_exports():
    table = cf.spherical_table("subset", 4, 1)
    assert table.to_csv() == "t,j=0,j=1\n0,1/1,1/1\n1,1/1,-1/3\n"
    data = json.loads(json.dumps(table.to_json()))
    assert data["rows"][1]["values"] == ["1/1", "-1/3"]


@pytest.mark.parametrize("n,q", [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (4, 3), (5, 2)])
def test_pairing(n, q):
    rep = cf.theorem5_pairing(n, 1, q)
    assert rep.value == Fraction(1, q)
    assert rep.printed_sum == Fraction(1, q)
    if n >= 4:
        two = cf.theorem5_pairing(n, 2, q)
        assert two.nonzero
        assert dict(two.oracle_counts)[2] != two.printed_counts[2][1]


def test_out_of_range():
    with pytest.raises(ParameterError):
        cf.spherical_closed_form("subset", 4, 3, 1, 0)
    with pytest.raises(ParameterError):
        cf.spherical_closed_form("subset", 6, 2, 1, 3)
    with pytest.raises(ParameterError):
        cf.spherical_closed_form("subspace", 4, 1, 1, 1)
    with pytest.raises(ParameterError):
        cf.theorem5_pairing(4, 0, 2)
