import random

import pytest
from hypothesis import given, strategies as st

from radon_filtration import subspace_geometry as vg
from radon_filtration.errors import LevelTooLargeError, ParameterError
from radon_filtration.fields import get_field
from radon_filtration.qcombinatorics import gaussian_binomial


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9])
def test_field_axioms(q):
    F = get_field(q)
    for a in F.elements:
        assert F.add[a][0] == a and F.mul[a][1] == a
        assert F.add[a][F.neg[a]] == 0
        if a:
            assert F.mul[a][F.inv[a]] == 1
        for b in F.elements:
            assert F.add[a][b] == F.add[b][a] and F.mul[a][b] == F.mul[b][a]
            for c in F.elements:
                assert F.mul[a][F.add[b][c]] == F.add[F.mul[a][b]][F.mul[a][c]]


def test_f4_uses_standard_modulus():
    assert get_field(4).modulus == (1, 1, 1)
    with pytest.raises(ParameterError):
        get_field(4, (1, 0, 1))  # x^2 + 1 = (x + 1)^2 over F_2


@pytest.mark.parametrize("n,q", [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (4, 3), (3, 4), (5, 2)])
def test_levels_complete_and_canonical(n, q):
    for s in range(n + 1):
        level = vg.enumerate_level(n, s, q)
        assert len(level) == gaussian_binomial(n, s, q)
        assert len({w.rows for w in level}) == len(level)
        assert level[0] == vg.basepoint(n, s, q)
        for w in level:
            assert vg.canonicalize(w.rows, q, n) == w
            assert w.mask.bit_count() == q**s


def test_level_ceiling():
    with pytest.raises(LevelTooLargeError):
        vg.enumerate_level(6, 3, 2, max_points=100)


def test_rref_is_idempotent():
    F = get_field(3)
    rows, piv = vg.rref([[1, 2, 0], [2, 1, 0], [0, 1, 1]], F)
    again, piv2 = vg.rref(rows, F)
    assert rows == again and piv == piv2
    assert len(rows) == 2


def test_canonicalize_rejects_bad_rows():
    with pytest.raises(ParameterError):
        vg.canonicalize([[0, 3]], 3)


@given(seed=st.integers(0, 10**6), q=st.sampled_from([2, 3]))
def test_intersection_dimension_matches_sum_dimension(seed, q):
    rng = random.Random(seed)
    n = 4
    a = vg.enumerate_level(n, rng.randrange(n + 1), q)
    b = vg.enumerate_level(n, rng.randrange(n + 1), q)
    u, w = a[rng.randrange(len(a))], b[rng.randrange(len(b))]
    # independent routes: popcount of span masks vs rank of stacked bases
    assert vg.intersection_dim(u, w) + vg.sum_dim(u, w) == u.dim + w.dim


@given(seed=st.integers(0, 10**6))
def test_distance_invariant_under_gl(seed):
    rng = random.Random(seed)
    level = vg.enumerate_level(4, 2, 2)
    g = vg.InvertibleMatrix.random(4, 2, rng)
    x, y = level[rng.randrange(len(level))], level[rng.randrange(len(level))]
    assert vg.q_distance(vg.act(g, x), vg.act(g, y)) == vg.q_distance(x, y)
    assert vg.q_distance(x, y) == vg.q_distance(y, x)


def test_distance_histogram_and_errors():
    level = vg.enumerate_level(4, 2, 2)
    w0 = vg.basepoint(4, 2, 2)
    hist = sorted(
        {j: sum(vg.q_distance(w, w0) == j for w in level) for j in range(3)}.items()
    )
    assert hist == [(0, 1), (1, 18), (2, 16)]
    with pytest.raises(ParameterError):
        vg.q_distance(w0, vg.basepoint(4, 1, 2))
    with pytest.raises(ParameterError):
        vg.is_complement(w0, vg.basepoint(4, 1, 2))


def test_q_pseudo_distance():
    u = vg.canonicalize([[1, 0, 0, 1]], 2)
    assert vg.q_pseudo_distance(u, vg.basepoint(4, 2, 2)) == 1
    assert vg.q_pseudo_distance(vg.basepoint(4, 1, 2), vg.basepoint(4, 2, 2)) == 0


@pytest.mark.parametrize("n,s,q", [(2, 1, 2), (3, 1, 2), (4, 2, 2), (3, 1, 3), (4, 1, 3), (4, 2, 3)])
def test_complements_enumeration(n, s, q):
    level = vg.enumerate_level(n, n - s, q)
    for w in vg.enumerate_level(n, s, q):
        comps = vg.enumerate_complements(w)
        assert len(comps) == q ** (s * (n - s))
        assert set(comps) == {c for c in level if vg.is_complement(c, w)}


def test_complements_by_distance_examples():
    assert vg.complements_by_distance(2, 1, 2) == [(0, 1), (1, 1)]
    assert vg.complements_by_distance(4, 2, 2) == [(0, 1), (1, 9), (2, 6)]


def test_invertible_matrix_validation():
    F = get_field(2)
    with pytest.raises(ParameterError):
        vg.InvertibleMatrix(((1, 1), (1, 1)), F)
    g = vg.InvertibleMatrix(((0, 1), (1, 0)), F)
    assert g.apply([1, 0]) == [0, 1]


def test_json_round_trip():
    for w in vg.enumerate_level(3, 2, 3):
        assert vg.subspace_from_json(w.to_json()) == w
