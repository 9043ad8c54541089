import random

import pytest
from hypothesis import given, strategies as st

from radon_filtration import subset_geometry as sg
from radon_filtration.errors import ParameterError
from radon_filtration.qcombinatorics import binomial


@pytest.mark.parametrize("n", range(0, 9))
def test_levels_are_complete_and_colex(n):
    for s in range(n + 1):
        level = sg.enumerate_level(n, s)
        masks = [x.mask for x in level]
        assert len(level) == binomial(n, s)
        assert masks == sorted(set(masks))
        assert all(x.size == s for x in level)
        assert level[0] == sg.basepoint(n, s)
        assert all(level.rank(x) == i for i, x in enumerate(level))


def test_subset_construction_and_json():
    x = sg.Subset.of([3, 1], 4)
    assert x.elements == (1, 3)
    assert x.to_json() == [1, 3]
    with pytest.raises(ParameterError):
        sg.Subset.of([5], 4)


def test_distance_and_pseudo_distance():
    a, b = sg.Subset.of([1, 2, 3], 6), sg.Subset.of([2, 3, 4], 6)
    assert sg.distance(a, b) == 1
    assert sg.pseudo_distance(sg.Subset.of([1, 5], 6), a) == 1
    with pytest.raises(ParameterError):
        sg.distance(a, sg.Subset.of([1], 6))


@given(n=st.integers(1, 8), data=st.data())
def test_distance_is_a_metric_and_invariant(n, data):
    s = data.draw(st.integers(0, n))
    level = sg.enumerate_level(n, s)
    x, y, z = (level[data.draw(st.integers(0, len(level) - 1))] for _ in range(3))
    assert sg.distance(x, y) == sg.distance(y, x)
    assert (sg.distance(x, y) == 0) == (x == y)
    assert sg.distance(x, z) <= sg.distance(x, y) + sg.distance(y, z)
    g = sg.Permutation.random(n, random.Random(data.draw(st.integers(0, 10**6))))
    assert sg.distance(sg.act(g, x), sg.act(g, y)) == sg.distance(x, y)
    assert sg.distance(sg.complement(x), sg.complement(y)) == sg.distance(x, y)


@pytest.mark.parametrize("n", range(1, 9))
def test_number_of_orbits(n):
    for s in range(n + 1):
        sizes = sg.orbit_sizes(n, s)
        assert len(sizes) == min(s, n - s) + 1
        assert [c for _, c in sizes] == [binomial(s, i) * binomial(n - s, i) for i in range(len(sizes))]
        if 2 * s <= n:
            assert len(sizes) == s + 1


def test_orbit_sizes_example():
    assert sg.orbit_sizes(4, 2) == [(0, 1), (1, 4), (2, 1)]


def test_complement_is_an_involution():
    for x in sg.enumerate_level(6, 2):
        assert sg.complement(sg.complement(x)) == x
        assert sg.complement(x).size == 4


def test_permutation_validation_and_action():
    with pytest.raises(ParameterError):
        sg.Permutation((1, 1, 2))
    g = sg.Permutation((2, 3, 1))
    assert sg.act(g, sg.Subset.of([1], 3)) == sg.Subset.of([2], 3)
    level = sg.enumerate_level(3, 1)
    assert sorted(sg.permutation_of_level(g, level)) == [0, 1, 2]


def test_subsets_of():
    x = sg.Subset.of([1, 3, 4], 5)
    subs = sg.subsets_of(x, 2)
    assert {s.elements for s in subs} == {(1, 3), (1, 4), (3, 4)}
