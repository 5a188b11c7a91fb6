from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frieze.errors import NotACCFrieze, NotADiagonal
from frieze.friezegrid import frieze_from_quiddity
from frieze.polygon import (
    Arc,
    Triangulation,
    crossing,
    enumerate_triangulations,
    fan,
    flip,
    frieze_of,
    quiddity,
    quiver_of,
    triangles,
    triangulation_of,
)


def catalan(m):
    return comb(2 * m, m) // (m + 1)


def test_crossing_examples():
    assert crossing(Arc(1, 3), Arc(2, 4))
    assert not crossing(Arc(1, 3), Arc(3, 5))
    assert not crossing(Arc(1, 4), Arc(2, 3))


@pytest.mark.parametrize("n", range(3, 11))
def test_catalan_counts(n):
    Ts = enumerate_triangulations(n)
    assert len(Ts) == catalan(n - 2)
    assert len(set(Ts)) == len(Ts)
    assert all(T.is_valid() for T in Ts)


def test_fan_and_zigzag_quiddities():
    assert quiddity(Triangulation.of(6, [(1, 3), (3, 5), (3, 6)])) == [2, 1, 4, 1, 2, 2]
    assert quiddity(Triangulation.of(6, [(1, 3), (3, 5), (1, 5)])) == [3, 1, 3, 1, 3, 1]


def test_hexagon_example_is_a_fan():
    T = triangulation_of(frieze_from_quiddity([1, 2, 2, 2, 1, 4]))
    assert T == fan(6, 6)


@pytest.mark.parametrize("n", range(3, 10))
def test_bijection_round_trip(n):
    for T in enumerate_triangulations(n):
        F = frieze_of(T)
        assert triangulation_of(F) == T
        assert frieze_of(triangulation_of(F)) == F


def test_triangulation_of_rejects_non_cc():
    from frieze.friezegrid import FriezeGrid
    F = FriezeGrid.from_interior(3, 2, {1: [2] * 6, 2: [2] * 6})
    with pytest.raises(NotACCFrieze):
        triangulation_of(F)


def test_flip():
    T = Triangulation.of(6, [(1, 3), (3, 5), (3, 6)])
    T2, new = flip(T, Arc(3, 5))
    assert new == Arc(4, 6) and T2.is_valid()
    assert flip(T2, new)[0] == T
    with pytest.raises(NotADiagonal):
        flip(T, Arc(2, 4))


@settings(max_examples=100, deadline=None)
@given(st.integers(4, 10).flatmap(lambda n: st.sampled_from(enumerate_triangulations(n))), st.data())
def test_flip_is_an_involution(T, data):
    d = data.draw(st.sampled_from(T.sorted_diagonals()))
    T2, new = flip(T, d)
    assert T2.is_valid() and new not in T.diagonals
    assert flip(T2, new)[0] == T


@settings(max_examples=100, deadline=None)
@given(st.integers(3, 10).flatmap(lambda n: st.sampled_from(enumerate_triangulations(n))))
def test_triangles_partition(T):
    tris = triangles(T)
    assert len(tris) == T.n - 2
    assert sum(quiddity(T)) == 3 * (T.n - 2)


def test_fan_quiver_is_linear():
    Q = quiver_of(Triangulation.of(6, [(1, 3), (3, 5), (3, 6)]))
    assert sorted(Q.arrows) == [("1-3", "3-6"), ("3-6", "3-5")]


def test_internal_triangle_gives_three_cycle():
    Q = quiver_of(Triangulation.of(6, [(1, 3), (3, 5), (1, 5)]))
    assert len(Q.arrows) == 3
    outs = {s for s, _ in Q.arrows}
    ins = {t for _, t in Q.arrows}
    assert outs == ins == {"1-3", "3-5", "1-5"}


def test_quiver_with_frozen_json_round_trip():
    from frieze.polygon import Quiver
    Q = quiver_of(fan(7, 1), include_frozen=True)
    assert len(Q.frozen()) == 7 and len(Q.mutable()) == 4
    assert Quiver.from_json_obj(Q.to_json_obj()) == Q
