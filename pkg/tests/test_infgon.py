import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frieze.errors import DiagonalOutOfWindow, ParseError, ShapeMismatch, WindowTooNarrow
from frieze.infgon import (
    INF,
    HalfFriezeWindow,
    InfArc,
    crossing_inf,
    half_frieze,
    sample_fountain,
    parse_spec,
    penrose_diagonal,
    quiddity_window,
    triangle_count,
)

# right-hand half of the displayed half-frieze, read from the fountain outward
DISPLAYED_RIGHT = {
    1: [1, 3, 1, 4, 1, 4],
    2: [2, 2, 3, 3, 3],
    3: [1, 5, 2, 8, 2],
    4: [2, 3, 5, 5],
    5: [1, 7, 3, 12],
    6: [2, 4, 7],
    7: [1, 9, 4],
    8: [2, 5],
}


BIG = half_frieze(sample_fountain((-30, 30)), 6)


@pytest.fixture(scope="module")
def H():
    return half_frieze(sample_fountain((-24, 24)), 8)


def test_crossing_with_infinity():
    assert crossing_inf(InfArc(-1, 1), InfArc(0, INF))
    assert not crossing_inf(InfArc(0, 2), InfArc(0, INF))
    assert not crossing_inf(InfArc(2, 4), InfArc(0, INF))
    assert crossing_inf(InfArc(0, 4), InfArc(2, 6))
    with pytest.raises(ShapeMismatch):
        InfArc(3, 3)


def test_example_arcs():
    T = sample_fountain((-6, 6))
    arcs = {str(a) for a in T.arcs()}
    assert {"(0,∞)", "(0,4)", "(-4,0)", "(2,4)", "(-2,0)", "(0,6)"} <= arcs
    assert "(0,2)" in arcs  # (2n, 2n+2) with n = 0
    assert "(1,3)" not in arcs


def test_quiddity_counts_triangles():
    q = quiddity_window(sample_fountain((-12, 12)))
    assert [q[v] for v in range(1, 8)] == [1, 3, 1, 4, 1, 4, 1]
    assert all(q[v] == q[-v] for v in range(1, 12))
    with pytest.raises(ShapeMismatch):
        triangle_count(sample_fountain((-12, 12)), 0)


@pytest.mark.parametrize("r", sorted(DISPLAYED_RIGHT))
def test_displayed_rows(H, r):
    got = [H.value(i, i + r + 1) for i in range(0, len(DISPLAYED_RIGHT[r]))]
    assert got == DISPLAYED_RIGHT[r]


def test_mirror_symmetry(H):
    for (i, j), v in H.entries.items():
        if (-j, -i) in H.entries:
            assert H.entries[(-j, -i)] == v


def test_blank_cells_straddle_the_fountain(H):
    for (i, j), v in H.entries.items():
        assert (v is None) == (i < 0 < j)


def test_diamonds(H):
    assert H.diamonds_ok()
    assert sum(1 for _ in H.complete_diamonds()) > 100


def test_period_two_away_from_the_fountain(H):
    # vertices from 3 on see a two-periodic triangulation
    for (i, j), v in H.entries.items():
        if i >= 2 and (i + 2, j + 2) in H.entries:
            assert H.entries[(i + 2, j + 2)] == v


def test_penrose_diagonal(H):
    assert penrose_diagonal(H, "i=0") == [1, 0] * 4
    assert penrose_diagonal(H, "j=0") == [1, 0] * 4
    with pytest.raises(DiagonalOutOfWindow):
        penrose_diagonal(H, "i=40")
    with pytest.raises(ParseError):
        penrose_diagonal(H, "k=2")


def test_fan_at_the_fountain_gives_linear_rows():
    T = parse_spec("fountain=0; arcs=(0,n)|n not in {0,1,-1}; window=-14..14")
    Hf = half_frieze(T, 6)
    for (i, j), v in Hf.entries.items():
        if i >= 1 and j - i >= 2:
            assert v == j - i
        elif i == 0 and j >= 2:
            assert v == 1


def test_window_too_narrow():
    with pytest.raises(WindowTooNarrow):
        half_frieze(sample_fountain((-3, 3)), 1)
    with pytest.raises(WindowTooNarrow):
        half_frieze(sample_fountain((-8, 8)), 9)
    with pytest.raises(WindowTooNarrow):
        parse_spec("fountain=20; arcs=(2n,2n+2); window=-5..5").check()


@settings(max_examples=40, deadline=None)
@given(st.integers(-20, -8), st.integers(8, 20), st.integers(1, 6))
def test_values_do_not_depend_on_the_window(lo, hi, depth):
    try:
        small = half_frieze(sample_fountain((lo, hi)), depth)
    except WindowTooNarrow as e:
        # only a vertex next to the edge can have a triangle sticking out
        assert e.detail["vertex"] in (lo + 1, hi - 1)
        return
    for cell, v in small.entries.items():
        assert BIG.entries[cell] == v


@pytest.mark.parametrize("bad", [
    "fountain=a; window=-4..4",
    "fountain=0",
    "fountain=0; window=4..-4",
    "fountain=0; window=-4..4; arcs=(0,2n",
    "fountain=0; window=-4..4; arcs=(0,2x)",
    "fountain=0; window=-4..4; arcs=(0,2n)|n not in {a}",
    "fountain=0; window=-4..4; colour=red",
    "fountain 0",
])
def test_spec_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_spec(bad)


def test_crossing_spec_rejected():
    with pytest.raises(ShapeMismatch):
        parse_spec("fountain=0; arcs=(0,2n)|n not in {0,1,-1}; arcs=(2n+1,2n+5); window=-10..10").check()


def test_json_and_text(H):
    G = HalfFriezeWindow.from_json_obj(json.loads(json.dumps(H.to_json_obj())))
    assert G.entries == H.entries and G.quiddity == H.quiddity
    text = H.to_text()
    assert "·" in text and len(text.splitlines()) == H.depth + 2
