import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frieze.errors import NonPositiveEntry, NotClosing, ShapeMismatch, WindowOutOfBand
from frieze.friezegrid import (
    FriezeGrid,
    check_coefficient_frieze,
    diamond_det,
    enumerate_slk_grid,
    frieze_by_diamond_rule,
    frieze_from_quiddity,
    glide_check,
    validate,
)
from frieze.polygon import enumerate_triangulations, quiddity

HEXAGON = [1, 2, 2, 2, 1, 4]


def cyclic_equal(a, b):
    return any(a[s:] + a[:s] == b for s in range(len(a)))


def test_hexagon_rows():
    F = frieze_from_quiddity(HEXAGON)
    assert F.w == 3 and F.n == 6
    assert F.row(1) == HEXAGON
    assert cyclic_equal(F.row(2), [1, 3, 3, 1, 3, 3])
    assert cyclic_equal(F.row(3), [1, 4, 1, 2, 2, 2])
    assert F.row(0) == [1] * 6 and F.row(4) == [1] * 6
    assert F.row(-1) == [0] * 6 and F.row(5) == [0] * 6


def test_triangle_frieze_has_no_interior():
    F = frieze_from_quiddity([1, 1, 1])
    assert F.w == 0 and validate(F).ok


def test_non_closing_quiddity_names_the_column():
    with pytest.raises((NotClosing, NonPositiveEntry)) as e:
        frieze_from_quiddity([1, 1, 1, 1])
    assert "column" in str(e.value) or e.value.detail


def test_band_guard():
    F = frieze_from_quiddity(HEXAGON)
    with pytest.raises(WindowOutOfBand):
        F.t(0, 9)


def test_json_round_trip():
    F = frieze_from_quiddity(HEXAGON)
    G = FriezeGrid.from_json_obj(json.loads(F.to_json()))
    assert G == F
    obj = F.to_json_obj()
    assert len(obj["rows"]) == F.w + 2 * F.k and obj["n"] == 6


def test_wrong_row_length_rejected():
    with pytest.raises(ShapeMismatch):
        FriezeGrid.from_interior(2, 1, {1: [1, 2]})


def test_validate_flags_bad_diamond():
    F = frieze_from_quiddity(HEXAGON)
    rows = {d: F.row(d) for d in F.band()}
    rows[2][0] += 1
    rep = validate(FriezeGrid(2, 3, rows))
    assert not rep.ok and not rep.frieze_ok
    assert any(f["kind"] == "diamond" for f in rep.failures)


@pytest.mark.parametrize("n", range(3, 10))
def test_glide_symmetry_on_all_cc_friezes(n):
    assert all(glide_check(frieze_from_quiddity(quiddity(T))) for T in enumerate_triangulations(n))


@pytest.mark.parametrize("n", range(4, 9))
def test_continuants_match_diamond_rule(n):
    for T in enumerate_triangulations(n):
        q = quiddity(T)
        assert frieze_from_quiddity(q) == frieze_by_diamond_rule(q)


def test_coefficient_frieze_check():
    # any frieze is a frieze with all coefficients 1
    F = frieze_from_quiddity(HEXAGON)
    assert check_coefficient_frieze(F, [1] * 6)
    assert not check_coefficient_frieze(F, [2] + [1] * 5)


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 9).flatmap(lambda n: st.sampled_from(enumerate_triangulations(n))))
def test_cc_friezes_are_tame_and_positive(T):
    F = frieze_from_quiddity(quiddity(T))
    rep = validate(F)
    assert rep.ok and rep.positivity_ok
    # tame: every 3x3 window vanishes
    for i in range(F.n):
        for d in range(1, F.w + 1):
            assert diamond_det(F, i, i + d, 3) == 0


@pytest.mark.parametrize("k,w,count", [
    (2, 1, 2), (2, 2, 5), (2, 3, 14),
    # width/order duality: order k width w matches order w+1 width k-1
    (3, 1, 5), (4, 1, 14),
])
def test_small_slk_counts(k, w, count):
    r = enumerate_slk_grid(k, w, 12)
    assert r.count == count and not r.pruned_by_bound
    assert all(validate(F).ok for F in r.friezes)


def test_sl2_enumeration_equals_cc():
    r = enumerate_slk_grid(2, 3, 12)
    cc = {frieze_from_quiddity(quiddity(T)).key() for T in enumerate_triangulations(6)}
    assert {F.key() for F in r.friezes} == cc


def test_sl3_width2_and_bound_report():
    r = enumerate_slk_grid(3, 2, 8)
    assert r.count == 51 and not r.pruned_by_bound and r.max_entry == 6
    all2 = FriezeGrid.from_interior(3, 2, {1: [2] * 6, 2: [2] * 6})
    assert all2 in r.friezes


def test_bound_below_max_entry_is_reported():
    r = enumerate_slk_grid(3, 2, 5)
    assert r.pruned_by_bound and r.count < 51
