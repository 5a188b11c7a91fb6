import itertools
import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import long_only
from frieze.errors import IndexCollision, UnsupportedSize
from frieze.friezegrid import FriezeGrid, enumerate_slk_grid, validate
from frieze.grassmann import (
    KSubset,
    PlueckerRing,
    all_subsets,
    crossing_k,
    eval_on_minors,
    frieze_index,
    is_almost_consecutive,
    is_consecutive,
    minors,
    pluecker_frieze_grid,
    pluecker_relations,
    rectangles_seed,
    unitary_census,
)
from frieze.polygon import enumerate_triangulations, frieze_of

RELS = {(k, n): pluecker_relations(k, n) for k, n in [(2, 4), (2, 5), (3, 6)]}


def sympy_minors(mat, k, n):
    M = sp.Matrix(mat)
    return {c: M.extract(list(range(k)), [x - 1 for x in c]).det() for c in itertools.combinations(range(1, n + 1), k)}


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(sorted(RELS)), st.data())
def test_pluecker_relations_vanish_on_random_matrices(kn, data):
    k, n = kn
    entry = st.fractions(min_value=-9, max_value=9, max_denominator=5)
    mat = [[data.draw(entry) for _ in range(n)] for _ in range(k)]
    ref = sympy_minors(mat, k, n)
    mine = minors(mat, k, n)
    assert {c: sp.Rational(v.numerator, v.denominator) if isinstance(v, Fraction) else v for c, v in mine.items()} == ref
    ring = PlueckerRing(k, n)
    for _, _, rel in RELS[kn]:
        assert eval_on_minors(rel, ring, mine) == 0


def test_three_term_relation_present():
    # Gr(2,4): p13 p24 = p12 p34 + p14 p23, up to sign
    rels = [r for _, _, r in RELS[(2, 4)]]
    ring = PlueckerRing(2, 4)
    target = ring.p([1, 3]) * ring.p([2, 4]) - ring.p([1, 2]) * ring.p([3, 4]) - ring.p([1, 4]) * ring.p([2, 3])
    assert any(r == target or r == target * -1 for r in rels)


def test_subset_predicates():
    assert is_consecutive(KSubset.of(6, [5, 6, 1]))
    assert not is_consecutive(KSubset.of(6, [1, 2, 4]))
    assert is_almost_consecutive(KSubset.of(6, [1, 2, 4]))
    assert not is_almost_consecutive(KSubset.of(6, [1, 3, 5]))
    assert crossing_k(KSubset.of(4, [1, 3]), KSubset.of(4, [2, 4]))
    assert KSubset.of(12, [1, 10, 11]).name() == "p1_10_11"


def test_frieze_index_collision():
    with pytest.raises(IndexCollision):
        frieze_index(3, 6, 1, 1)


@pytest.mark.parametrize("k,n", [(2, 5), (2, 7), (3, 6), (3, 7), (3, 8), (4, 8)])
def test_label_rows(k, n):
    P = pluecker_frieze_grid(k, n)
    w = n - k - 1
    for d in list(range(-(k - 1), 0)) + list(range(w + 2, w + k + 1)):
        assert P.row(d) == [0] * n
    for d in (0, w + 1):
        assert all(is_consecutive(KSubset.of(n, map(int, _digits(x, n)))) for x in P.row(d))
        assert len(set(P.row(d))) == n
    interior = [x for d in range(1, w + 1) for x in P.row(d)]
    # for k = 2 the glide makes every diagonal appear twice per period
    mult = 2 if k == 2 else 1
    assert all(interior.count(x) == mult for x in interior)
    if k == 3:
        ac = {I.name() for I in all_subsets(k, n) if is_almost_consecutive(I)}
        assert set(interior) == ac


def _digits(name, n):
    body = name[1:]
    return body.split("_") if n >= 10 else list(body)


def test_gr36_labels_and_specialisation():
    P = pluecker_frieze_grid(3, 6)
    assert P.row(2) == ["p146", "p125", "p236", "p134", "p245", "p356"]
    S = pluecker_frieze_grid(3, 6, specialize=True)
    assert S.row(0) == [1] * 6 and S.row(3) == [1] * 6


def test_rectangles_seed_shape():
    S = rectangles_seed(3, 6)
    assert S.n_mutable == 4 and len(S.B) == 10
    assert S.names[:4] == ["p124", "p125", "p134", "p145"]


@pytest.mark.parametrize("n", range(4, 9))
def test_gr2_census_is_conway_coxeter(n):
    c = unitary_census(2, n)
    cc = {frieze_of(T).key() for T in enumerate_triangulations(n)}
    assert c.clusters == len(cc) and {F.key() for F in c.friezes} == cc


@pytest.fixture(scope="module")
def gr36():
    return unitary_census(3, 6)


def test_gr36_census(gr36):
    assert gr36.clusters == 50 and gr36.distinct_friezes == 50
    assert all(validate(F).ok and validate(F).positivity_ok for F in gr36.friezes)


def test_gr36_named_cluster(gr36):
    m = gr36.match
    cl = [m[(2, 4, 5)], m[(1, 4, 5)], m[(1, 2, 4)], m[(1, 2, 5)]]
    F = gr36.friezes[gr36.frieze_of_cluster[gr36.graph.cluster_id(cl)]]
    assert F.row(2) == [2, 1, 4, 2, 1, 4]
    r1 = F.row(1)
    assert any(r1[s:] + r1[:s] == [1, 2, 4, 1, 2, 4] for s in range(6))


def test_all_twos_is_the_only_sl3_width2_frieze_missed(gr36):
    r = enumerate_slk_grid(3, 2, 8)
    census = {F.key() for F in gr36.friezes}
    assert census <= {F.key() for F in r.friezes}
    extra = [F for F in r.friezes if F.key() not in census]
    assert [F.row(1) for F in extra] == [[2] * 6]
    assert extra[0].row(2) == [2] * 6


def test_gr37_census():
    c = unitary_census(3, 7)
    assert c.clusters == 833 and c.distinct_friezes == 833


def test_size_guard():
    with pytest.raises(UnsupportedSize):
        unitary_census(3, 8)
    with pytest.raises(UnsupportedSize):
        unitary_census(4, 9)


@long_only
def test_gr38_census():
    c = unitary_census(3, 8, allow_long=True)
    assert c.clusters == 25080
