"""Pluecker combinatorics for Gr(k, n) and friezes obtained by specialisation."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .clustermut import MutationGraph, Seed, explore, specialization_values
from .errors import IndexCollision, UnmatchedPluecker, UnsupportedSize
from .exactalg import LaurentPoly, poly_eval
from .friezegrid import FriezeGrid, det, validate


@dataclass(frozen=True, order=True)
class KSubset:
    n: int
    elems: Tuple[int, ...]

    @classmethod
    def of(cls, n: int, elems) -> "KSubset":
        return cls(n, tuple(sorted(elems)))

    @property
    def k(self) -> int:
        return len(self.elems)

    def name(self) -> str:
        sep = "" if self.n < 10 else "_"
        return "p" + sep.join(str(x) for x in self.elems)

    def __str__(self):
        return self.name()


def _cyclic_runs(elems: Sequence[int], n: int) -> int:
    """Number of maximal cyclic intervals making up the set."""
    s = set(elems)
    if len(s) == n:
        return 1
    return sum(1 for x in s if ((x - 2) % n) + 1 not in s)


def is_consecutive(I: KSubset) -> bool:
    return _cyclic_runs(I.elems, I.n) == 1


def is_almost_consecutive(I: KSubset) -> bool:
    if is_consecutive(I):
        return False
    for x in I.elems:
        rest = [y for y in I.elems if y != x]
        if _cyclic_runs(rest, I.n) == 1:
            return True
    return False


def crossing_k(I: KSubset, J: KSubset) -> bool:
    a = sorted(set(I.elems) - set(J.elems))
    b = sorted(set(J.elems) - set(I.elems))
    for i1, i2 in itertools.combinations(a, 2):
        for j1, j2 in itertools.combinations(b, 2):
            if i1 < j1 < i2 < j2 or j1 < i1 < j2 < i2:
                return True
    return False


def all_subsets(k: int, n: int) -> List[KSubset]:
    return [KSubset(n, c) for c in itertools.combinations(range(1, n + 1), k)]


# Pluecker relations -------------------------------------------------------


def ordered_sign(idx: Sequence[int]) -> Tuple[int, Optional[Tuple[int, ...]]]:
    """Sign and sorted tuple for p_{idx}; repeated indices give (0, None)."""
    if len(set(idx)) < len(idx):
        return 0, None
    inv = sum(1 for a, b in itertools.combinations(idx, 2) if a > b)
    return (-1) ** inv, tuple(sorted(idx))


class PlueckerRing:
    """Variables p_I numbered in lexicographic order of I, starting at 1."""

    def __init__(self, k: int, n: int):
        self.k, self.n = k, n
        self.subsets = all_subsets(k, n)
        self.index = {I.elems: i + 1 for i, I in enumerate(self.subsets)}

    def p(self, idx: Sequence[int]) -> LaurentPoly:
        s, key = ordered_sign(idx)
        if s == 0:
            return LaurentPoly()
        return LaurentPoly.var(self.index[key]) * s

    def name(self, i: int) -> str:
        return self.subsets[i - 1].name()


def pluecker_relation(ring: PlueckerRing, head: Sequence[int], tail: Sequence[int]) -> LaurentPoly:
    """sum_r (-1)^r p_{head, tail_r} p_{tail without tail_r}; head has k-1, tail k+1 entries."""
    total = LaurentPoly()
    for r, j in enumerate(tail):
        rest = [x for s, x in enumerate(tail) if s != r]
        total = total + ring.p(list(head) + [j]) * ring.p(rest) * ((-1) ** r)
    return total


def pluecker_relations(k: int, n: int, degree_window: Optional[Sequence[int]] = None) -> List[Tuple[Tuple, Tuple, LaurentPoly]]:
    """All nonzero relations whose indices lie in ``degree_window`` (default 1..n)."""
    ring = PlueckerRing(k, n)
    window = list(degree_window) if degree_window else list(range(1, n + 1))
    out = []
    for head in itertools.combinations(window, k - 1):
        for tail in itertools.combinations(window, k + 1):
            rel = pluecker_relation(ring, head, tail)
            if not rel.is_zero():
                out.append((head, tail, rel))
    return out


def minors(mat: Sequence[Sequence], k: int, n: int) -> Dict[Tuple[int, ...], object]:
    return {c: det([[mat[r][x - 1] for x in c] for r in range(k)]) for c in itertools.combinations(range(1, n + 1), k)}


def eval_on_minors(rel: LaurentPoly, ring: PlueckerRing, mins) -> object:
    return poly_eval(rel, {ring.index[key]: v for key, v in mins.items()})


def generic_minors(k: int, n: int) -> Dict[Tuple[int, ...], LaurentPoly]:
    """Maximal minors of the k x n matrix of independent variables y_{r,c}."""
    mat = [[LaurentPoly.var(r * n + c + 1) for c in range(n)] for r in range(k)]
    return minors(mat, k, n)


# seeds --------------------------------------------------------------------


def rectangles_labels(k: int, n: int) -> Dict[Tuple[int, int], Tuple[int, ...]]:
    """Grid (i, j), 0<=i<=k, 0<=j<=n-k, labelled by [1, k-i] + [k-i+1+j, k+j]."""
    out = {}
    for i in range(k + 1):
        for j in range(n - k + 1):
            if i == 0 or j == 0:
                out[(i, j)] = tuple(range(1, k + 1))
            else:
                out[(i, j)] = tuple(list(range(1, k - i + 1)) + list(range(k - i + 1 + j, k + j + 1)))
    return out


def rectangles_seed(k: int, n: int) -> Seed:
    """Initial seed on the k x (n-k) grid of Pluecker coordinates.

    Arrows run (i,j) -> (i,j+1), (i,j) -> (i+1,j) and (i+1,j+1) -> (i,j); grid
    points on the top row and left column all carry p_{1..k}.  Arrows between
    frozen vertices are dropped and opposite arrows cancel.
    """
    lab = rectangles_labels(k, n)
    subsets = sorted(set(lab.values()))
    mutable = [s for s in subsets if not is_consecutive(KSubset(n, s))]
    frozen = [s for s in subsets if is_consecutive(KSubset(n, s))]
    order = mutable + frozen
    pos = {s: t for t, s in enumerate(order)}
    M = len(order)
    full = [[0] * M for _ in range(M)]

    def arrow(a, b):
        if a not in lab or b not in lab:
            return
        sa, sb = lab[a], lab[b]
        if sa == sb:
            return
        full[pos[sa]][pos[sb]] += 1
        full[pos[sb]][pos[sa]] -= 1

    for i in range(k + 1):
        for j in range(n - k + 1):
            arrow((i, j), (i, j + 1))
            arrow((i, j), (i + 1, j))
            arrow((i + 1, j + 1), (i, j))
    N = len(mutable)
    B = [row[:N] for row in full]
    names = [KSubset(n, s).name() for s in order]
    return Seed.initial(B, names)


def seed_subsets(S: Seed, n: int) -> List[Tuple[int, ...]]:
    out = []
    for nm in S.names:
        body = nm[1:]
        out.append(tuple(int(x) for x in (body.split("_") if "_" in body else body)))
    return out


# matching cluster variables to Pluecker coordinates ----------------------


def _random_point(k: int, n: int, rng: random.Random):
    while True:
        mat = [[rng.randint(-60, 60) for _ in range(n)] for _ in range(k)]
        mins = minors(mat, k, n)
        if all(v != 0 for v in mins.values()):
            return mins


def match_pluecker(G: MutationGraph, S0: Seed, k: int, n: int, trials: int = 2, rng_seed: int = 20240229) -> Dict[Tuple[int, ...], LaurentPoly]:
    """Identify each Pluecker coordinate with a collected variable.

    The initial variables are Pluecker coordinates, so every Laurent expansion
    can be evaluated on the minors of a random integer matrix; a variable is
    matched with p_I when the values agree on every trial point and no other
    p_J shares all of them.
    """
    rng = random.Random(rng_seed)
    labels = seed_subsets(S0, n)
    pool = G.variables + G.frozen
    sig_var = {x: [] for x in pool}
    sig_p = {s.elems: [] for s in all_subsets(k, n)}
    for _ in range(trials):
        mins = _random_point(k, n, rng)
        init = {i + 1: Fraction(mins[lab]) for i, lab in enumerate(labels)}
        for x in pool:
            sig_var[x].append(poly_eval(x, init))
        for key in sig_p:
            sig_p[key].append(mins[key])
    by_sig = {}
    for x, s in sig_var.items():
        by_sig.setdefault(tuple(s), []).append(x)
    out = {}
    for key, s in sig_p.items():
        hits = by_sig.get(tuple(s), [])
        if len(hits) == 1:
            out[key] = hits[0]
    return out


# Pluecker friezes ---------------------------------------------------------


def frieze_index(k: int, n: int, r: int, m: int) -> KSubset:
    """o([r']^{k-1}, m') with r' = r mod n and m' = (m + r' - 1) mod n, both in [n]."""
    if not 1 <= m <= n + k - 1:
        raise IndexCollision(f"m={m} outside 1..{n + k - 1}")
    rp = ((r - 1) % n) + 1
    block = [((rp - 1 + s) % n) + 1 for s in range(k - 1)]
    mp = ((m + rp - 2) % n) + 1
    if mp in block:
        raise IndexCollision(f"m'={mp} falls inside the consecutive block", r=r, m=m)
    return KSubset.of(n, block + [mp])


def grid_positions(k: int, n: int):
    """Frieze position (i, d) of every non-degenerate (r, m) with r in 1..n.

    Row r of the index map walks along t(i, .) with i = r mod n: m = k lands
    on the consecutive row d = 0 and d = m - k in general.
    """
    w = n - k - 1
    out = {}
    for r in range(1, n + 1):
        for m in range(1, n + k):
            d = m - k
            if not -(k - 1) <= d <= w + k:
                continue
            try:
                I = frieze_index(k, n, r, m)
            except IndexCollision:
                continue
            out[(r % n, d)] = I
    return out


def pluecker_frieze_grid(k: int, n: int, specialize: bool = False) -> FriezeGrid:
    """Band of Pluecker labels; with ``specialize`` consecutive ones become 1."""
    w = n - k - 1
    pos = grid_positions(k, n)
    rows = {}
    for d in range(-(k - 1), w + k + 1):
        row = []
        for i in range(n):
            I = pos.get((i, d))
            if I is None:
                row.append(0)
            elif specialize and is_consecutive(I):
                row.append(1)
            else:
                row.append(I.name())
        rows[d] = row
    return FriezeGrid(k, w, rows)


@dataclass
class GrassmannCensus:
    k: int
    n: int
    graph: MutationGraph
    match: Dict[Tuple[int, ...], LaurentPoly]
    friezes: List[FriezeGrid]
    frieze_of_cluster: List[int]

    @property
    def clusters(self) -> int:
        return len(self.graph.clusters)

    @property
    def distinct_friezes(self) -> int:
        return len(self.friezes)


def _check_size(k: int, n: int, allow_long: bool):
    if k == 2 and 4 <= n <= 12:
        return
    if (k, n) in ((3, 6), (3, 7)):
        return
    if (k, n) == (3, 8) and allow_long:
        return
    raise UnsupportedSize(f"Gr({k},{n}) is outside the supported range")


def grassmann_graph(k: int, n: int, progress=None) -> Tuple[Seed, MutationGraph]:
    S0 = rectangles_seed(k, n)
    return S0, explore(S0, progress=progress)


def unitary_frieze(G: MutationGraph, S0: Seed, k: int, n: int, cluster, match=None) -> FriezeGrid:
    match = match if match is not None else match_pluecker(G, S0, k, n)
    init = specialization_values(G, cluster)
    pos = grid_positions(k, n)
    w = n - k - 1
    interior = {d: [0] * n for d in range(1, w + 1)}
    for (i, d), I in pos.items():
        if not 1 <= d <= w:
            continue
        x = match.get(I.elems)
        if x is None:
            raise UnmatchedPluecker(f"{I.name()} is not among the collected variables")
        v = poly_eval(x, init)
        interior[d][i] = v.numerator if isinstance(v, Fraction) and v.denominator == 1 else v
    return FriezeGrid.from_interior(k, w, interior)


def unitary_census(k: int, n: int, allow_long: bool = False, progress=None) -> GrassmannCensus:
    _check_size(k, n, allow_long)
    S0, G = grassmann_graph(k, n, progress)
    match = match_pluecker(G, S0, k, n)
    missing = [I for I in all_subsets(k, n) if is_almost_consecutive(I) and I.elems not in match]
    if missing:
        raise UnmatchedPluecker(f"{missing[0].name()} is not among the collected variables")
    seen = {}
    which = []
    for cid in range(len(G.clusters)):
        F = unitary_frieze(G, S0, k, n, cid, match)
        key = F.key()
        if key not in seen:
            seen[key] = F
        which.append(key)
    keys = sorted(seen)
    idx = {key: t for t, key in enumerate(keys)}
    return GrassmannCensus(k, n, G, match, [seen[key] for key in keys], [idx[key] for key in which])
