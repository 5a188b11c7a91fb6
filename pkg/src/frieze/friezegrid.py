"""Closed friezes stored as one period of a band in tiling-matrix coordinates.

Entry ``t(i, j)`` lives in row ``d = j - i``.  Rows ``-(k-1)..-1`` are zero,
row 0 and row ``w+1`` are ones, rows ``w+2..w+k`` are zero, and rows ``1..w``
carry the interior.  For k=2 the classical entry ``m_{i,j}`` is ``t(i, j-1)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    NonPositiveEntry,
    NotClosing,
    OrderMismatch,
    ShapeMismatch,
    WindowOutOfBand,
)
from .exactalg import LaurentPoly, continuant, to_text


def det(m):
    """Cofactor expansion with memo on column subsets; works over any ring."""
    size = len(m)
    if size == 0:
        return 1
    memo = {}

    def rec(row, cols):
        if row == size:
            return 1
        key = (row, cols)
        if key in memo:
            return memo[key]
        total = 0
        sign = 1
        for c in range(size):
            if cols >> c & 1:
                continue
            a = m[row][c]
            if a:
                total = total + sign * a * rec(row + 1, cols | (1 << c))
            sign = -sign
        memo[key] = total
        return total

    return rec(0, 0)


class FriezeGrid:
    def __init__(self, k: int, w: int, rows: Dict[int, List], coefficient: bool = False):
        self.k = k
        self.w = w
        self.n = w + k + 1
        self.coefficient = coefficient
        self.rows = {d: list(r) for d, r in rows.items()}
        for d in self.band():
            r = self.rows.get(d)
            if r is None or len(r) != self.n:
                raise ShapeMismatch(f"row {d} missing or not of length {self.n}")

    def band(self):
        return range(-(self.k - 1), self.w + self.k + 1)

    def in_band(self, d: int) -> bool:
        return -(self.k - 1) <= d <= self.w + self.k

    def t(self, i: int, j: int):
        d = j - i
        if not self.in_band(d):
            raise WindowOutOfBand(f"offset {d} outside the band")
        return self.rows[d][i % self.n]

    def row(self, d: int) -> List:
        return list(self.rows[d])

    def interior(self) -> Dict[int, List]:
        return {d: list(self.rows[d]) for d in range(1, self.w + 1)}

    def boundary_value(self, d: int):
        if d == 0 or d == self.w + 1:
            return 1
        if d < 0 or d > self.w + 1:
            return 0
        return None

    @classmethod
    def from_interior(cls, k: int, w: int, interior: Dict[int, Sequence]) -> "FriezeGrid":
        n = w + k + 1
        rows = {}
        for d in range(-(k - 1), w + k + 1):
            if 1 <= d <= w:
                rows[d] = list(interior[d])
            else:
                rows[d] = [1 if d in (0, w + 1) else 0] * n
        return cls(k, w, rows)

    def shifted(self, s: int) -> "FriezeGrid":
        rows = {d: r[s % self.n:] + r[:s % self.n] for d, r in self.rows.items()}
        return FriezeGrid(self.k, self.w, rows, self.coefficient)

    def key(self) -> Tuple:
        return tuple(tuple(self.rows[d]) for d in self.band())

    def __eq__(self, other):
        return isinstance(other, FriezeGrid) and self.k == other.k and self.w == other.w and self.key() == other.key()

    def __hash__(self):
        return hash((self.k, self.w, self.key()))

    def __repr__(self):
        return f"FriezeGrid(k={self.k}, w={self.w}, interior={self.interior()})"

    def map(self, f) -> "FriezeGrid":
        return FriezeGrid(self.k, self.w, {d: [f(x) for x in r] for d, r in self.rows.items()}, self.coefficient)

    # serialisation

    def to_json_obj(self, names=None) -> dict:
        def enc(x):
            if isinstance(x, LaurentPoly):
                return to_text(x, names) if names else to_text(x)
            if isinstance(x, Fraction):
                return str(x)
            return x

        return {
            "k": self.k,
            "w": self.w,
            "n": self.n,
            "rows": [[enc(x) for x in self.rows[d]] for d in self.band()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict) -> "FriezeGrid":
        k, w = obj["k"], obj["w"]
        if obj.get("n", w + k + 1) != w + k + 1:
            raise ShapeMismatch("n must equal w + k + 1")
        band = list(range(-(k - 1), w + k + 1))
        if len(obj["rows"]) != len(band):
            raise ShapeMismatch("wrong number of rows")
        return cls(k, w, {d: list(r) for d, r in zip(band, obj["rows"])})

    def to_text(self) -> str:
        cells = {d: [str(x) for x in self.rows[d]] for d in self.band()}
        width = max(len(s) for r in cells.values() for s in r) + 1
        lines = []
        for idx, d in enumerate(self.band()):
            pad = (idx * width) // 2
            body = "".join(s.rjust(width) for s in cells[d])
            lines.append((" " * pad + body).rstrip())
        return "\n".join(lines)


# determinant windows ------------------------------------------------------


def diamond_det(F: FriezeGrid, i: int, j: int, l: int):
    if not 1 <= l <= F.k + 1:
        raise WindowOutOfBand(f"diamond size {l} outside 1..{F.k + 1}")
    lo, hi = j - i - (l - 1), j - i + (l - 1)
    if not (F.in_band(lo) and F.in_band(hi)):
        raise WindowOutOfBand(f"window at ({i},{j}) of size {l} leaves the band")
    return det([[F.t(i + a, j + b) for b in range(l)] for a in range(l)])


def diamond_positions(F: FriezeGrid, l: int):
    """(i, j) for every l x l window inside the band, one period of i."""
    lo = -(F.k - 1) + (l - 1)
    hi = F.w + F.k - (l - 1)
    for c in range(lo, hi + 1):
        for i in range(F.n):
            yield i, i + c


@dataclass
class ValidationReport:
    boundary_ok: bool = True
    frieze_ok: bool = True
    tame_ok: bool = True
    positivity_ok: Optional[bool] = None
    failures: List[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.boundary_ok and self.frieze_ok and self.tame_ok and self.positivity_ok is not False

    def as_dict(self) -> dict:
        return {
            "boundary_ok": self.boundary_ok,
            "frieze_ok": self.frieze_ok,
            "tame_ok": self.tame_ok,
            "positivity_ok": self.positivity_ok,
            "failures": self.failures,
        }


def validate(F: FriezeGrid) -> ValidationReport:
    rep = ValidationReport()
    for d in F.band():
        want = F.boundary_value(d)
        if want is None:
            continue
        for i, x in enumerate(F.rows[d]):
            if x != want:
                rep.boundary_ok = False
                rep.failures.append({"kind": "boundary", "i": i, "d": d, "value": str(x)})
    for i, j in diamond_positions(F, F.k):
        v = diamond_det(F, i, j, F.k)
        if v != 1:
            rep.frieze_ok = False
            rep.failures.append({"kind": "diamond", "size": F.k, "i": i, "j": j, "value": str(v)})
    for i, j in diamond_positions(F, F.k + 1):
        v = diamond_det(F, i, j, F.k + 1)
        if v != 0:
            rep.tame_ok = False
            rep.failures.append({"kind": "tame", "size": F.k + 1, "i": i, "j": j, "value": str(v)})
    interior = [x for d in range(1, F.w + 1) for x in F.rows[d]]
    if all(isinstance(x, int) for x in interior):
        rep.positivity_ok = all(x > 0 for x in interior)
        for d in range(1, F.w + 1):
            for i, x in enumerate(F.rows[d]):
                if x <= 0:
                    rep.failures.append({"kind": "positivity", "i": i, "d": d, "value": x})
    return rep


# Conway-Coxeter friezes ---------------------------------------------------


def frieze_from_quiddity(quiddity: Sequence[int]) -> FriezeGrid:
    a = list(quiddity)
    n = len(a)
    if n < 3:
        raise NotClosing("a quiddity needs at least 3 entries")
    w = n - 3

    def window(i, d):
        return continuant([a[(i + s) % n] for s in range(d)])

    for i in range(n):
        if window(i, n - 2) != 1 or window(i, n - 1) != 0:
            raise NotClosing(f"continuants starting at column {i} do not close", index=i)
    rows = {-1: [0] * n, 0: [1] * n, w + 1: [1] * n, w + 2: [0] * n}
    for d in range(1, w + 1):
        rows[d] = [window(i, d) for i in range(n)]
        bad = [i for i, x in enumerate(rows[d]) if x <= 0]
        if bad:
            raise NonPositiveEntry(f"row {d} has a non-positive entry at column {bad[0]}", index=bad[0], row=d)
    return FriezeGrid(2, w, rows)


def frieze_by_diamond_rule(quiddity: Sequence[int]) -> FriezeGrid:
    """Fill downward with t(i,j+1) = (t(i,j) t(i+1,j+1) - 1) / t(i+1,j)."""
    a = list(quiddity)
    n = len(a)
    w = n - 3
    rows = {-1: [0] * n, 0: [1] * n}
    if w >= 0:
        rows[1] = a[:]
    for d in range(2, w + 3):
        prev, prev2 = rows[d - 1], rows[d - 2]
        r = []
        for i in range(n):
            num = prev[i] * prev[(i + 1) % n] - 1
            den = prev2[(i + 1) % n]
            if den == 0 or num % den:
                raise NotClosing(f"diamond rule breaks at row {d}, column {i}", index=i)
            r.append(num // den)
        rows[d] = r
    if w == 0:
        rows[1] = [1] * n
    return FriezeGrid(2, w, {d: rows[d] for d in range(-1, w + 3)})


def check_coefficient_frieze(F: FriezeGrid, c: Sequence) -> bool:
    """Frieze with coefficients: c[i] stands for c_{i,i+1}, indices mod n."""
    if F.k != 2:
        raise ShapeMismatch("coefficient friezes have order 2")
    n, w = F.n, F.w
    if len(c) != n:
        raise ShapeMismatch(f"need {n} coefficients")
    if any(x == 0 for x in c):
        return False
    for i in range(n):
        if F.t(i, i - 1) != 0 or F.t(i, i + w + 2) != 0:
            return False
        if F.t(i, i) != c[i]:
            return False
        if F.t(i + 1, i + 1 + w + 1) != c[i]:
            return False
    for d in range(1, w + 1):
        if any(x == 0 for x in F.rows[d]):
            return False
    for i, j in diamond_positions(F, 2):
        if diamond_det(F, i, j, 2) != c[i % n] * c[(j + 1) % n]:
            return False
    return True


def glide_check(F: FriezeGrid) -> bool:
    """m_{i,j} = m_{j,i+n}, i.e. t(i,j) = t(j+1, i+n-1)."""
    if F.k != 2:
        raise OrderMismatch("glide symmetry is defined for order 2")
    for d in F.band():
        for i in range(F.n):
            j = i + d
            if F.t(i, j) != F.t(j + 1, i + F.n - 1):
                return False
    return True


# enumeration -------------------------------------------------------------


@dataclass
class EnumerationResult:
    friezes: List[FriezeGrid]
    bound: int
    pruned_by_bound: bool
    max_entry: int
    nodes: int

    @property
    def count(self) -> int:
        return len(self.friezes)


class _Solver:
    """Backtracking over interior entries with determinant propagation.

    Every k x k window must have determinant 1 and every (k+1) x (k+1) window
    determinant 0.  Windows are multilinear in their cells, so a window with
    one unknown cell either forces that cell or is a pure check.
    """

    def __init__(self, k: int, w: int, bound: int):
        self.k, self.w, self.bound = k, w, bound
        self.n = n = w + k + 1
        self.cells = [(i, d) for i in range(n) for d in range(1, w + 1)]
        self.index = {c: u for u, c in enumerate(self.cells)}
        self.cons = []
        for l, target in ((k, 1), (k + 1, 0)):
            lo = -(k - 1) + (l - 1)
            hi = w + k - (l - 1)
            for c in range(lo, hi + 1):
                for i in range(n):
                    mat = []
                    for a in range(l):
                        row = []
                        for b in range(l):
                            ii, dd = (i + a) % n, c + b - a
                            if 1 <= dd <= w:
                                row.append(("u", self.index[(ii, dd)]))
                            else:
                                row.append(("c", 1 if dd in (0, w + 1) else 0))
                        mat.append(row)
                    us = sorted({x for r in mat for t, x in r if t == "u"})
                    if us:
                        self.cons.append((mat, target, us))
        self.by_cell = [[] for _ in self.cells]
        for ci, (_, _, us) in enumerate(self.cons):
            for u in us:
                self.by_cell[u].append(ci)
        self.vals: List[Optional[int]] = [None] * len(self.cells)
        self.pruned = False
        self.nodes = 0
        self.out = []

    def _matrix(self, mat, sub=None):
        vals = self.vals
        return [[(x if t == "c" else (sub[1] if sub and x == sub[0] else vals[x])) for t, x in r] for r in mat]

    def _assign(self, u, v, trail) -> bool:
        self.vals[u] = v
        trail.append(u)
        queue = [u]
        while queue:
            cell = queue.pop()
            for ci in self.by_cell[cell]:
                mat, target, us = self.cons[ci]
                unknown = [x for x in us if self.vals[x] is None]
                if not unknown:
                    if det(self._matrix(mat)) != target:
                        return False
                elif len(unknown) == 1:
                    x = unknown[0]
                    d0 = det(self._matrix(mat, (x, 0)))
                    alpha = det(self._matrix(mat, (x, 1))) - d0
                    if alpha == 0:
                        if d0 != target:
                            return False
                        continue
                    num = target - d0
                    if num % alpha:
                        return False
                    v2 = num // alpha
                    if v2 < 1:
                        return False
                    if v2 > self.bound:
                        self.pruned = True
                        return False
                    self.vals[x] = v2
                    trail.append(x)
                    queue.append(x)
        return True

    def _pick(self):
        best, best_score = None, None
        for mat, target, us in self.cons:
            unknown = [x for x in us if self.vals[x] is None]
            if len(unknown) >= 2:
                score = len(unknown)
                if best_score is None or score < best_score:
                    best, best_score = unknown[0], score
        if best is None:
            for u, v in enumerate(self.vals):
                if v is None:
                    return u
        return best

    def run(self):
        self._search()
        return self.out

    def _search(self):
        self.nodes += 1
        u = self._pick()
        if u is None:
            self.out.append(list(self.vals))
            return
        for v in range(1, self.bound + 1):
            trail = []
            if self._assign(u, v, trail):
                self._search()
            for x in trail:
                self.vals[x] = None


def _ext_gcd(a, b):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def _unimodular_for(a: List[int]) -> List[List[int]]:
    """Integer matrix U with det +-1 and a @ U = (g, 0, ..., 0)."""
    k = len(a)
    U = [[int(r == c) for c in range(k)] for r in range(k)]
    a = list(a)
    for c in range(1, k):
        if a[c] == 0:
            continue
        g, x, y = _ext_gcd(a[0], a[c])
        p, q = a[0] // g, a[c] // g
        # columns 0 and c are replaced by x*col0 + y*colc and -q*col0 + p*colc
        for r in range(k):
            u0, uc = U[r][0], U[r][c]
            U[r][0], U[r][c] = x * u0 + y * uc, -q * u0 + p * uc
        a[0], a[c] = g, 0
    if a[0] < 0:
        for r in range(k):
            U[r][0] = -U[r][0]
    return U


def _reduce_row(c, b):
    g = math.gcd(*c)
    if g > 1:
        # c.s >= b with integer s tightens to (c/g).s >= ceil(b/g)
        return tuple(x // g for x in c), -((-b) // g)
    return tuple(c), b


def _lattice_points(cons, dim):
    """Integer s in Z^dim with lo <= c.s + c0 <= hi for each (c, c0, lo, hi).

    Bounds on each coordinate come from Fourier-Motzkin elimination over the
    integers, so the routine raises ValueError if the region is unbounded.
    """
    ineqs = set()
    for c, c0, lo, hi in cons:
        ineqs.add(_reduce_row(c, lo - c0))
        if hi is not None:
            ineqs.add(_reduce_row([-x for x in c], c0 - hi))
    out = []

    def bounds_for_first(rows, dim):
        for v in range(dim - 1, 0, -1):
            pos = [r for r in rows if r[0][v] > 0]
            neg = [r for r in rows if r[0][v] < 0]
            new = {r for r in rows if r[0][v] == 0}
            for p, pb in pos:
                for q, qb in neg:
                    fp, fq = -q[v], p[v]
                    new.add(_reduce_row([fp * x + fq * y for x, y in zip(p, q)], fp * pb + fq * qb))
            rows = new
        lo, hi = None, None
        for c, b in rows:
            if c[0] > 0:
                val = -((-b) // c[0])
                lo = val if lo is None or val > lo else lo
            elif c[0] < 0:
                val = (-b) // (-c[0])
                hi = val if hi is None or val < hi else hi
            elif b > 0 and not any(c):
                return 1, 0
        if lo is None or hi is None:
            raise ValueError("unbounded")
        return lo, hi

    def rec(rows, dim, prefix):
        lo, hi = bounds_for_first(rows, dim)
        for x in range(lo, hi + 1):
            if dim == 1:
                if all(c[0] * x >= b for c, b in rows):
                    out.append(prefix + [x])
                continue
            sub = {_reduce_row(c[1:], b - c[0] * x) if any(c[1:]) else ((0,) * (dim - 1), b - c[0] * x) for c, b in rows}
            if any(not any(c) and b > 0 for c, b in sub):
                continue
            rec({r for r in sub if any(r[0])}, dim - 1, prefix + [x])

    if dim == 0:
        if all(b <= 0 for _, b in ineqs):
            out.append([])
        return out
    if any(not any(c) and b > 0 for c, b in ineqs):
        return out
    rec({r for r in ineqs if any(r[0])}, dim, [])
    return out


class _VectorSearch:
    """Friezes as sequences v_0..v_{n-1} in Z^k with consecutive determinants 1.

    t(i, j) = det(v_i, ..., v_{i+k-2}, v_{j+k-1}) and v_{m+n} = (-1)^(k-1) v_m.
    v_0..v_{k-1} are pinned to the standard basis, which uses up the SL_k
    freedom; each later v_m is a lattice point cut out by the entries whose
    last vector index is m.
    """

    def __init__(self, k: int, w: int, bound: int):
        self.k, self.w, self.bound = k, w, bound
        self.n = n = w + k + 1
        self.sign = -1 if k % 2 == 0 else 1
        entries = []
        for i in range(n):
            for d in range(-(k - 1), w + k + 1):
                raw = list(range(i, i + k - 1)) + [i + d + k - 1]
                red = [(x % n, self.sign ** (x // n)) for x in raw]
                idx = [r for r, _ in red]
                if len(set(idx)) < k:
                    continue
                sgn = 1
                for _, s_ in red:
                    sgn *= s_
                entries.append((i, d, idx, sgn))
        self.at_step = [[] for _ in range(n)]
        for e in entries:
            self.at_step[max(e[2])].append(e)
        self.vecs: List[Optional[List[int]]] = [None] * n
        for c in range(k):
            self.vecs[c] = [int(r == c) for r in range(k)]
        self.out = []
        self.nodes = 0

    def _target(self, d):
        if 1 <= d <= self.w:
            return 1, self.bound
        v = 1 if d in (0, self.w + 1) else 0
        return v, v

    def _functional(self, idx, sgn, m):
        k = self.k
        coeffs = []
        for c in range(k):
            e = [int(r == c) for r in range(k)]
            cols = [e if x == m else self.vecs[x] for x in idx]
            coeffs.append(sgn * det([[col[r] for col in cols] for r in range(k)]))
        return coeffs

    def _check(self, idx, sgn, d):
        cols = [self.vecs[x] for x in idx]
        val = sgn * det([[col[r] for col in cols] for r in range(self.k)])
        lo, hi = self._target(d)
        return lo <= val <= hi

    def run(self):
        for c in range(self.k):
            for i, d, idx, sgn in self.at_step[c]:
                if not self._check(idx, sgn, d):
                    return self.out
        self._step(self.k)
        return self.out

    def _step(self, m):
        self.nodes += 1
        if m == self.n:
            self.out.append([list(v) for v in self.vecs])
            return
        k = self.k
        eq = None
        cons = []
        for i, d, idx, sgn in self.at_step[m]:
            f = self._functional(idx, sgn, m)
            lo, hi = self._target(d)
            if eq is None and lo == hi == 1 and d == 0:
                eq = f
            else:
                cons.append((f, lo, hi))
        g = math.gcd(*eq)
        if g != 1:
            return
        U = _unimodular_for(eq)
        # v = U s with s_0 = 1 (eq . U = e_0)
        lat = []
        for f, lo, hi in cons:
            fu = [sum(f[r] * U[r][c] for r in range(k)) for c in range(k)]
            lat.append((fu[1:], fu[0], lo, hi))
        for s in _lattice_points(lat, k - 1):
            full = [1] + s
            self.vecs[m] = [sum(U[r][c] * full[c] for c in range(k)) for r in range(k)]
            self._step(m + 1)
        self.vecs[m] = None

    def grids(self):
        res = []
        k, w, n = self.k, self.w, self.n
        for vecs in self.out:
            self.vecs = vecs
            interior = {d: [0] * n for d in range(1, w + 1)}
            for i in range(n):
                for d in range(1, w + 1):
                    raw = list(range(i, i + k - 1)) + [i + d + k - 1]
                    cols = []
                    sgn = 1
                    for x in raw:
                        sgn *= self.sign ** (x // n)
                        cols.append(vecs[x % n])
                    interior[d][i] = sgn * det([[col[r] for col in cols] for r in range(k)])
            res.append(FriezeGrid.from_interior(k, w, interior))
        return res


def enumerate_slk_grid(k: int, w: int, bound: int, progress=None) -> EnumerationResult:
    """All tame integral SL_k friezes of width w with interior entries in [1, bound].

    The search runs with bound+1 so that friezes touching bound+1 are seen; any
    such frieze is dropped and reported through ``pruned_by_bound``.
    """
    if k < 2 or w < 1:
        raise ShapeMismatch("need k >= 2 and w >= 1")
    try:
        s = _VectorSearch(k, w, bound + 1)
        s.run()
        candidates = s.grids()
        nodes = s.nodes
    except ValueError:
        c = _Solver(k, w, bound + 1)
        sols = c.run()
        nodes = c.nodes
        candidates = []
        for vals in sols:
            interior = {d: [0] * c.n for d in range(1, w + 1)}
            for (i, d), v in zip(c.cells, vals):
                interior[d][i] = v
            candidates.append(FriezeGrid.from_interior(k, w, interior))
    seen = {}
    over = False
    for F in candidates:
        if not validate(F).ok:
            continue
        if max(x for d in range(1, w + 1) for x in F.rows[d]) > bound:
            over = True
            continue
        seen[F.key()] = F
    friezes = [seen[key] for key in sorted(seen)]
    top = max((x for F in friezes for d in range(1, w + 1) for x in F.rows[d]), default=0)
    return EnumerationResult(friezes, bound, over, top, nodes)
