"""Triangulated polygons, their friezes and their quivers.

Vertices are 1..n in clockwise order.  A frieze column i corresponds to
vertex i (column 0 is vertex n).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, Iterable, List, Tuple

from .errors import NotACCFrieze, NotADiagonal, ShapeMismatch
from .friezegrid import FriezeGrid, frieze_from_quiddity, validate


@dataclass(frozen=True, order=True)
class Arc:
    a: int
    b: int

    def __post_init__(self):
        if self.a > self.b:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)
        if self.a == self.b:
            raise ShapeMismatch("an arc needs two distinct endpoints")

    def is_boundary(self, n: int) -> bool:
        return self.b == self.a + 1 or (self.a == 1 and self.b == n)

    def as_list(self) -> List[int]:
        return [self.a, self.b]

    def __str__(self):
        return f"({self.a},{self.b})"


def crossing(x: Arc, y: Arc) -> bool:
    a, b, c, d = x.a, x.b, y.a, y.b
    return a < c < b < d or c < a < d < b


def boundary_arcs(n: int) -> List[Arc]:
    return [Arc(i, i + 1) for i in range(1, n)] + [Arc(1, n)]


@dataclass(frozen=True)
class Triangulation:
    n: int
    diagonals: FrozenSet[Arc]

    @classmethod
    def of(cls, n: int, arcs: Iterable) -> "Triangulation":
        return cls(n, frozenset(a if isinstance(a, Arc) else Arc(*a) for a in arcs))

    def is_valid(self) -> bool:
        ds = list(self.diagonals)
        if len(ds) != self.n - 3:
            return False
        for d in ds:
            if d.is_boundary(self.n) or not (1 <= d.a and d.b <= self.n):
                return False
        return not any(crossing(x, y) for i, x in enumerate(ds) for y in ds[i + 1:])

    def sorted_diagonals(self) -> List[Arc]:
        return sorted(self.diagonals)

    def edges(self) -> FrozenSet[Arc]:
        return self.diagonals | frozenset(boundary_arcs(self.n))

    def to_json_obj(self) -> dict:
        return {"n": self.n, "diagonals": [d.as_list() for d in self.sorted_diagonals()]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Triangulation":
        return cls.of(obj["n"], [tuple(x) for x in obj["diagonals"]])


def fan(n: int, v: int = 1) -> Triangulation:
    others = [u for u in range(1, n + 1) if u != v and Arc(u, v) not in boundary_arcs(n)]
    return Triangulation.of(n, [Arc(u, v) for u in others])


def enumerate_triangulations(n: int) -> List[Triangulation]:
    if n < 3:
        return []

    @lru_cache(maxsize=None)
    def tri(lo: int, hi: int) -> Tuple[FrozenSet[Arc], ...]:
        # triangulations of the sub-polygon lo, lo+1, ..., hi
        if hi - lo < 2:
            return (frozenset(),)
        out = []
        for apex in range(lo + 1, hi):
            extra = set()
            if apex - lo > 1:
                extra.add(Arc(lo, apex))
            if hi - apex > 1:
                extra.add(Arc(apex, hi))
            for left in tri(lo, apex):
                for right in tri(apex, hi):
                    out.append(left | right | extra)
        return tuple(out)

    res = [Triangulation(n, ds) for ds in tri(1, n)]
    return sorted(res, key=lambda t: t.sorted_diagonals())


def triangles(T: Triangulation) -> List[Tuple[int, int, int]]:
    """Faces found by clipping ears off the polygon one at a time."""
    edges = T.edges()
    poly = list(range(1, T.n + 1))
    out = []
    while len(poly) > 3:
        m = len(poly)
        for idx in range(m):
            u, v, w = poly[idx - 1], poly[idx], poly[(idx + 1) % m]
            if Arc(u, w) in edges:
                out.append(tuple(sorted((u, v, w))))
                poly.pop(idx)
                break
        else:
            raise ShapeMismatch("not a triangulation: no ear found")
    out.append(tuple(sorted(poly)))
    return sorted(out)


def quiddity(T: Triangulation) -> List[int]:
    counts = [0] * T.n
    for tri_ in triangles(T):
        for v in tri_:
            counts[v - 1] += 1
    return counts


def frieze_of(T: Triangulation) -> FriezeGrid:
    return frieze_from_quiddity(quiddity(T))


def _vertex(i: int, n: int) -> int:
    r = i % n
    return n if r == 0 else r


def triangulation_of(F: FriezeGrid) -> Triangulation:
    if F.k != 2 or not validate(F).ok:
        raise NotACCFrieze("not a Conway-Coxeter frieze")
    n = F.n
    ds = set()
    for d in range(1, F.w + 1):
        for i in range(n):
            if F.rows[d][i] == 1:
                # t(i, i+d) is m_{i, i+d+1}
                ds.add(Arc(_vertex(i, n), _vertex(i + d + 1, n)))
    T = Triangulation(n, frozenset(ds))
    if not T.is_valid():
        raise NotACCFrieze("the ones of this frieze do not form a triangulation")
    return T


def flip(T: Triangulation, d: Arc) -> Tuple[Triangulation, Arc]:
    if d not in T.diagonals:
        raise NotADiagonal(f"{d} is not a diagonal of the triangulation")
    apexes = [next(v for v in t if v not in (d.a, d.b)) for t in triangles(T) if d.a in t and d.b in t]
    new = Arc(*apexes)
    return Triangulation(T.n, (T.diagonals - {d}) | {new}), new


# quivers ------------------------------------------------------------------


@dataclass
class Quiver:
    vertices: List[Tuple[object, bool]]
    arrows: List[Tuple[object, object]]

    def ids(self) -> List[object]:
        return [v for v, _ in self.vertices]

    def mutable(self) -> List[object]:
        return [v for v, f in self.vertices if not f]

    def frozen(self) -> List[object]:
        return [v for v, f in self.vertices if f]

    def to_json_obj(self) -> dict:
        return {
            "vertices": [{"id": v, "frozen": f} for v, f in self.vertices],
            "arrows": [[s, t] for s, t in self.arrows],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Quiver":
        return cls([(v["id"], bool(v.get("frozen", False))) for v in obj["vertices"]],
                   [(s, t) for s, t in obj["arrows"]])


def arc_id(x: Arc) -> str:
    return f"{x.a}-{x.b}"


def quiver_of(T: Triangulation, include_frozen: bool = False) -> Quiver:
    """One arrow per pair of sides sharing a triangle, oriented around the face.

    In the face a<b<c the sides are visited as (a,b) -> (b,c) -> (c,a) -> (a,b);
    an internal triangle therefore yields a 3-cycle.  Arrows between two
    boundary sides are dropped.
    """
    n = T.n
    diags = T.sorted_diagonals()
    verts = [(arc_id(d), False) for d in diags]
    if include_frozen:
        verts += [(arc_id(b), True) for b in sorted(boundary_arcs(n))]
    arrows = []
    for a, b, c in triangles(T):
        sides = [Arc(a, b), Arc(b, c), Arc(a, c)]
        for s, t in zip(sides, sides[1:] + sides[:1]):
            sb, tb = s.is_boundary(n), t.is_boundary(n)
            if sb and tb:
                continue
            if (sb or tb) and not include_frozen:
                continue
            arrows.append((arc_id(s), arc_id(t)))
    return Quiver(verts, sorted(arrows))
