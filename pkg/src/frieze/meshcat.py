"""Translation quivers, mesh friezes and the rank-one model of C(2,n)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    InvalidTilting,
    NoSliceFound,
    NotADiagonal,
    ParseError,
    SummandHasNoModule,
    UnknownType,
)
from .exactalg import LaurentPoly, poly_div_exact, poly_eval
from .friezegrid import FriezeGrid
from .polygon import Arc, Triangulation, arc_id, crossing, frieze_of, quiver_of


@dataclass
class TranslationQuiver:
    vertices: List[str]
    arrows: List[Tuple[str, str]]
    tau: Dict[str, str]
    pi: frozenset = frozenset()

    def meshes(self) -> List[Tuple[str, List[str], str]]:
        """(A, middle terms, C) for every C where the translation is defined."""
        into = {}
        for s, t in self.arrows:
            into.setdefault(t, []).append(s)
        return [(a, sorted(into.get(c, [])), c) for c, a in sorted(self.tau.items())]

    def well_formed(self) -> bool:
        out = {}
        for s, t in self.arrows:
            out.setdefault(s, set()).add(t)
        for a, mids, c in self.meshes():
            if any(b not in out.get(a, ()) for b in mids):
                return False
        return True

    def stable(self) -> "TranslationQuiver":
        keep = [v for v in self.vertices if v not in self.pi]
        ks = set(keep)
        return TranslationQuiver(keep, [(s, t) for s, t in self.arrows if s in ks and t in ks],
                                 {c: a for c, a in self.tau.items() if c in ks and a in ks})

    def to_text(self) -> str:
        lines = [f"vertex {v} pi" if v in self.pi else f"vertex {v}" for v in self.vertices]
        lines += [f"arrow {s} {t}" for s, t in self.arrows]
        lines += [f"tau {c} {a}" for c, a in sorted(self.tau.items())]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "TranslationQuiver":
        verts, arrows, tau, pi = [], [], {}, set()
        for no, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].split()
            if not line:
                continue
            kind = line[0]
            if kind == "vertex" and len(line) in (2, 3):
                if len(line) == 3 and line[2] != "pi":
                    raise ParseError(f"line {no}: unknown vertex flag {line[2]!r}")
                verts.append(line[1])
                if len(line) == 3:
                    pi.add(line[1])
            elif kind == "arrow" and len(line) == 3:
                arrows.append((line[1], line[2]))
            elif kind == "tau" and len(line) == 3:
                tau[line[1]] = line[2]
            else:
                raise ParseError(f"line {no}: cannot read {raw!r}")
        known = set(verts)
        for s, t in arrows + list(tau.items()):
            if s not in known or t not in known:
                raise ParseError(f"undeclared vertex in {s} {t}")
        return cls(verts, arrows, tau, frozenset(pi))


# the rank-one model ------------------------------------------------------


def _pair(a: int, b: int, n: int) -> Tuple[int, int]:
    a, b = (a - 1) % n + 1, (b - 1) % n + 1
    return (a, b) if a < b else (b, a)


def _is_consecutive(p: Tuple[int, int], n: int) -> bool:
    a, b = p
    return b == a + 1 or (a == 1 and b == n)


def pair_id(p: Tuple[int, int]) -> str:
    return f"{p[0]}-{p[1]}"


def ar_quiver_c2n(n: int) -> TranslationQuiver:
    if n < 4:
        raise UnknownType("C(2,n) needs n >= 4")
    pairs = list(combinations(range(1, n + 1), 2))
    arrows, tau = [], {}
    for a, b in pairs:
        for nxt in ((a + 1, b), (a, b + 1)):
            if (nxt[0] - nxt[1]) % n:
                arrows.append((pair_id((a, b)), pair_id(_pair(*nxt, n))))
        if not _is_consecutive((a, b), n):
            tau[pair_id((a, b))] = pair_id(_pair(a - 1, b - 1, n))
    pi = frozenset(pair_id(p) for p in pairs if _is_consecutive(p, n))
    return TranslationQuiver([pair_id(p) for p in pairs], sorted(arrows), tau, pi)


# Dynkin quivers ----------------------------------------------------------

# (rank, edges, Coxeter number, involution applied by one period)
_DYNKIN = {
    "D4": (4, [(1, 2), (2, 3), (2, 4)], 6, {}),
    "E6": (6, [(1, 2), (2, 3), (3, 4), (4, 5), (3, 6)], 12, {1: 5, 5: 1, 2: 4, 4: 2}),
    "E8": (8, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8)], 30, {}),
}


def _dynkin_data(name: str):
    if name in _DYNKIN:
        return _DYNKIN[name]
    if name[:1] == "A" and name[1:].isdigit() and int(name[1:]) >= 1:
        m = int(name[1:])
        return m, [(i, i + 1) for i in range(1, m)], m + 1, {i: m + 1 - i for i in range(1, m + 1)}
    raise UnknownType(f"unknown Dynkin type {name!r}")


def zdelta_quotient(name: str) -> TranslationQuiver:
    """Bipartite ZΔ with vertices (t, i), t of the colour of i, modulo one period."""
    m, edges, h, sigma = _dynkin_data(name)
    nbrs = {i: [] for i in range(1, m + 1)}
    for a, b in edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    colour = {1: 0}
    stack = [1]
    while stack:
        i = stack.pop()
        for j in nbrs[i]:
            if j not in colour:
                colour[j] = 1 - colour[i]
                stack.append(j)
    period = h + 2

    def canon(t, i):
        q, r = divmod(t, period)
        if q % 2:
            i = sigma.get(i, i)
        return f"{r}:{i}"

    verts = [(t, i) for t in range(period) for i in range(1, m + 1) if t % 2 == colour[i]]
    arrows, tau = [], {}
    for t, i in verts:
        for j in nbrs[i]:
            arrows.append((canon(t, i), canon(t + 1, j)))
        tau[canon(t, i)] = canon(t - 2, i)
    return TranslationQuiver([canon(t, i) for t, i in verts], sorted(arrows), tau)


def dynkin_translation_quiver(name: str) -> TranslationQuiver:
    if name in _DYNKIN:
        text = resources.files("frieze").joinpath("data", f"{name.lower()}.txt").read_text()
        return TranslationQuiver.from_text(text)
    m, *_ = _dynkin_data(name)
    return ar_quiver_c2n(m + 3).stable()


# mesh friezes ------------------------------------------------------------


@dataclass
class MeshEnumeration:
    friezes: List[Dict[str, int]]
    bound: int
    slice: List[str]
    pruned_by_bound: bool
    pruned_nonintegral: int
    nodes: int
    max_slice_value: int = 0
    translated: bool = False

    @property
    def count(self) -> int:
        return len(self.friezes)

    def report(self) -> dict:
        return {"count": self.count, "bound": self.bound, "slice": self.slice,
                "pruned_by_bound": self.pruned_by_bound, "pruned_nonintegral": self.pruned_nonintegral,
                "nodes": self.nodes, "max_slice_value": self.max_slice_value,
                "closed_under_translation": self.translated}


def _closure(meshes, known: set) -> set:
    """Vertices forced by the meshes once `known` is fixed (values ignored)."""
    known = set(known)
    changed = True
    while changed:
        changed = False
        for a, mids, c in meshes:
            unknown = [v for v in (a, c, *mids) if v not in known]
            if len(unknown) != 1:
                continue
            if unknown[0] in mids and (a not in known or c not in known):
                continue
            known.add(unknown[0])
            changed = True
    return known


def _orbits(Q: TranslationQuiver) -> Dict[str, int]:
    inv = {a: c for c, a in Q.tau.items()}
    orbit = {}
    for v in Q.vertices:
        if v in orbit or v in Q.pi:
            continue
        o = len(set(orbit.values()))
        todo = [v]
        while todo:
            u = todo.pop()
            if u in orbit or u in Q.pi:
                continue
            orbit[u] = o
            todo.extend(x for x in (Q.tau.get(u), inv.get(u)) if x is not None)
    return orbit


def find_slice(Q: TranslationQuiver, start: Optional[str] = None) -> List[str]:
    """Greedy section grown along arrows from `start`.

    First one vertex per translation orbit; if the quotient glued orbits
    together that is not enough, so vertices the meshes do not yet force are
    added in the same breadth-first order.
    """
    stable = [v for v in Q.vertices if v not in Q.pi]
    if not stable:
        raise NoSliceFound("no stable vertices")
    start = start or stable[0]
    if start not in stable:
        raise NoSliceFound(f"{start} is not a stable vertex")
    meshes = [(a, [b for b in mids if b not in Q.pi], c) for a, mids, c in Q.meshes()]
    orbit = _orbits(Q)
    nbrs = {v: [] for v in Q.vertices}
    for s, t in Q.arrows:
        nbrs[s].append(t)
        nbrs[t].append(s)
    chosen, seen = [start], {orbit[start]}
    queue, visited = deque([start]), {start}
    while queue:
        v = queue.popleft()
        for u in nbrs[v]:
            if u in orbit and u not in visited and orbit[u] not in seen:
                visited.add(u)
                seen.add(orbit[u])
                chosen.append(u)
                queue.append(u)
    known = _closure(meshes, set(chosen) | set(Q.pi))
    queue, visited = deque(chosen), set(chosen)
    while queue and len(known) < len(Q.vertices):
        v = queue.popleft()
        if v not in known:
            chosen.append(v)
            known = _closure(meshes, known | {v})
        for u in nbrs[v]:
            if u not in visited and u not in Q.pi:
                visited.add(u)
                queue.append(u)
    if len(known) < len(Q.vertices):
        raise NoSliceFound("the meshes do not determine every vertex from a connected set")
    return chosen


class _Knitter:
    def __init__(self, Q: TranslationQuiver):
        self.names = list(Q.vertices)
        idx = {v: i for i, v in enumerate(self.names)}
        self.meshes = []
        for a, mids, c in Q.meshes():
            mids = [idx[b] for b in mids if b not in Q.pi]
            self.meshes.append((idx[a], mids, idx[c]))
        self.touch = [[] for _ in self.names]
        for mi, (a, mids, c) in enumerate(self.meshes):
            for v in {a, c, *mids}:
                self.touch[v].append(mi)
        self.start = [1 if v in Q.pi else 0 for v in self.names]

    def propagate(self, vals: List[int], seeds: Sequence[int]) -> bool:
        """Fill in whatever the meshes force; False on a non-integral or broken mesh."""
        queue = deque(mi for v in seeds for mi in self.touch[v])
        while queue:
            a, mids, c = self.meshes[queue.popleft()]
            va, vc = vals[a], vals[c]
            prod, missing = 1, None
            for b in mids:
                vb = vals[b]
                if vb:
                    prod *= vb
                elif missing is None:
                    missing = b
                else:
                    missing = -1
                    break
            if missing == -1:
                continue
            if missing is None:
                if va and vc:
                    if va * vc != prod + 1:
                        return False
                    continue
                if va:
                    q, r = divmod(prod + 1, va)
                    new = c
                elif vc:
                    q, r = divmod(prod + 1, vc)
                    new = a
                else:
                    continue
            else:
                if not (va and vc):
                    continue
                q, r = divmod(va * vc - 1, prod)
                new = missing
            if r or q <= 0:
                return False
            vals[new] = q
            queue.extend(self.touch[new])
        return True


def _translation_is_automorphism(Q: TranslationQuiver) -> bool:
    stable = [v for v in Q.vertices if v not in Q.pi]
    if set(Q.tau) != set(stable) or set(Q.tau.values()) != set(stable):
        return False
    arrows = set(Q.arrows)
    return all((Q.tau[s], Q.tau[t]) in arrows for s, t in Q.arrows if s in Q.tau and t in Q.tau)


def _translation_orbit(Q: TranslationQuiver, names: List[str], vals: Tuple[int, ...]):
    pos = {v: i for i, v in enumerate(names)}
    perm = [pos[Q.tau.get(v, v)] for v in names]
    out, cur = [], vals
    while True:
        out.append(cur)
        cur = tuple(cur[perm[i]] for i in range(len(names)))
        if cur == vals:
            return out


def mesh_frieze_enumerate(Q: TranslationQuiver, bound: int, slice_start: Optional[str] = None,
                          progress=None, slice_vertices: Optional[Sequence[str]] = None) -> MeshEnumeration:
    """Slice values in [1, bound]; everything else is knitted.

    When the translation is an automorphism of Q the hits are closed under it,
    so a frieze is found as soon as one of its translates fits under the bound.
    The search runs one past the bound; pruned_by_bound says whether that extra
    value produced friezes the bound alone would have missed.
    """
    sl = list(slice_vertices) if slice_vertices else find_slice(Q, slice_start)
    K = _Knitter(Q)
    pos = {v: i for i, v in enumerate(K.names)}
    meshes = [(a, [b for b in mids if b not in Q.pi], c) for a, mids, c in Q.meshes()]
    if len(_closure(meshes, set(sl) | set(Q.pi))) < len(Q.vertices):
        raise NoSliceFound("the given vertices do not determine the frieze")
    order = [pos[v] for v in sl]
    hits, stats = [], {"nodes": 0, "bad": 0}

    def rec(depth, vals):
        stats["nodes"] += 1
        if progress and stats["nodes"] % 100000 == 0:
            progress(f"{stats['nodes']} nodes, {len(hits)} hits")
        if depth == len(order):
            if all(vals):
                hits.append(tuple(vals))
            return
        v = order[depth]
        for x in range(1, bound + 2):
            nxt = list(vals)
            nxt[v] = x
            if K.propagate(nxt, [v]):
                rec(depth + 1, nxt)
            else:
                stats["bad"] += 1

    init = list(K.start)
    if not K.propagate(init, [i for i, x in enumerate(init) if x]):
        return MeshEnumeration([], bound, sl, False, 1, 1)
    rec(0, init)
    closed = _translation_is_automorphism(Q)

    def close(vals_list):
        out = set()
        for vals in vals_list:
            if vals not in out:
                out.update(_translation_orbit(Q, K.names, vals) if closed else [vals])
        return out

    inside = [h for h in hits if max(h[v] for v in order) <= bound]
    within = close(inside)
    pruned = bool(close(hits) - within)
    top = max((max(h[v] for v in order) for h in inside), default=0)
    found = [dict(zip(K.names, vals)) for vals in sorted(within)]
    return MeshEnumeration(found, bound, sl, pruned, stats["bad"], stats["nodes"], top, closed)


def mesh_frieze_census(Q: TranslationQuiver, start_bound: int = 8, max_bound: int = 1024,
                       slice_start: Optional[str] = None, progress=None) -> Tuple[MeshEnumeration, List[Tuple[int, int]]]:
    """Double the bound until two consecutive counts agree with nothing pruned."""
    history = []
    b = start_bound
    prev = None
    while True:
        r = mesh_frieze_enumerate(Q, b, slice_start, progress)
        history.append((b, r.count))
        if prev is not None and prev.count == r.count and not r.pruned_by_bound:
            return r, history
        if b >= max_bound:
            return r, history
        prev = r
        b *= 2


def mesh_frieze_ok(Q: TranslationQuiver, values: Dict[str, int]) -> bool:
    if any(values.get(v) != 1 for v in Q.pi):
        return False
    if any(not isinstance(values.get(v), int) or values[v] <= 0 for v in Q.vertices):
        return False
    for a, mids, c in Q.meshes():
        prod = 1
        for b in mids:
            prod *= values[b]
        if values[a] * values[c] != prod + 1:
            return False
    return True


# rank-one objects and cluster tilting ------------------------------------


def ext_vanishes(x: Tuple[int, int], y: Tuple[int, int]) -> bool:
    return not crossing(Arc(*x), Arc(*y))


@dataclass(frozen=True)
class ClusterTiltingObject:
    n: int
    summands: frozenset

    @classmethod
    def of(cls, n: int, pairs) -> "ClusterTiltingObject":
        T = cls(n, frozenset(_pair(a, b, n) for a, b in pairs) | {_pair(i, i + 1, n) for i in range(1, n + 1)})
        T.check()
        return T

    @classmethod
    def from_triangulation(cls, T: Triangulation) -> "ClusterTiltingObject":
        return cls.of(T.n, [(d.a, d.b) for d in T.diagonals])

    def diagonals(self) -> List[Tuple[int, int]]:
        return sorted(p for p in self.summands if not _is_consecutive(p, self.n))

    def check(self):
        ds = self.diagonals()
        if len(ds) != self.n - 3 or len(self.summands) != 2 * self.n - 3:
            raise InvalidTilting(f"need {self.n - 3} diagonals, got {len(ds)}")
        for x, y in combinations(ds, 2):
            if not ext_vanishes(x, y):
                raise InvalidTilting(f"{x} and {y} cross")

    def triangulation(self) -> Triangulation:
        return Triangulation.of(self.n, self.diagonals())


def _pair_grid(n: int, value) -> FriezeGrid:
    """t(i, i+d) is the value on the pair (i, i+d+1), vertices taken mod n."""
    w = n - 3
    rows = {-1: [0] * n, w + 2: [0] * n}
    for d in range(0, w + 2):
        rows[d] = [value(_pair(i, i + d + 1, n)) for i in range(n)]
    return FriezeGrid(2, w, rows)


def _exchanges(n: int):
    """X*Y = P1*P2 + P3*P4 for crossing pairs; mesh-shaped ones (two boundary sides) first."""
    mesh, rest = [], []
    for a, b, c, d in combinations(range(1, n + 1), 4):
        rel = ((a, c), (b, d), (a, b), (c, d), (a, d), (b, c))
        thin = sum(_is_consecutive(p, n) for p in rel[2:]) >= 2
        (mesh if thin else rest).append(rel)
    return mesh, rest


def _solve(rel, val) -> bool:
    X, Y, P1, P2, P3, P4 = rel
    unknown = [i for i, p in enumerate(rel) if p not in val]
    if len(unknown) != 1:
        return False
    u = unknown[0]
    if u < 2:
        other = val[rel[1 - u]]
        val[rel[u]] = poly_div_exact(val[P1] * val[P2] + val[P3] * val[P4], other)
    else:
        pair = 2 if u < 4 else 4
        partner = rel[pair + (1 - (u - pair))]
        rest = val[P3] * val[P4] if pair == 2 else val[P1] * val[P2]
        val[rel[u]] = poly_div_exact(val[X] * val[Y] - rest, val[partner])
    return True


def tilting_characters(T: ClusterTiltingObject) -> Dict[Tuple[int, int], LaurentPoly]:
    """Every pair as a Laurent polynomial in the summands.

    Mesh exchanges ζ(i,j)ζ(i+1,j+1) = ζ(i,j+1)ζ(i+1,j) + ζ(i,i+1)ζ(j,j+1) are used
    while they make progress; the general exchange for crossing pairs takes over
    when they stall (they do, e.g. around an internal triangle).
    """
    n = T.n
    val = {p: LaurentPoly.var(i + 1) for i, p in enumerate(sorted(T.summands))}
    total = n * (n - 1) // 2
    mesh, rest = _exchanges(n)
    while len(val) < total:
        if any(_solve(rel, val) for rel in mesh):
            continue
        if not any(_solve(rel, val) for rel in rest):
            raise InvalidTilting("exchange propagation did not reach every pair")
    return val


def frieze_of_tilting(T: ClusterTiltingObject) -> FriezeGrid:
    chars = tilting_characters(T)
    ones = {i + 1: 1 for i in range(len(T.summands))}
    return _pair_grid(T.n, lambda p: poly_eval(chars[p], ones))


def _crossed_string(T: ClusterTiltingObject, m: Tuple[int, int]) -> List[Arc]:
    """Diagonals of T crossed by m, ordered from endpoint m[0] to m[1]."""
    a, b = m
    hit = [Arc(*d) for d in T.diagonals() if crossing(Arc(*d), Arc(a, b))]

    # regions on a's side are nested, so count the vertices there
    def side(d):
        inside = d.a < a < d.b
        return sum(1 for v in range(1, T.n + 1) if v not in (d.a, d.b) and (d.a < v < d.b) == inside)
    return sorted(hit, key=side)


def submodule_count(T: ClusterTiltingObject, m: Tuple[int, int]) -> int:
    m = _pair(*m, T.n)
    if m in T.summands:
        raise SummandHasNoModule(f"{m} is a summand of the tilting object")
    string = _crossed_string(T, m)
    if not string:
        raise SummandHasNoModule(f"{m} crosses no diagonal")
    arrows = set(quiver_of(T.triangulation()).arrows)
    ids = [arc_id(d) for d in string]
    # closed subsets of the string: x in S and x -> y force y in S
    count = 0
    L = len(ids)
    for mask in range(1 << L):
        ok = True
        for p in range(L - 1):
            x, y = ids[p], ids[p + 1]
            inx, iny = mask >> p & 1, mask >> (p + 1) & 1
            if (x, y) in arrows and inx and not iny:
                ok = False
            elif (y, x) in arrows and iny and not inx:
                ok = False
            elif (x, y) not in arrows and (y, x) not in arrows:
                raise InvalidTilting(f"no arrow between {x} and {y}")
            if not ok:
                break
        count += ok
    return count


def submodule_grid(T: ClusterTiltingObject) -> FriezeGrid:
    return _pair_grid(T.n, lambda p: 1 if p in T.summands else submodule_count(T, p))


# cutting -----------------------------------------------------------------


@dataclass
class CutResult:
    left: FriezeGrid
    right: FriezeGrid
    left_vertices: List[int]
    right_vertices: List[int]
    coefficient: bool


def iy_cut(T: Triangulation, d: Arc) -> CutResult:
    n = T.n
    if not isinstance(d, Arc):
        d = Arc(*d)
    if d.is_boundary(n) or not (1 <= d.a and d.b <= n):
        raise NotADiagonal(f"{d} is not a diagonal of the {n}-gon")
    F = frieze_of(T)

    def m(u, v):
        # t(i, i+e) is the value on (i, i+e+1)
        if u == v:
            return 0
        e = (v - u) % n
        return F.t(u % n, u % n + e - 1)

    a, b = d.a, d.b
    left = list(range(a, b + 1))
    right = list(range(b, n + 1)) + list(range(1, a + 1))
    coeff = m(a, b) != 1

    def sub(vs):
        s = len(vs)
        w = s - 3
        rows = {-1: [0] * s, w + 2: [0] * s}
        for e in range(0, w + 2):
            # column 0 is the last vertex, as in the full frieze
            rows[e] = [m(vs[(i - 1) % s], vs[(i + e) % s]) for i in range(s)]
        return FriezeGrid(2, w, rows, coefficient=coeff)

    return CutResult(sub(left), sub(right), left, right, coeff)
