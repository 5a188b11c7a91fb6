"""Seed mutation over exact Laurent polynomials and breadth-first exploration.

Matrices follow the convention b_ij > 0 <=> b_ij arrows i -> j.  Row index i
runs over all M vertices (mutable first, then frozen); column index j over the
N mutable ones.  Mutation directions are 1-based in the public functions.
"""

from __future__ import annotations

import json
import sys
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import (
    BoundExceeded,
    FrozenDirection,
    InexactDivision,
    LaurentViolation,
    LoopOrTwoCycle,
    ParseError,
    UnknownCluster,
)
from .exactalg import LaurentPoly, poly_div_exact, poly_eval
from .polygon import Quiver

Matrix = List[List[int]]


def _check_dir(B: Matrix, k: int) -> int:
    N = len(B[0]) if B else 0
    if not 1 <= k <= N:
        raise FrozenDirection(f"direction {k} is not mutable (1..{N})", k=k)
    return k - 1


def mutate_matrix(B: Matrix, k: int) -> Matrix:
    kk = _check_dir(B, k)
    out = []
    for i, row in enumerate(B):
        new = []
        for j, b in enumerate(row):
            if i == kk or j == kk:
                new.append(-b)
            else:
                bik, bkj = row[kk], B[kk][j]
                p = bik * bkj
                if p > 0:
                    new.append(b + (p if bik > 0 else -p))
                else:
                    new.append(b)
        out.append(new)
    return out


def is_skew_symmetric_top(B: Matrix) -> bool:
    N = len(B[0]) if B else 0
    return all(B[i][j] == -B[j][i] for i in range(N) for j in range(N))


@dataclass
class Seed:
    B: Matrix
    vars: List[LaurentPoly]
    names: List[str]

    @property
    def n_mutable(self) -> int:
        return len(self.B[0]) if self.B else 0

    @classmethod
    def initial(cls, B: Matrix, names: Optional[Sequence[str]] = None) -> "Seed":
        M = len(B)
        names = list(names) if names else [f"x{i + 1}" for i in range(M)]
        return cls([list(r) for r in B], [LaurentPoly.var(i + 1) for i in range(M)], names)

    def mutable_vars(self) -> List[LaurentPoly]:
        return self.vars[: self.n_mutable]

    def cluster_key(self) -> FrozenSet[LaurentPoly]:
        return frozenset(self.mutable_vars())

    def namer(self):
        return lambda i: self.names[i - 1]

    def to_json_obj(self) -> dict:
        return {"B": self.B, "n_mutable": self.n_mutable, "var_names": self.names}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Seed":
        B = obj["B"]
        N = obj.get("n_mutable", len(B[0]) if B else 0)
        if any(len(r) != N for r in B):
            raise ParseError("every row of B needs n_mutable entries")
        if not is_skew_symmetric_top(B):
            raise ParseError("the mutable block of B is not skew-symmetric")
        return cls.initial(B, obj.get("var_names"))


def exchange_binomial(B: Matrix, xs: Sequence[LaurentPoly], kk: int) -> LaurentPoly:
    plus = LaurentPoly.const(1)
    minus = LaurentPoly.const(1)
    for i, row in enumerate(B):
        b = row[kk]
        if b > 0:
            plus = plus * xs[i] ** b
        elif b < 0:
            minus = minus * xs[i] ** (-b)
    return plus + minus


def mutate_seed(S: Seed, k: int) -> Seed:
    kk = _check_dir(S.B, k)
    num = exchange_binomial(S.B, S.vars, kk)
    try:
        new = poly_div_exact(num, S.vars[kk])
    except InexactDivision as e:
        raise LaurentViolation(f"exchange at {k} is not a Laurent polynomial") from e
    xs = list(S.vars)
    xs[kk] = new
    return Seed(mutate_matrix(S.B, k), xs, S.names)


def mutate_path(S: Seed, path: Sequence[int]) -> Seed:
    for k in path:
        S = mutate_seed(S, k)
    return S


# quivers <-> matrices ------------------------------------------------------


def quiver_to_matrix(Q: Quiver) -> Tuple[Matrix, List[object]]:
    order = Q.mutable() + Q.frozen()
    pos = {v: i for i, v in enumerate(order)}
    N = len(Q.mutable())
    M = len(order)
    full = [[0] * M for _ in range(M)]
    seen = set()
    for s, t in Q.arrows:
        if s == t:
            raise LoopOrTwoCycle(f"loop at {s}")
        if (t, s) in seen:
            raise LoopOrTwoCycle(f"2-cycle between {s} and {t}")
        seen.add((s, t))
        full[pos[s]][pos[t]] += 1
        full[pos[t]][pos[s]] -= 1
    return [row[:N] for row in full], order


def matrix_to_quiver(B: Matrix, ids: Optional[Sequence[object]] = None) -> Quiver:
    M = len(B)
    N = len(B[0]) if B else 0
    ids = list(ids) if ids else list(range(1, M + 1))
    arrows = []
    for i in range(M):
        for j in range(min(i, N)):
            b = B[i][j]
            pair = (ids[i], ids[j]) if b > 0 else (ids[j], ids[i])
            arrows.extend([pair] * abs(b))
    return Quiver([(v, i >= N) for i, v in enumerate(ids)], arrows)


# exploration ---------------------------------------------------------------


@dataclass
class MutationGraph:
    seeds: List[Seed]
    keys: List[FrozenSet[LaurentPoly]]
    parent: List[Optional[Tuple[int, int]]]
    edges: Dict[int, Dict[int, int]] = field(default_factory=dict)

    @property
    def clusters(self) -> List[FrozenSet[LaurentPoly]]:
        return self.keys

    @property
    def variables(self) -> List[LaurentPoly]:
        seen = {}
        for S in self.seeds:
            for x in S.mutable_vars():
                seen.setdefault(x, None)
        return list(seen)

    @property
    def frozen(self) -> List[LaurentPoly]:
        S = self.seeds[0]
        return S.vars[S.n_mutable:]

    def cluster_id(self, cluster) -> int:
        if isinstance(cluster, int):
            if 0 <= cluster < len(self.keys):
                return cluster
            raise UnknownCluster(f"no cluster with id {cluster}")
        key = frozenset(cluster)
        for i, c in enumerate(self.keys):
            if c == key:
                return i
        raise UnknownCluster("cluster not present in the graph")

    def path_to(self, cid: int) -> List[int]:
        path = []
        while self.parent[cid] is not None:
            prev, k = self.parent[cid]
            path.append(k)
            cid = prev
        return path[::-1]

    def adjacency(self) -> Dict[int, List[int]]:
        return {c: sorted(set(nb.values())) for c, nb in self.edges.items()}


def explore(S0: Seed, max_seeds: int = 10 ** 6, progress=None) -> MutationGraph:
    index = {S0.cluster_key(): 0}
    G = MutationGraph([S0], [S0.cluster_key()], [None], {0: {}})
    queue = deque([0])
    N = S0.n_mutable
    while queue:
        cid = queue.popleft()
        S = G.seeds[cid]
        for k in range(1, N + 1):
            if k in G.edges[cid]:
                continue
            T = mutate_seed(S, k)
            key = T.cluster_key()
            tid = index.get(key)
            if tid is None:
                if len(G.seeds) >= max_seeds:
                    raise BoundExceeded(f"more than {max_seeds} clusters")
                tid = len(G.seeds)
                index[key] = tid
                G.seeds.append(T)
                G.keys.append(key)
                G.parent.append((cid, k))
                G.edges[tid] = {}
                queue.append(tid)
                if progress and tid % 1000 == 0:
                    progress(f"{tid} clusters")
            G.edges[cid][k] = tid
            back = _back_direction(G.seeds[tid], S, k)
            if back is not None:
                G.edges[tid][back] = cid
    return G


def _back_direction(T: Seed, S: Seed, k: int) -> Optional[int]:
    """Direction in T's labelling that leads back to S."""
    lost = set(T.mutable_vars()) - set(S.mutable_vars())
    if len(lost) != 1:
        return None
    x = lost.pop()
    return T.mutable_vars().index(x) + 1


def specialization_values(G: MutationGraph, cluster) -> Dict[int, Fraction]:
    """Values of the initial variables once the chosen cluster and all frozens are 1."""
    cid = G.cluster_id(cluster)
    path = G.path_to(cid)
    S = G.seeds[cid]
    B = [list(r) for r in S.B]
    vals = [Fraction(1)] * len(B)
    for k in reversed(path):
        kk = k - 1
        plus = minus = Fraction(1)
        for i, row in enumerate(B):
            b = row[kk]
            if b > 0:
                plus *= vals[i] ** b
            elif b < 0:
                minus *= vals[i] ** (-b)
        vals[kk] = (plus + minus) / vals[kk]
        B = mutate_matrix(B, k)
    return {i + 1: v for i, v in enumerate(vals)}


def specialize_cluster_to_one(G: MutationGraph, cluster) -> Dict[LaurentPoly, object]:
    init = specialization_values(G, cluster)
    out = {}
    for x in G.variables + G.frozen:
        out[x] = poly_eval(x, init)
    return out


# builtin seeds -------------------------------------------------------------


def a_linear(m: int) -> Seed:
    B = [[0] * m for _ in range(m)]
    for i in range(m - 1):
        B[i][i + 1] = 1
        B[i + 1][i] = -1
    return Seed.initial(B)


def load_seed_file(path: str) -> Seed:
    with open(path) as fh:
        return Seed.from_json_obj(json.load(fh))


def builtin_seed(name: str) -> Seed:
    if name == "a2":
        return a_linear(2)
    if name == "a3":
        return a_linear(3)
    if name in ("gr26", "gr36", "gr37", "gr38"):
        text = resources.files("frieze").joinpath("data", f"{name}.json").read_text()
        return Seed.from_json_obj(json.loads(text))
    raise ParseError(f"unknown builtin seed {name!r}")
