"""Request handlers shared by the HTTP service and the command line."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional

from .clustermut import Seed, builtin_seed, explore, mutate_path
from .errors import ParseError, UnsupportedSize
from .exactalg import to_fraction_text
from .friezegrid import FriezeGrid, enumerate_slk_grid, frieze_from_quiddity, validate
from .grassmann import pluecker_frieze_grid, unitary_census
from .infgon import half_frieze, parse_spec, penrose_diagonal
from .meshcat import dynkin_translation_quiver, mesh_frieze_census, mesh_frieze_enumerate
from .polygon import enumerate_triangulations, frieze_of, triangulation_of
from .schemas import (
    CensusRequest,
    CensusResponse,
    EnumerateRequest,
    EnumerateResponse,
    FriezeOut,
    HalfFriezeRequest,
    HalfFriezeResponse,
    MutateRequest,
    MutateResponse,
    PlueckerRequest,
    QuiddityRequest,
    QuiddityResponse,
    ValidateResponse,
)

Progress = Optional[Callable[[str], None]]

CC_MAX_N = 14
SL_DEFAULT_BOUND = 32
MESH_SLOW = {"E8"}


def frieze_out(F: FriezeGrid, text: bool = True) -> FriezeOut:
    obj = F.to_json_obj()
    return FriezeOut(**obj, text=F.to_text() if text else None)


def frieze_in(obj: dict) -> FriezeGrid:
    rows = obj["rows"]
    parsed = [[Fraction(x) if isinstance(x, str) and "/" in x else x for x in r] for r in rows]
    return FriezeGrid.from_json_obj({**obj, "rows": parsed})


def quiddity(req: QuiddityRequest) -> QuiddityResponse:
    F = frieze_from_quiddity(req.quiddity)
    T = triangulation_of(F)
    return QuiddityResponse(frieze=frieze_out(F), triangulation=[d.as_list() for d in T.sorted_diagonals()])


def check(obj: dict) -> ValidateResponse:
    rep = validate(frieze_in(obj))
    return ValidateResponse(ok=rep.ok, **rep.as_dict())


def _need(value, name: str):
    if value is None:
        raise ParseError(f"--{name} is required for this kind")
    return value


def enumerate_friezes(req: EnumerateRequest, progress: Progress = None) -> EnumerateResponse:
    # --threads is accepted for scripting; the search itself runs sequentially
    if req.kind == "cc":
        n = _need(req.n, "n")
        if not 3 <= n <= CC_MAX_N:
            raise UnsupportedSize(f"n must lie in 3..{CC_MAX_N}")
        Ts = enumerate_triangulations(n)
        if req.count_only:
            return EnumerateResponse(kind="cc", count=len(Ts))
        Fs = sorted((frieze_of(T) for T in Ts), key=lambda F: F.key())
        return EnumerateResponse(kind="cc", count=len(Fs), friezes=[frieze_out(F, False) for F in Fs])

    if req.kind == "sl3":
        k = req.k or 3
        if req.w is not None:
            w = req.w
        else:
            w = _need(req.n, "w") - k - 1
        if w < 1 or (k, w) not in ((2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (4, 1)) and not req.allow_long:
            raise UnsupportedSize(f"width {w} for k={k} is outside the supported range (use --allow-long)")
        bound = req.bound or SL_DEFAULT_BOUND
        r = enumerate_slk_grid(k, w, bound, progress)
        report = {"bound": r.bound, "pruned_by_bound": r.pruned_by_bound, "max_entry": r.max_entry, "nodes": r.nodes}
        friezes = None if req.count_only else [frieze_out(F, False) for F in r.friezes]
        return EnumerateResponse(kind="sl3", count=r.count, report=report, friezes=friezes)

    if req.kind == "mesh":
        name = _need(req.type, "type")
        if name in MESH_SLOW and not req.allow_long:
            raise UnsupportedSize(f"{name} takes hours; pass --allow-long to run it")
        Q = dynkin_translation_quiver(name)
        if req.bound:
            r = mesh_frieze_enumerate(Q, req.bound, progress=progress)
            history = [(req.bound, r.count)]
        else:
            r, history = mesh_frieze_census(Q, progress=progress)
        report = {**r.report(), "history": [list(h) for h in history]}
        del report["count"]
        mf = None if req.count_only else r.friezes
        return EnumerateResponse(kind="mesh", count=r.count, report=report, mesh_friezes=mf)

    k, n = _need(req.k, "k"), _need(req.n, "n")
    c = unitary_census(k, n, req.allow_long, progress)
    friezes = None if req.count_only else [frieze_out(F, False) for F in c.friezes]
    return EnumerateResponse(kind="unitary", count=c.distinct_friezes,
                             report={"clusters": c.clusters}, friezes=friezes)


def load_seed(name: str, obj: Optional[dict] = None) -> Seed:
    if obj is not None:
        return Seed.from_json_obj(obj)
    return builtin_seed(name)


def mutate(req: MutateRequest) -> MutateResponse:
    S0 = load_seed(req.seed, req.seed_json)
    # the path is written like a composition: the rightmost mutation comes first
    S = mutate_path(S0, list(reversed(req.path)))
    names = S0.namer()
    resp = MutateResponse(
        cluster=[to_fraction_text(x, names) for x in S.mutable_vars()],
        frozen=[to_fraction_text(x, names) for x in S.vars[S.n_mutable:]],
        B=S.B,
        var_names=S.names,
    )
    if req.graph:
        G = explore(S0)
        resp.adjacency = G.adjacency()
        resp.clusters = [[to_fraction_text(x, names) for x in s.mutable_vars()] for s in G.seeds]
    return resp


def halffrieze(req: HalfFriezeRequest) -> HalfFriezeResponse:
    T = parse_spec(req.spec)
    H = half_frieze(T, req.depth)
    obj = H.to_json_obj()
    bits = penrose_diagonal(H, req.diagonal) if req.diagonal else None
    return HalfFriezeResponse(**obj, text=H.to_text(), diagonal_bits=bits)


def pluecker(req: PlueckerRequest) -> FriezeOut:
    if not 2 <= req.k < req.n - 1:
        raise UnsupportedSize("need 2 <= k <= n - 2")
    return frieze_out(pluecker_frieze_grid(req.k, req.n, req.specialize))


def census(req: CensusRequest, progress: Progress = None) -> CensusResponse:
    c = unitary_census(req.k, req.n, req.allow_long, progress)
    return CensusResponse(clusters=c.clusters, distinct_friezes=c.distinct_friezes)
