from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field

Cell = Union[int, str, None]


class FriezeOut(BaseModel):
    k: int
    w: int
    n: int
    rows: List[List[Cell]]
    text: Optional[str] = None


class QuiddityRequest(BaseModel):
    quiddity: List[int] = Field(min_length=1)


class QuiddityResponse(BaseModel):
    frieze: FriezeOut
    triangulation: Optional[List[List[int]]] = None


class EnumerateRequest(BaseModel):
    kind: Literal["cc", "sl3", "mesh", "unitary"]
    n: Optional[int] = None
    k: Optional[int] = None
    w: Optional[int] = None
    type: Optional[str] = None
    bound: Optional[int] = None
    count_only: bool = False
    allow_long: bool = False
    threads: int = 1


class EnumerateResponse(BaseModel):
    kind: str
    count: int
    report: Dict[str, object] = {}
    friezes: Optional[List[FriezeOut]] = None
    mesh_friezes: Optional[List[Dict[str, int]]] = None


class MutateRequest(BaseModel):
    seed: str = "a2"
    seed_json: Optional[dict] = None
    path: List[int] = []
    graph: bool = False


class MutateResponse(BaseModel):
    cluster: List[str]
    frozen: List[str]
    B: List[List[int]]
    var_names: List[str]
    adjacency: Optional[Dict[int, List[int]]] = None
    clusters: Optional[List[List[str]]] = None


class HalfFriezeRequest(BaseModel):
    spec: str
    depth: int = Field(ge=1)
    diagonal: Optional[str] = None


class HalfFriezeResponse(BaseModel):
    window: List[int]
    fountain: int
    depth: int
    quiddity: Dict[str, int]
    rows: List[List[List[Optional[int]]]]
    text: str
    diagonal_bits: Optional[List[int]] = None


class PlueckerRequest(BaseModel):
    k: int
    n: int
    specialize: bool = False


class CensusRequest(BaseModel):
    k: int
    n: int
    allow_long: bool = False


class CensusResponse(BaseModel):
    clusters: int
    distinct_friezes: int


class ValidateResponse(BaseModel):
    ok: bool
    boundary_ok: bool
    frieze_ok: bool
    tame_ok: bool
    positivity_ok: Optional[bool]
    failures: List[Dict[str, object]]


class ErrorOut(BaseModel):
    error: str
    message: str
    detail: Dict[str, object] = {}
