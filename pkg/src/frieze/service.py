from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import api
from .errors import DomainError
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

app = FastAPI(title="frieze")


@app.exception_handler(DomainError)
async def domain_error(request: Request, exc: DomainError):
    body = {"error": exc.code, "message": str(exc), "detail": {k: str(v) for k, v in exc.detail.items()}}
    return JSONResponse(status_code=422, content=body)


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/quiddity", response_model=QuiddityResponse)
def quiddity(req: QuiddityRequest):
    return api.quiddity(req)


@app.post("/validate", response_model=ValidateResponse)
def validate(frieze: dict):
    return api.check(frieze)


@app.post("/enumerate", response_model=EnumerateResponse)
def enumerate_(req: EnumerateRequest):
    return api.enumerate_friezes(req)


@app.post("/mutate", response_model=MutateResponse)
def mutate(req: MutateRequest):
    return api.mutate(req)


@app.post("/halffrieze", response_model=HalfFriezeResponse)
def halffrieze(req: HalfFriezeRequest):
    return api.halffrieze(req)


@app.post("/pluecker-frieze", response_model=FriezeOut)
def pluecker_frieze(req: PlueckerRequest):
    return api.pluecker(req)


@app.post("/unitary-census", response_model=CensusResponse)
def unitary_census(req: CensusRequest):
    return api.census(req)
