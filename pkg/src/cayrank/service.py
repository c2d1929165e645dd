"""FastAPI service wrapping the exact-rank engine.

Stateless compute endpoints; every response is one of the documented
pydantic models.  Domain errors map to 400 (bad input text or config) or
422 (well-formed input that fails a mathematical precondition), with the
machine-readable error code in the body."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__
from .errors import (
    CayrankError,
    ConfigError,
    GroupMismatchError,
    RankUnsupported,
    WordSyntaxError,
)
from .handlers import (
    handle_check_quadruple,
    handle_commutator_rank,
    handle_expand,
    handle_hankel,
    handle_profile,
)
from .schemas import (
    CommutatorRankRequest,
    CommutatorRankResponse,
    ErrorResponse,
    ExpandRequest,
    ExpandResponse,
    HankelRequest,
    HankelResponse,
    ProfileRequest,
    ProfileResponse,
    QuadrupleRequest,
    QuadrupleResponse,
)

_BAD_REQUEST = (WordSyntaxError, ConfigError, GroupMismatchError, RankUnsupported)

app = FastAPI(
    title="cayrank",
    version=__version__,
    description=(
        "Exact commutation-defect ranks on the Cayley tree of a free group: "
        "quadruple criterion reports, windowed rank profiles of coefficient "
        "streams, a Hankel-rank oracle, and rational-expression expansion."
    ),
)


@app.exception_handler(CayrankError)
async def _domain_error(request: Request, exc: CayrankError):
    status = 400 if isinstance(exc, _BAD_REQUEST) else 422
    payload = ErrorResponse(error={"code": exc.code, "message": str(exc)})
    return JSONResponse(status_code=status, content=payload.model_dump())


@app.get("/healthz")
def healthz():
    return {"status": "ok", "version": __version__}


@app.post("/commutator-rank", response_model=CommutatorRankResponse,
          responses={400: {"model": ErrorResponse}, 422: {"model": ErrorResponse}})
def commutator_rank(req: CommutatorRankRequest):
    return handle_commutator_rank(req)


@app.post("/check-quadruple", response_model=QuadrupleResponse,
          responses={400: {"model": ErrorResponse}, 422: {"model": ErrorResponse}})
def check_quadruple(req: QuadrupleRequest):
    return handle_check_quadruple(req)


@app.post("/profile", response_model=ProfileResponse,
          responses={400: {"model": ErrorResponse}, 422: {"model": ErrorResponse}})
def profile(req: ProfileRequest):
    return handle_profile(req)


@app.post("/hankel", response_model=HankelResponse,
          responses={400: {"model": ErrorResponse}, 422: {"model": ErrorResponse}})
def hankel(req: HankelRequest):
    return handle_hankel(req)


@app.post("/expand", response_model=ExpandResponse,
          responses={400: {"model": ErrorResponse}, 422: {"model": ErrorResponse}})
def expand(req: ExpandRequest):
    return handle_expand(req)
