"""FastAPI service exposing model checking, simulation and monotonicity endpoints."""
import logging
import os
from typing import Any, Dict, List, Optional

from fastapi import Depends, FastAPI, HTTPException
from fastapi.concurrency import run_in_threadpool
from fastapi.middleware.cors import CORSMiddleware
from fastapi.security import APIKeyHeader
from pydantic import BaseModel, Field

from mucoal import __version__
from mucoal.automata import accepts, dumps, simulate
from mucoal.bases import basis_for
from mucoal.config import Caps, default_caps
from mucoal.errors import CoverSearchError, MucoalError, ResourceError
from mucoal.frontend import ModelFile, compile_formula, parse, satisfies
from mucoal.functors import parse_functor
from mucoal.transforms import is_monotone

logger = logging.getLogger(__name__)

app = FastAPI(title="mucoal API", version=__version__)

# Configure CORS to allow frontend cross-origin requests
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# ============================================================================
# CONFIGURATION - Modify these values as needed
# ============================================================================

# API Security
API_KEY = None  # Set to a string to enable authentication, e.g., "your-secret-key-here"
API_KEY_HEADER_NAME = "X-API-Key"

# Server Configuration
SERVER_HOST = "127.0.0.1"  # Use "0.0.0.0" for all interfaces
SERVER_PORT = 8002

# ============================================================================
# END CONFIGURATION
# ============================================================================

# Override with environment variables if set
API_KEY = os.getenv("MUCOAL_API_KEY", API_KEY)
SERVER_HOST = os.getenv("MUCOAL_HOST", SERVER_HOST)
SERVER_PORT = int(os.getenv("MUCOAL_PORT", str(SERVER_PORT)))

_api_key_header = APIKeyHeader(name=API_KEY_HEADER_NAME, auto_error=False)


class CapsOverride(BaseModel):
    carrier: Optional[int] = Field(None, gt=0, description="Largest carrier enumerated.")
    multiplicity: Optional[int] = Field(None, gt=0, description="Bag multiplicity cap.")
    automaton_states: Optional[int] = Field(None, gt=0, description="Largest automaton built.")
    dpa_states: Optional[int] = Field(None, gt=0, description="Largest determinized trace automaton.")


class CheckRequest(BaseModel):
    formula: str = Field(..., description="Fixpoint formula in the concrete syntax.")
    model: ModelFile = Field(..., description="Pointed model in the JSON model format.")
    caps: Optional[CapsOverride] = None


class CheckResponse(BaseModel):
    game: bool
    fixpoint: bool
    agree: bool
    states: int
    rewritten: bool


class SimulateRequest(BaseModel):
    formula: str = Field(..., description="Fixpoint formula to compile and simulate.")
    functor: str = Field("powerset", description="Functor expression.")
    caps: Optional[CapsOverride] = None


class SimulateResponse(BaseModel):
    automaton: str
    states_before: int
    states_after: int


class MonotoneRequest(BaseModel):
    formula: str = Field(..., description="Fixpoint formula.")
    var: str = Field(..., description="Letter whose monotonicity is decided.")
    functor: str = Field("powerset", description="Functor expression.")
    mode: str = Field("enum", pattern="^(enum|empty|oracle)$")
    bound: int = Field(3, gt=0, le=4, description="Largest enumerated carrier.")
    caps: Optional[CapsOverride] = None


class MonotoneResponse(BaseModel):
    monotone: bool
    mode: str
    bounded: bool
    checked: int
    counterexample: Optional[List[Optional[Dict[str, Any]]]] = None


class UnauthorizedError(HTTPException):
    def __init__(self, detail: str = "Invalid or missing API key"):
        super().__init__(status_code=401, detail=detail)


def _caps(overrides: Optional[CapsOverride]) -> Caps:
    if overrides is None:
        return default_caps
    return default_caps(**overrides.model_dump(exclude_none=True))


def _http_error(exc: Exception) -> HTTPException:
    if isinstance(exc, (ResourceError, CoverSearchError)):
        return HTTPException(status_code=507, detail=str(exc))
    if isinstance(exc, NotImplementedError):
        return HTTPException(status_code=422, detail=str(exc))
    return HTTPException(status_code=400, detail=str(exc))


def _check_impl(req: CheckRequest) -> CheckResponse:
    caps = _caps(req.caps)
    model = req.model.to_model()
    formula = parse(req.formula)
    compiled = compile_formula(formula, model.functor, caps=caps)
    game = accepts(compiled.automaton, model, caps)
    fixpoint = satisfies(formula, model)
    if game != fixpoint:
        logger.error('acceptance game and fixpoint evaluation disagree on %s', req.formula)
    return CheckResponse(game=game, fixpoint=fixpoint, agree=game == fixpoint, states=compiled.states,
                         rewritten=compiled.rewritten)


def _simulate_impl(req: SimulateRequest) -> SimulateResponse:
    caps = _caps(req.caps)
    functor = parse_functor(req.functor)
    aut = compile_formula(parse(req.formula), functor, caps=caps).automaton
    out = simulate(aut, basis_for(functor), caps)
    return SimulateResponse(automaton=dumps(out), states_before=len(aut), states_after=len(out))


def _monotone_impl(req: MonotoneRequest) -> MonotoneResponse:
    caps = _caps(req.caps)
    functor = parse_functor(req.functor)
    aut = compile_formula(parse(req.formula), functor, caps=caps).automaton
    verdict = is_monotone(aut, req.var, req.mode, bound=req.bound, caps=caps)
    counterexample = None
    if verdict.counterexample is not None:
        counterexample = [None if m is None else ModelFile.from_model(m).model_dump() for m in verdict.counterexample]
    return MonotoneResponse(monotone=verdict.monotone, mode=verdict.mode, bounded=verdict.bounded,
                            checked=verdict.checked, counterexample=counterexample)


async def _run(fn, req):
    try:
        return await run_in_threadpool(fn, req)
    except (MucoalError, NotImplementedError, ValueError) as exc:
        logger.info('request failed: %s', exc)
        raise _http_error(exc) from exc


def _verify_api_key(provided_key: Optional[str] = Depends(_api_key_header)) -> None:
    """Verify API key if authentication is enabled."""
    if API_KEY is None:
        return  # Authentication disabled
    if not provided_key or provided_key != API_KEY:
        raise UnauthorizedError()


@app.post("/check", response_model=CheckResponse, dependencies=[Depends(_verify_api_key)])
async def check(req: CheckRequest) -> CheckResponse:
    return await _run(_check_impl, req)


@app.post("/simulate", response_model=SimulateResponse, dependencies=[Depends(_verify_api_key)])
async def simulate_endpoint(req: SimulateRequest) -> SimulateResponse:
    return await _run(_simulate_impl, req)


@app.post("/monotone", response_model=MonotoneResponse, dependencies=[Depends(_verify_api_key)])
async def monotone(req: MonotoneRequest) -> MonotoneResponse:
    return await _run(_monotone_impl, req)


@app.get("/health", dependencies=[Depends(_verify_api_key)])
def health() -> dict:
    return {"status": "ok", "version": __version__, "caps": vars(default_caps)}


if __name__ == "__main__":
    import uvicorn

    uvicorn.run(app, host=SERVER_HOST, port=SERVER_PORT)
