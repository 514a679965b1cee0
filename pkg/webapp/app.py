"""
Interval DGLA - JSON Web API
FastAPI application exposing normal forms, the differential, flows and the verification suite
"""

import sys
from pathlib import Path

# Add src directory to path
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from fractions import Fraction
from typing import Dict, List, Optional

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel
import logging

from config_env import Config
from bernoulli import bernoulli_upto
from cli import CliConfig, _differential
from derivations import apply
from errors import ExpressionParseError, LieAlgebraError
from expression_parser import coefficient_text, element_to_records, monomial_record, parse_element
from flow import FlowProblem, curvature_along_flow, flow_closed_form, flow_residual
from lie_algebra import basis_enumerate
from structure_exporter import StructureExporter
from theorem_verifier import TheoremVerifier, VerificationSettings

# Configure logging
logging.basicConfig(
    level=getattr(logging, Config.LOG_LEVEL.upper()),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

# Initialize FastAPI app
app = FastAPI(
    title="Interval DGLA",
    description="Exact arithmetic in the free DGLA of the interval: normal forms, differential, flows and checks",
    version="1.0.0"
)


class ExpressionRequest(BaseModel):
    expr: str
    max_length: Optional[int] = None
    perturb_bernoulli: Dict[int, str] = {}


class FlowRequest(BaseModel):
    t: str = "1"
    v: str = "e"
    u0: str = "a"
    max_length: Optional[int] = None
    perturb_bernoulli: Dict[int, str] = {}


def _settings(max_length: Optional[int], perturb: Optional[Dict] = None) -> CliConfig:
    try:
        perturbations = tuple(sorted((int(i), Fraction(v)) for i, v in (perturb or {}).items()))
    except (ValueError, ZeroDivisionError) as e:
        raise LieAlgebraError(f"invalid Bernoulli perturbation: {e}") from None
    if any(i < 0 for i, _ in perturbations):
        raise LieAlgebraError("Bernoulli indices must be >= 0")
    cfg = CliConfig.from_env(max_length=max_length, output_format="json", perturbations=perturbations or None)
    if cfg.max_length > Config.APP_MAX_LENGTH:
        raise LieAlgebraError(f"max_length must be <= {Config.APP_MAX_LENGTH}, got {cfg.max_length}")
    return cfg


def _perturbation_query(values: Optional[List[str]]) -> Dict[str, str]:
    """["2=1/10"] -> {"2": "1/10"}; _settings checks the values"""
    perturb = {}
    for text in values or []:
        index, sep, value = text.partition("=")
        if not sep:
            raise LieAlgebraError(f"expected i=p/q, got {text!r}")
        perturb[index] = value
    return perturb


@app.exception_handler(LieAlgebraError)
async def lie_error_handler(request: Request, exc: LieAlgebraError):
    logger.error(f"Error processing {request.url.path}: {exc}")
    content = {"error": str(exc), "type": "error"}
    if isinstance(exc, ExpressionParseError):
        content["position"] = exc.position
    return JSONResponse(content=content, status_code=400)


@app.get("/health")
async def health():
    """Health check endpoint"""
    return {"status": "healthy", "service": "interval-dgla"}


@app.post("/normalize")
def normalize(request: ExpressionRequest):
    """Normal form of an expression"""
    cfg = _settings(request.max_length)
    x = parse_element(request.expr, cfg.context)
    return {"expr": request.expr, "max_length": cfg.max_length, "value": element_to_records(x),
            "text": x.to_expression()}


@app.post("/diff")
def diff(request: ExpressionRequest):
    """Apply the interval differential"""
    cfg = _settings(request.max_length, request.perturb_bernoulli)
    x = parse_element(request.expr, cfg.context)
    value = apply(_differential(cfg), x)
    return {"expr": request.expr, "max_length": cfg.max_length, "value": element_to_records(value),
            "text": value.to_expression()}


@app.post("/flow")
def flow(request: FlowRequest):
    """Flow state, ODE residual and curvature at time t"""
    cfg = _settings(request.max_length, request.perturb_bernoulli)
    try:
        t = Fraction(request.t)
    except (ValueError, ZeroDivisionError):
        raise LieAlgebraError(f"not a rational number: {request.t!r}") from None
    context = cfg.context
    problem = FlowProblem(
        parse_element(request.v, context), parse_element(request.u0, context), _differential(cfg), context
    )
    return {
        "t": coefficient_text(t),
        "u": element_to_records(flow_closed_form(problem, t)),
        "residual": element_to_records(flow_residual(problem, t)),
        "curvature": element_to_records(curvature_along_flow(problem, t)),
    }


@app.get("/verify")
def verify(max_length: Optional[int] = None, seed: Optional[int] = None,
           perturb_bernoulli: Optional[List[str]] = Query(None)):
    """Run the verification suite; perturb_bernoulli takes i=p/q pairs"""
    cfg = _settings(max_length, _perturbation_query(perturb_bernoulli))
    verification = Config.get_verification_config()
    settings = VerificationSettings(
        max_length=cfg.max_length,
        alphabet=cfg.alphabet,
        perturbations=cfg.perturbations,
        seed=verification["seed"] if seed is None else seed,
        flatness_samples=verification["flatness_samples"],
    )
    logger.info(f"Running verification at N={cfg.max_length}")
    return TheoremVerifier(settings).run().to_dict()


@app.get("/basis")
def basis(length: int, degree: int, max_length: Optional[int] = None):
    """Normal-form monomials of a given length and degree"""
    cfg = _settings(max_length)
    monomials = basis_enumerate(cfg.context, length, degree)
    return {"length": length, "degree": degree, "basis": [monomial_record(m, cfg.context) for m in monomials]}


@app.get("/bernoulli")
async def bernoulli(n: int):
    """Bernoulli numbers B_0..B_n"""
    if n < 0:
        raise LieAlgebraError(f"n must be >= 0, got {n}")
    return {"values": [coefficient_text(b) for b in bernoulli_upto(n)]}


@app.get("/export")
def export(max_length: Optional[int] = None):
    """Bracket table and differential table"""
    cfg = _settings(max_length)
    return StructureExporter(cfg.context, _differential(cfg)).export()


if __name__ == "__main__":
    import uvicorn
    logger.info(f"Starting server on {Config.APP_HOST}:{Config.APP_PORT}")
    uvicorn.run(app, host=Config.APP_HOST, port=Config.APP_PORT)
