"""
FastAPI application for the determinant toolkit
"""
from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from contextlib import asynccontextmanager
from dataclasses import asdict
import logging

import numpy as np

from config import get_settings
from src.asymptotics import envelope, geometric_mean_log, predict
from src.exceptions import NumericalError, ValidationError
from src.experiments import fit_power_law, kms_check, parse_n_set, sweep_potential
from src.matrix import build, det_log
from src.potential import parse_potential
from .models import (
    DeterminantRequest, DeterminantResponse,
    PredictRequest, PredictResponse, JumpInfo,
    SweepRequest, SweepResponse, SweepRecordModel,
    KmsRequest, KmsResponse,
    HealthResponse,
)


# Setup logging
settings = get_settings()
logging.basicConfig(
    level=getattr(logging, settings.log_level.upper(), logging.INFO),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

MAX_SWEEP_POINTS = 2000


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Application lifecycle management"""
    logger.info("Starting determinant toolkit service")
    yield
    logger.info("Shutting down determinant toolkit service")


# Create FastAPI app
app = FastAPI(
    title="Schrödinger Determinant Toolkit",
    description="Determinants of discrete Schrödinger matrices, their asymptotics and spectral checks",
    version="1.0.0",
    lifespan=lifespan
)

# Add CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


def _raise_http(e: Exception, what: str):
    """Map toolkit errors onto HTTP status codes"""
    if isinstance(e, ValidationError):
        logger.warning(f"{what} rejected: {e}")
        raise HTTPException(status_code=422, detail=str(e))
    logger.error(f"{what} error: {str(e)}")
    raise HTTPException(status_code=500, detail=str(e))


# ==================== Health Check ====================
@app.get("/health", response_model=HealthResponse)
async def health_check():
    """Health check endpoint"""
    components = {"numpy": np.__version__, "eigen_cap": str(settings.eigen_cap)}
    return HealthResponse(status="healthy", components=components)


# ==================== Determinant Endpoints ====================
@app.post("/det", response_model=DeterminantResponse)
def determinant(request: DeterminantRequest):
    """Compute log det T_n(f; eps) and D_n / G^n"""
    try:
        f = parse_potential(request.source, floor_margin=request.floor_margin)
        g_log = geometric_mean_log(f)
        result = det_log(build(f, request.n, request.epsilon, request.sign), g_log)
        return DeterminantResponse(
            n=request.n,
            epsilon=request.epsilon,
            log_det=result.log_det,
            ratio=result.ratio,
            log_G=g_log,
            min_minor_ratio=result.min_minor_ratio,
        )
    except (ValidationError, NumericalError) as e:
        _raise_http(e, "Determinant")


@app.post("/predict", response_model=PredictResponse)
def prediction(request: PredictRequest):
    """G(f), alpha, jump parameters and the envelope"""
    try:
        f = parse_potential(request.source, floor_margin=request.floor_margin)
        p = predict(f, request.epsilon)
        env = envelope(p)
        return PredictResponse(
            G=p.G,
            log_G=p.G_log,
            alpha=p.alpha,
            jumps=[JumpInfo(c=j.c, side=j.side.value, beta=j.beta, gamma=j.gamma) for j in p.jumps],
            limsup=env.limsup,
            liminf=env.liminf,
            extrapolated=env.extrapolated,
            prediction=p.prediction(request.n) if request.n else None,
        )
    except (ValidationError, NumericalError) as e:
        _raise_http(e, "Prediction")


@app.post("/sweep", response_model=SweepResponse)
def sweep(request: SweepRequest):
    """D_n / G^n against the prediction over an n set"""
    try:
        f = parse_potential(request.source, floor_margin=request.floor_margin)
        ns = parse_n_set(request.n)
        if len(ns) > MAX_SWEEP_POINTS:
            raise ValidationError(f"at most {MAX_SWEEP_POINTS} sizes per request, got {len(ns)}")
        records = sweep_potential(f, ns, request.epsilon, workers=1)
        fit = None
        if request.fit:
            result = fit_power_law(records)
            fit = {**asdict(result), "best_model": result.best_model}
        return SweepResponse(records=[SweepRecordModel(**asdict(r)) for r in records], fit=fit)
    except (ValidationError, NumericalError) as e:
        _raise_http(e, "Sweep")


@app.post("/kms", response_model=KmsResponse)
def trace_check(request: KmsRequest):
    """Tr phi(T_n)/n against the symbol integral"""
    try:
        f = parse_potential(request.source, floor_margin=request.floor_margin)
        result = kms_check(f, request.n, request.phi, request.epsilon)
        return KmsResponse(n=request.n, phi=request.phi, **result._asdict())
    except (ValidationError, NumericalError) as e:
        _raise_http(e, "Trace check")


# ==================== System Endpoints ====================
@app.get("/system/config")
async def get_system_config():
    """Get system configuration"""
    return {
        "floor_margin": settings.floor_margin,
        "default_domain": [settings.default_domain_lo, settings.default_domain_hi],
        "quad_tol": settings.quad_tol,
        "quad_max_depth": settings.quad_max_depth,
        "trapezoid_nodes": settings.trapezoid_nodes,
        "eigen_cap": settings.eigen_cap,
        "eigen_tol": settings.eigen_tol,
        "sweep_workers": settings.sweep_workers,
    }


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host=settings.api_host, port=settings.api_port)
