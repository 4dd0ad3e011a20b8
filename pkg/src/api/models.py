"""
API models for request/response validation
"""
from pydantic import BaseModel, Field
from typing import List, Dict, Optional, Any


class PotentialRequest(BaseModel):
    """Base request carrying a potential in the source grammar"""
    source: str = Field(..., description="Potential source text (domain/floor/piece/jump lines)")
    floor_margin: Optional[float] = Field(default=None, description="eps0 override when the source has no floor line")


class DeterminantRequest(PotentialRequest):
    """Request model for a single determinant"""
    n: int = Field(..., ge=1, description="Matrix size")
    epsilon: float = Field(default=1.0, description="Index shift")
    sign: int = Field(default=-1, description="Off-diagonal sign, -1 or +1")


class DeterminantResponse(BaseModel):
    """Response model for a single determinant"""
    n: int
    epsilon: float
    log_det: float
    ratio: float
    log_G: float
    min_minor_ratio: float


class JumpInfo(BaseModel):
    """Correction factors of one jump"""
    c: float
    side: str
    beta: float
    gamma: float


class PredictRequest(PotentialRequest):
    """Request model for closed-form predictions"""
    epsilon: float = Field(default=1.0, description="Index shift (must be 1 with jumps)")
    n: Optional[int] = Field(default=None, ge=1, description="Also evaluate the prediction at this n")


class PredictResponse(BaseModel):
    """Response model for closed-form predictions"""
    G: float
    log_G: float
    alpha: float
    jumps: List[JumpInfo]
    limsup: float
    liminf: float
    extrapolated: bool
    prediction: Optional[float] = None


class SweepRequest(PotentialRequest):
    """Request model for an n-sweep"""
    n: str = Field(default="10..200", description="n set: '10..200', '10..3000 step 23' or '1, 2, 5'")
    epsilon: float = Field(default=1.0, description="Index shift")
    fit: bool = Field(default=False, description="Also fit the error law")


class SweepRecordModel(BaseModel):
    """One sweep row"""
    n: int
    ratio: float
    prediction: float
    error: float


class SweepResponse(BaseModel):
    """Response model for an n-sweep"""
    records: List[SweepRecordModel]
    fit: Optional[Dict[str, Any]] = None


class KmsRequest(PotentialRequest):
    """Request model for the trace check"""
    n: int = Field(..., ge=1, description="Matrix size")
    phi: str = Field(default="2", description="Power 1..4 or 'log'")
    epsilon: float = Field(default=1.0, description="Index shift")


class KmsResponse(BaseModel):
    """Response model for the trace check"""
    n: int
    phi: str
    lhs: float
    rhs: float
    gap: float


class HealthResponse(BaseModel):
    """Health check response"""
    status: str
    components: Dict[str, str]
