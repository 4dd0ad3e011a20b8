from .models import (
    PotentialRequest,
    DeterminantRequest,
    DeterminantResponse,
    PredictRequest,
    PredictResponse,
    JumpInfo,
    SweepRequest,
    SweepResponse,
    SweepRecordModel,
    KmsRequest,
    KmsResponse,
    HealthResponse
)

__all__ = [
    "PotentialRequest",
    "DeterminantRequest",
    "DeterminantResponse",
    "PredictRequest",
    "PredictResponse",
    "JumpInfo",
    "SweepRequest",
    "SweepResponse",
    "SweepRecordModel",
    "KmsRequest",
    "KmsResponse",
    "HealthResponse"
]
