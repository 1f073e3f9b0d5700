# app/schemas/__init__.py
"""
Módulo de esquemas Pydantic del toolkit.
Exporta todos los esquemas para fácil importación.
"""

from app.schemas.model import ModelParams, TruncationConfig, EigenSystem
from app.schemas.analytic import BoundarySet, DisplacedState
from app.schemas.response import (
    ProbeConfig,
    ThermalConfig,
    EpsilonSweep,
    SpectrumGrid,
    TransitionPoint,
    TransitionLine,
)
from app.schemas.regimes import LineShapeFeature, NearBoundary, RegimeReport, HigherLevelPattern
from app.schemas.fit import ResonanceObservation, FluxCalibration, FitResult
from app.schemas.responses import RunManifest, ErrorResponse, VerifyCheck, VerifyReport

__all__ = [
    "ModelParams",
    "TruncationConfig",
    "EigenSystem",
    "BoundarySet",
    "DisplacedState",
    "ProbeConfig",
    "ThermalConfig",
    "EpsilonSweep",
    "SpectrumGrid",
    "TransitionPoint",
    "TransitionLine",
    "LineShapeFeature",
    "NearBoundary",
    "RegimeReport",
    "HigherLevelPattern",
    "ResonanceObservation",
    "FluxCalibration",
    "FitResult",
    "RunManifest",
    "ErrorResponse",
    "VerifyCheck",
    "VerifyReport",
]
