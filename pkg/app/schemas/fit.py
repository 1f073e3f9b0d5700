"""
app/schemas/fit.py

Esquemas del ajuste: observaciones de resonancia, calibración de flujo y
resultado del ajuste.
"""
import math
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator, model_validator
from scipy import constants

from app.schemas.model import ModelParams

BiasKind = Literal["epsilon", "nphi"]


class ResonanceObservation(BaseModel):
    """Frecuencia de resonancia medida para la transición i → j a un sesgo dado"""
    model_config = ConfigDict(frozen=True)

    bias: float = Field(..., allow_inf_nan=False, description="ε directo o flujo normalizado n_φ")
    bias_kind: BiasKind = Field("epsilon", description="Interpretación de bias")
    transition: Tuple[int, int]
    frequency: float = Field(..., gt=0, allow_inf_nan=False, description="ω_ij medida")
    weight: float = Field(1.0, gt=0, allow_inf_nan=False, description="Peso en la suma de cuadrados")

    @field_validator("transition")
    @classmethod
    def validate_transition(cls, v: Tuple[int, int]) -> Tuple[int, int]:
        i, j = v
        if not 0 <= i < j:
            raise ValueError(f"transition {i}-{j} must satisfy 0 <= i < j")
        return v


class FluxCalibration(BaseModel):
    """
    Conversión flujo → sesgo ε = 2·I_p·Φ₀·(n_φ − n_φ0).
    El producto ip·flux_quantum debe estar en las unidades de frecuencia del ajuste.
    """
    model_config = ConfigDict(frozen=True)

    ip: float = Field(..., gt=0, allow_inf_nan=False, description="Corriente persistente I_p")
    flux_quantum: float = Field(1.0, gt=0, allow_inf_nan=False, description="Cuanto de flujo Φ₀")
    n_phi0: Optional[float] = Field(None, description="Punto de simetría fijo (semientero); None = el más cercano")

    @field_validator("n_phi0")
    @classmethod
    def validate_half_integer(cls, v: Optional[float]) -> Optional[float]:
        if v is not None and abs((v - 0.5) - round(v - 0.5)) > 1e-9:
            raise ValueError("n_phi0 - 0.5 must be an integer")
        return v

    @classmethod
    def from_si(
        cls, ip_amperes: float, n_phi0: Optional[float] = None, unit_hz: float = 1e9
    ) -> "FluxCalibration":
        """Calibración con I_p en amperios y ε en unidades de unit_hz (GHz por defecto)"""
        flux_quantum = constants.physical_constants["mag. flux quantum"][0]
        return cls(ip=ip_amperes, flux_quantum=flux_quantum / (constants.h * unit_hz), n_phi0=n_phi0)


class FitResult(BaseModel):
    """
    Resultado del ajuste de (Δ, ω, g).

    `params` lleva ε = 0 porque el ajuste no estima el sesgo (cada observación
    trae el suyo); al serializar se omite epsilon.
    """
    model_config = ConfigDict(frozen=True)

    params: ModelParams
    residual_rms: float = Field(..., ge=0)
    per_observation_residuals: List[float] = Field(default_factory=list)
    iterations: int = Field(..., ge=0)
    evaluations: int = Field(0, ge=0)
    restarts: int = Field(0, ge=0)
    converged: bool
    message: str = ""

    @model_validator(mode="after")
    def check_finite(self) -> "FitResult":
        if not math.isfinite(self.residual_rms):
            raise ValueError("residual_rms must be finite")
        return self

    @field_serializer("params")
    def serialize_params(self, params: ModelParams) -> Dict[str, Any]:
        return params.model_dump(exclude={"epsilon"})
