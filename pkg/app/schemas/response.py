"""
app/schemas/response.py

Esquemas del modelo de respuesta: sonda, temperatura, barridos en ε,
rejillas de transmisión y trazas de líneas de transición.
"""
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator, model_validator

from app.schemas.model import ModelParams


class ProbeConfig(BaseModel):
    """Parámetros de la sonda: amplitud A_p, ancho Γ y reflexión máxima R₀"""
    model_config = ConfigDict(frozen=True)

    amplitude_ap: float = Field(2e-3, ge=0, allow_inf_nan=False, description="Amplitud de la sonda A_p")
    gamma: float = Field(3e-3, gt=0, allow_inf_nan=False, description="Tasa de decoherencia Γ")
    r0: float = Field(1.0, gt=0, le=1, description="Reflexión máxima R₀")
    gamma_overrides: Dict[str, float] = Field(
        default_factory=dict,
        description="Γ por transición, con claves 'i-j' (las demás usan gamma)",
    )

    @field_validator("gamma_overrides")
    @classmethod
    def validate_overrides(cls, v: Dict[str, float]) -> Dict[str, float]:
        for key, value in v.items():
            parts = key.split("-")
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise ValueError(f"gamma override key '{key}' must look like 'i-j'")
            if not value > 0:
                raise ValueError(f"gamma override for '{key}' must be > 0")
        return v

    def gamma_for(self, i: int, j: int) -> float:
        return self.gamma_overrides.get(f"{i}-{j}", self.gamma)


class ThermalConfig(BaseModel):
    """Temperatura k_BT (unidades de frecuencia) y niveles retenidos"""
    model_config = ConfigDict(frozen=True)

    kt: float = Field(0.0, ge=0, allow_inf_nan=False, description="Energía térmica k_BT")
    max_levels: int = Field(8, ge=2, description="Niveles retenidos en las sumas")
    population_floor: float = Field(1e-6, ge=0, lt=1, description="Poblaciones menores se anulan")


class EpsilonSweep(BaseModel):
    """Barrido en ε alrededor de una plantilla de parámetros (su ε se ignora)"""
    model_config = ConfigDict(frozen=True)

    template: ModelParams
    epsilons: List[float] = Field(..., min_length=1)

    @field_validator("epsilons")
    @classmethod
    def check_sorted(cls, v: List[float]) -> List[float]:
        if not all(np.isfinite(v)):
            raise ValueError("epsilon samples must be finite")
        if any(b < a for a, b in zip(v, v[1:])):
            raise ValueError("epsilon samples must be sorted ascending")
        return v

    def params_at(self, epsilon: float) -> ModelParams:
        return self.template.with_epsilon(epsilon)


class SpectrumGrid(BaseModel):
    """
    Transmisión T = 1 − R sobre la red (ε, ω_p).
    values tiene forma (len(epsilon_axis), len(probe_axis)).
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    epsilon_axis: np.ndarray
    probe_axis: np.ndarray
    values: np.ndarray
    template: ModelParams
    probe: ProbeConfig
    thermal: ThermalConfig
    clamped_points: int = Field(0, ge=0, description="Puntos donde la suma de reflexión se recortó a 1")

    @field_validator("epsilon_axis", "probe_axis", "values")
    @classmethod
    def freeze_array(cls, v: np.ndarray) -> np.ndarray:
        v = np.array(v, dtype=float)
        v.setflags(write=False)
        return v

    @model_validator(mode="after")
    def check_grid(self) -> "SpectrumGrid":
        shape = (len(self.epsilon_axis), len(self.probe_axis))
        if self.values.shape != shape:
            raise ValueError(f"values shape {self.values.shape} does not match axes {shape}")
        if np.any(self.values < 0) or np.any(self.values > 1):
            raise ValueError("transmission values must lie in [0, 1]")
        return self

    @field_serializer("epsilon_axis", "probe_axis", "values")
    def serialize_array(self, v: np.ndarray) -> List:
        return v.tolist()

    @property
    def shape(self) -> Tuple[int, int]:
        return self.values.shape


class TransitionPoint(BaseModel):
    """Muestra (ε, ω_ij, |⟨j|x|i⟩|)"""
    model_config = ConfigDict(frozen=True)

    epsilon: float
    frequency: float = Field(..., ge=0)
    matrix_element: float = Field(..., ge=0)


class TransitionLine(BaseModel):
    """Traza de la línea i → j en función de ε"""
    model_config = ConfigDict(frozen=True)

    from_level: int = Field(..., ge=0)
    to_level: int = Field(..., ge=1)
    points: List[TransitionPoint] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_line(self) -> "TransitionLine":
        if self.to_level <= self.from_level:
            raise ValueError("to_level must be greater than from_level")
        eps = [p.epsilon for p in self.points]
        if any(b < a for a, b in zip(eps, eps[1:])):
            raise ValueError("epsilon samples must be sorted")
        return self

    @property
    def label(self) -> str:
        return f"{self.from_level}-{self.to_level}"

    def at(self, epsilon: float) -> Optional[TransitionPoint]:
        """Muestra más cercana a ε"""
        if not self.points:
            return None
        return min(self.points, key=lambda p: abs(p.epsilon - epsilon))
