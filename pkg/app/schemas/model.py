"""
app/schemas/model.py

Esquemas del núcleo del modelo: parámetros del Hamiltoniano, truncamiento
y sistema propio diagonalizado.
"""
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.core.config import settings


class ModelParams(BaseModel):
    """
    Las cuatro frecuencias del Hamiltoniano (ħ = 1), todas en la misma unidad
    arbitraria elegida por quien llama.
    """
    model_config = ConfigDict(frozen=True)

    delta: float = Field(..., ge=0, allow_inf_nan=False, description="Gap del qubit Δ")
    epsilon: float = Field(0.0, allow_inf_nan=False, description="Sesgo del qubit ε (con signo)")
    omega: float = Field(..., gt=0, allow_inf_nan=False, description="Frecuencia del oscilador ω")
    g: float = Field(..., ge=0, allow_inf_nan=False, description="Acoplamiento g")

    @property
    def g_ratio(self) -> float:
        return self.g / self.omega

    @property
    def delta_ratio(self) -> float:
        return self.delta / self.omega

    def with_epsilon(self, epsilon: float) -> "ModelParams":
        """Copia validada con otro sesgo ε"""
        return ModelParams(delta=self.delta, epsilon=float(epsilon), omega=self.omega, g=self.g)

    def with_g(self, g: float) -> "ModelParams":
        """Copia validada con otro acoplamiento g"""
        return ModelParams(delta=self.delta, epsilon=self.epsilon, omega=self.omega, g=float(g))


class TruncationConfig(BaseModel):
    """Control del corte de Fock y del criterio de convergencia"""
    model_config = ConfigDict(frozen=True)

    n_fock: int = Field(16, ge=0, description="Corte mínimo de número de fotones (inclusivo)")
    energy_tol: float = Field(default_factory=lambda: settings.energy_tol, gt=0)
    n_levels_checked: int = Field(default_factory=lambda: settings.n_levels_checked, ge=1)
    max_fock: int = Field(default_factory=lambda: settings.max_fock, ge=1)

    @model_validator(mode="after")
    def check_levels(self) -> "TruncationConfig":
        if self.n_fock < self.n_levels_checked:
            raise ValueError("n_fock must be >= n_levels_checked")
        if self.max_fock < self.n_fock:
            raise ValueError("max_fock must be >= n_fock")
        return self


class EigenSystem(BaseModel):
    """
    Energías ascendentes y vectores propios (columnas) en la base k = 2n + s,
    con s = 0 ↔ |R⟩ (σ_z = +1) y s = 1 ↔ |L⟩ (σ_z = −1).
    Inmutable: los arreglos se marcan como de solo lectura.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    energies: np.ndarray
    vectors: np.ndarray
    params: Optional[ModelParams] = None
    n_fock: Optional[int] = None

    @field_validator("energies", "vectors")
    @classmethod
    def freeze_array(cls, v: np.ndarray) -> np.ndarray:
        v = np.array(v, dtype=float)
        v.setflags(write=False)
        return v

    @model_validator(mode="after")
    def check_shapes(self) -> "EigenSystem":
        dim = self.energies.shape[0]
        if self.vectors.shape != (dim, dim):
            raise ValueError("vectors must be a square matrix matching energies")
        if self.n_fock is not None and dim != 2 * (self.n_fock + 1):
            raise ValueError("dimension must equal 2(n_fock + 1)")
        return self

    @property
    def dimension(self) -> int:
        return int(self.energies.shape[0])
