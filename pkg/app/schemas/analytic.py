"""
app/schemas/analytic.py

Esquemas de resultados analíticos: fronteras de régimen y estados desplazados.
"""
from typing import Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator, model_validator

BoundaryMethod = Literal["analytic-limit", "numeric-root"]
BOUNDARY_NAMES = ("b1", "b2", "b3", "b4")


class BoundarySet(BaseModel):
    """
    Las cuatro fronteras g/ω que dividen el acoplamiento en cinco intervalos.
    """
    model_config = ConfigDict(frozen=True)

    b1: float = Field(..., gt=0, description="Pico ↔ valle de 1→3 en ε=ω (≈0.383)")
    b2: float = Field(..., gt=0, description="Cruce E_2 = E_3 en ε=0 (≈0.5)")
    b3: float = Field(..., gt=0, description="E_3−E_2 = E_1−E_0 en ε=0 (≈1/√2)")
    b4: float = Field(..., gt=0, description="Valle ↔ pico de 1→3 en ε=ω (≈0.924)")
    delta_ratio: float = Field(..., ge=0, description="Δ/ω usado en el cálculo")
    method: BoundaryMethod = Field(..., description="numeric-root solo si las cuatro son raíces numéricas")
    methods: Dict[str, BoundaryMethod] = Field(default_factory=dict, description="Método por frontera")

    @model_validator(mode="after")
    def check_order(self) -> "BoundarySet":
        if not self.b1 < self.b2 < self.b3 < self.b4:
            raise ValueError("boundaries must satisfy b1 < b2 < b3 < b4")
        return self

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.b1, self.b2, self.b3, self.b4)

    def interval_index(self, g_ratio: float) -> int:
        """Intervalo 1..5 que contiene g/ω (los bordes pertenecen al intervalo superior)"""
        return 1 + sum(1 for b in self.as_tuple() if g_ratio >= b)

    def interval_bounds(self, index: int) -> Tuple[float, Optional[float]]:
        """Límites (inferior, superior) del intervalo; el quinto no tiene límite superior"""
        edges: List[Optional[float]] = [0.0, *self.as_tuple(), None]
        return edges[index - 1], edges[index]

    def nearest(self, g_ratio: float) -> Tuple[str, float]:
        """Frontera más cercana a g/ω y su distancia"""
        distances = {name: abs(g_ratio - value) for name, value in zip(BOUNDARY_NAMES, self.as_tuple())}
        name = min(distances, key=distances.get)
        return name, distances[name]


class DisplacedState(BaseModel):
    """
    Componente amplitude·|qubit_branch⟩ ⊗ D(displacement)|fock_index⟩ con sus
    coeficientes ⟨m|D(α)|n⟩ sobre los estados de Fock hasta el corte.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    qubit_branch: Literal["L", "R"]
    displacement: float
    fock_index: int = Field(..., ge=0)
    amplitude: float = 1.0
    coefficients: np.ndarray

    @field_validator("coefficients")
    @classmethod
    def freeze_array(cls, v: np.ndarray) -> np.ndarray:
        v = np.array(v, dtype=float)
        v.setflags(write=False)
        return v

    @field_serializer("coefficients")
    def serialize_coefficients(self, v: np.ndarray) -> List[float]:
        return v.tolist()

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coefficients))

    @property
    def qubit_index(self) -> int:
        """Índice s de la base (R ↔ 0, L ↔ 1)"""
        return 0 if self.qubit_branch == "R" else 1
