"""
app/schemas/regimes.py

Esquemas de la clasificación de regímenes: rasgos de forma de línea,
informe de los cinco intervalos y patrón de niveles superiores.
"""
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from app.schemas.analytic import BoundarySet

Shape = Literal["Peak", "Dip", "Flat"]
Location = Literal["epsilon_zero", "epsilon_omega"]
NearReason = Literal["band", "ambiguous", "analytic-limit", "crossover"]
PatternKey = Tuple[bool, str, str, str]


class LineShapeFeature(BaseModel):
    """Forma de la línea i → j en ε=0 o en ε=±ω"""
    model_config = ConfigDict(frozen=True)

    transition: Tuple[int, int]
    location: Location
    shape: Shape
    allowed: bool = Field(..., description="Elemento de matriz en ε=0 por encima del umbral")
    second_difference: float = Field(..., description="Segunda diferencia centrada de ω_ij(ε)")
    matrix_element: float = Field(..., ge=0, description="|⟨j|x|i⟩| en ε=0")
    ambiguous: bool = Field(False, description="Niveles casi degenerados en el punto evaluado")


class NearBoundary(BaseModel):
    """
    Aviso de proximidad a una frontera.

    reason: "band" si g/ω cae en la banda de la frontera, "ambiguous" si hay
    niveles casi degenerados, "analytic-limit" si un extremo del intervalo es
    el límite Δ→0 y no una raíz numérica, "crossover" si el patrón medido no
    está en la tabla y se resolvió por el cruce más próximo.
    """
    model_config = ConfigDict(frozen=True)

    boundary: str
    value: float
    distance: float = Field(..., ge=0)
    reason: NearReason = "band"


class RegimeReport(BaseModel):
    """Intervalo 1..5 del acoplamiento con sus evidencias espectrales"""
    model_config = ConfigDict(frozen=True)

    interval_index: int = Field(..., ge=1, le=5)
    bounds: Tuple[float, Optional[float]]
    g_ratio: float
    delta_ratio: float
    boundaries: BoundarySet
    features: List[LineShapeFeature] = Field(default_factory=list)
    near_boundary: Optional[NearBoundary] = None

    @property
    def is_clean(self) -> bool:
        return self.near_boundary is None


class HigherLevelPattern(BaseModel):
    """
    Propiedades de las líneas 2→4 y 3→5: cuatro criterios binarios que
    separan nueve intervalos de g/ω.

    Los cuatro criterios son los de la celda asignada. Si el patrón medido no
    coincide con ninguna celda, `measured` lo conserva y `near_crossover` indica
    el criterio cuyo cruce se usó para resolverlo.
    """
    model_config = ConfigDict(frozen=True)

    allowed_24_35_at0: bool
    shape_24_at0: Shape
    shape_24_at_eps_omega: Shape
    shape_35_at_eps_omega: Shape
    interval_index: Optional[int] = Field(None, ge=1, le=9)
    g_values: List[float] = Field(default_factory=list)
    features: List[LineShapeFeature] = Field(default_factory=list)
    measured: Optional[PatternKey] = None
    near_crossover: Optional[NearBoundary] = None

    @property
    def key(self) -> PatternKey:
        return (
            self.allowed_24_35_at0,
            self.shape_24_at0,
            self.shape_24_at_eps_omega,
            self.shape_35_at_eps_omega,
        )
