"""
app/schemas/responses.py

Esquemas para las salidas estandarizadas de la CLI: manifiesto de ejecución,
errores y resultados de verificación.
"""
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class RunManifest(BaseModel):
    """
    Manifiesto emitido junto a cada artefacto de salida.
    """
    command: str = Field(..., description="Nombre del comando")
    parameters: Dict[str, Any] = Field(default_factory=dict, description="Parámetros resueltos")
    version: str = Field(..., description="Versión del toolkit")
    duration_seconds: float = Field(..., ge=0, description="Duración de la ejecución")
    outputs: List[str] = Field(default_factory=list, description="Artefactos escritos")
    finished_at: datetime = Field(
        default_factory=lambda: datetime.now(timezone.utc), description="Marca de tiempo de finalización"
    )
    exit_code: int = Field(0, description="Código de salida del comando")


class ErrorResponse(BaseModel):
    """
    Respuesta para errores específicos.
    """
    error: str = Field(..., description="Descripción del error")
    code: str = Field(..., description="Código de error único")
    exit_code: int = Field(..., description="Código de salida de la CLI")
    details: Optional[Dict[str, Any]] = Field(None, description="Detalles adicionales del error")


class VerifyCheck(BaseModel):
    """
    Resultado de una comprobación del conjunto de invariantes.
    """
    name: str = Field(..., description="Nombre de la comprobación")
    passed: bool = Field(..., description="Indica si la comprobación pasó")
    value: float = Field(..., description="Valor medido")
    threshold: float = Field(..., description="Tolerancia aplicada")
    detail: str = Field("", description="Descripción breve")


class VerifyReport(BaseModel):
    """
    Resumen del conjunto de invariantes.
    """
    checks: List[VerifyCheck] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failed(self) -> List[VerifyCheck]:
        return [check for check in self.checks if not check.passed]
