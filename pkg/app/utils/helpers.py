"""
app/utils/helpers.py

Funciones de utilidad para la aplicación.
"""
import re
from typing import Any, Dict, List, Optional, Tuple

from app.core.exceptions import InvalidInputError
from app.schemas.responses import ErrorResponse

# Formato numérico de todas las salidas CSV (9 cifras significativas)
FLOAT_FORMAT = "%.9g"

PAIR_PATTERN = re.compile(r"^\s*(\d+)\s*-\s*(\d+)\s*$")


def parse_pairs(text: str) -> List[Tuple[int, int]]:
    """
    Parsea una lista de transiciones con formato "0-1,0-2,1-3".

    Args:
        text: Lista separada por comas

    Returns:
        List[Tuple[int, int]]: Pares (i, j) con i < j
    """
    pairs: List[Tuple[int, int]] = []
    if not text or not text.strip():
        return pairs
    for item in text.split(","):
        match = PAIR_PATTERN.match(item)
        if not match:
            raise InvalidInputError(f"Invalid transition '{item.strip()}': expected 'i-j'")
        i, j = int(match.group(1)), int(match.group(2))
        if i >= j:
            raise InvalidInputError(f"Invalid transition '{item.strip()}': requires i < j")
        pairs.append((i, j))
    return pairs


def pair_label(i: int, j: int) -> str:
    """Nombre de columna de la frecuencia ω_ij"""
    return f"omega_{i}_{j}"


def generate_error_response(
    error_message: str,
    error_code: str = "INTERNAL_ERROR",
    exit_code: int = 1,
    details: Optional[Dict[str, Any]] = None,
) -> Dict[str, Any]:
    """
    Genera una respuesta de error estandarizada.

    Args:
        error_message: Mensaje de error
        error_code: Código de error
        exit_code: Código de salida de la CLI
        details: Detalles adicionales

    Returns:
        Dict[str, Any]: Respuesta de error
    """
    response = ErrorResponse(
        error=error_message,
        code=error_code,
        exit_code=exit_code,
        details=details or None,
    )
    return response.model_dump(exclude_none=True)
