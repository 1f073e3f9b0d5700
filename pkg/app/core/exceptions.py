"""
app/core/exceptions.py

Jerarquía de errores del toolkit.
Cada error lleva un código estable (para las respuestas JSON) y el código de
salida que usa la CLI.
"""
from typing import Any, Dict, List, Optional, Sequence


class RabiSpectraError(Exception):
    """Error base del toolkit"""

    code = "INTERNAL_ERROR"
    exit_code = 1

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}


class InvalidInputError(RabiSpectraError, ValueError):
    """Parámetros fuera de dominio o entradas mal formadas"""

    code = "INVALID_INPUT"
    exit_code = 2


class ObservationParseError(InvalidInputError):
    """Fila inválida en el CSV de observaciones"""

    code = "PARSE_ERROR"

    def __init__(self, message: str, line: Optional[int] = None):
        text = f"line {line}: {message}" if line is not None else message
        super().__init__(text, {"line": line} if line is not None else None)
        self.line = line


class UnsupportedRegimeError(InvalidInputError):
    """Taxonomía de regímenes fuera de su dominio (Δ ≥ ω)"""

    code = "UNSUPPORTED_REGIME"


class ConvergenceError(RabiSpectraError):
    """El corte de Fock no converge dentro del máximo permitido"""

    code = "CONVERGENCE_FAILED"
    exit_code = 3

    def __init__(
        self,
        message: str,
        previous: Sequence[float] = (),
        last: Sequence[float] = (),
        epsilon: Optional[float] = None,
    ):
        self.previous: List[float] = [float(e) for e in previous]
        self.last: List[float] = [float(e) for e in last]
        self.epsilon = epsilon
        super().__init__(
            message,
            {"previous": self.previous, "last": self.last, "epsilon": epsilon},
        )

    def at_epsilon(self, epsilon: float) -> "ConvergenceError":
        """Copia del error anotada con el sesgo ε que lo produjo"""
        return ConvergenceError(
            f"{self.message} (epsilon={epsilon:.9g})", self.previous, self.last, epsilon
        )


class TruncationError(RabiSpectraError):
    """Corte insuficiente para representar un estado desplazado"""

    code = "TRUNCATION_TOO_SMALL"
    exit_code = 3


class BoundaryNotBracketedError(RabiSpectraError):
    """No se encontró cambio de signo para una frontera de régimen"""

    code = "ROOT_NOT_BRACKETED"
    exit_code = 3


class FitNotConvergedError(RabiSpectraError):
    """El ajuste terminó sin converger; conserva el mejor punto"""

    code = "FIT_NOT_CONVERGED"
    exit_code = 5

    def __init__(self, message: str, result: Any = None):
        super().__init__(message)
        self.result = result
