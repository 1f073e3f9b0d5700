"""
Módulo de servicios de la aplicación.
Contiene la lógica numérica del modelo y su análisis.
"""

from app.services.hamiltonian_service import HamiltonianService
from app.services.analytic_service import AnalyticService
from app.services.response_service import ResponseService
from app.services.regime_service import RegimeService
from app.services.fit_service import FitService
from app.services.verification_service import VerificationService

__all__ = [
    "HamiltonianService",
    "AnalyticService",
    "ResponseService",
    "RegimeService",
    "FitService",
    "VerificationService",
]
