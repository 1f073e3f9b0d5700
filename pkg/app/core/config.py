"""
app/core/config.py

Configuración de la aplicación con pydantic-settings.
Las variables de entorno usan el prefijo RABI_SPEC_ (por ejemplo RABI_SPEC_THREADS).
"""
import os
import sys

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Configuración global del toolkit"""

    model_config = SettingsConfigDict(
        env_prefix="RABI_SPEC_",
        env_file=os.getenv("ENV_FILE", ".env"),
        env_file_encoding="utf-8",
        extra="ignore",
    )

    APP_NAME: str = "Rabi Spectra Toolkit"
    DEBUG: bool = False
    LOG_LEVEL: str = "WARNING"

    # 0 = automático (os.cpu_count())
    THREADS: int = Field(0, ge=0)

    # Núcleo numérico
    ENERGY_TOL: float = Field(1e-8, gt=0)
    N_LEVELS_CHECKED: int = Field(8, ge=1)
    MAX_FOCK: int = Field(2048, ge=2)

    # Clasificación de regímenes
    CURVATURE_STEP: float = Field(0.01, gt=0)
    NEAR_BOUNDARY_BAND: float = Field(0.02, ge=0)
    ALLOWED_THRESHOLD: float = Field(1e-6, gt=0)

    # Ajuste
    FIT_MAX_ITER: int = Field(500, ge=1)
    FIT_XATOL: float = Field(1e-6, gt=0)
    FIT_SEED: int = 0

    # Propiedades en snake_case para compatibilidad
    @property
    def app_name(self) -> str:
        return self.APP_NAME

    @property
    def debug(self) -> bool:
        return self.DEBUG

    @property
    def log_level(self) -> str:
        return self.LOG_LEVEL

    @property
    def threads(self) -> int:
        return self.THREADS

    @property
    def worker_count(self) -> int:
        """Número efectivo de hilos de trabajo"""
        return self.THREADS or (os.cpu_count() or 1)

    @property
    def energy_tol(self) -> float:
        return self.ENERGY_TOL

    @property
    def n_levels_checked(self) -> int:
        return self.N_LEVELS_CHECKED

    @property
    def max_fock(self) -> int:
        return self.MAX_FOCK

    @property
    def curvature_step(self) -> float:
        return self.CURVATURE_STEP

    @property
    def near_boundary_band(self) -> float:
        return self.NEAR_BOUNDARY_BAND

    @property
    def allowed_threshold(self) -> float:
        return self.ALLOWED_THRESHOLD

    @property
    def fit_max_iter(self) -> int:
        return self.FIT_MAX_ITER

    @property
    def fit_xatol(self) -> float:
        return self.FIT_XATOL

    @property
    def fit_seed(self) -> int:
        return self.FIT_SEED


# Instancia global
settings = Settings()

if settings.debug:
    print(" Configuración cargada:", file=sys.stderr)
    print(f"   App: {settings.app_name}", file=sys.stderr)
    print(f"   Threads: {settings.worker_count}", file=sys.stderr)
