"""
app/core/dependencies.py

Proveedores de dependencias compartidas: configuración y pool de hilos.
"""
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from typing import Generator, Optional

from app.core.config import Settings, settings


def get_settings() -> Settings:
    """
    Obtiene la configuración de la aplicación.

    Returns:
        Settings: Configuración de la aplicación
    """
    return settings


@contextmanager
def get_executor(workers: Optional[int] = None) -> Generator[ThreadPoolExecutor, None, None]:
    """
    Obtiene un pool de hilos para trabajo independiente (columnas ε, evaluaciones del ajuste).

    LAPACK libera el GIL, así que los hilos sirven para las diagonalizaciones.

    Yields:
        ThreadPoolExecutor: pool limitado por RABI_SPEC_THREADS
    """
    executor = ThreadPoolExecutor(max_workers=workers or settings.worker_count)
    try:
        yield executor
    finally:
        executor.shutdown(wait=True)
