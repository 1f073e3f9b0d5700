# tests/conftest.py
"""
Configuración global de pytest para el toolkit de espectros de Rabi
"""
import pytest
import os
import sys
from pathlib import Path

# Añadir la raíz del repositorio al path
sys.path.insert(0, str(Path(__file__).parent.parent))

from app.schemas.model import ModelParams


@pytest.fixture(scope="session", autouse=True)
def setup_environment():
    """Configurar entorno de pruebas"""
    # Crear archivo .env de prueba si no existe
    env_test_path = Path(".env.test")
    created = False
    if not env_test_path.exists():
        env_test_path.write_text("""
RABI_SPEC_APP_NAME="Rabi Spectra Toolkit - Test"
RABI_SPEC_DEBUG=False
RABI_SPEC_THREADS=2
""")
        created = True

    # Usar .env.test para las pruebas
    os.environ["ENV_FILE"] = ".env.test"
    yield
    # Limpieza después de las pruebas
    if created and env_test_path.exists():
        env_test_path.unlink()


# Parámetros de los tres dispositivos de referencia (GHz)
CIRCUIT_PARAMS = {
    "a": ModelParams(delta=2.08, epsilon=0.0, omega=6.305, g=4.08),
    "b": ModelParams(delta=1.85, epsilon=0.0, omega=6.275, g=4.44),
    "c": ModelParams(delta=1.31, epsilon=0.0, omega=6.203, g=5.31),
}


@pytest.fixture
def circuit_params():
    """Parámetros (Δ, ω, g) de los circuitos de referencia"""
    return CIRCUIT_PARAMS


@pytest.fixture
def small_delta():
    """Fábrica de parámetros con ω = 1 y Δ/ω = 0.1"""
    def make(g: float, epsilon: float = 0.0, delta: float = 0.1) -> ModelParams:
        return ModelParams(delta=delta, epsilon=epsilon, omega=1.0, g=g)
    return make


# Celdas publicadas de las líneas 2→4 y 3→5 con Δ/ω = 0.1: valores de g/ω,
# 2→4 en ε=0, 2→4 en ε=±ω, 3→5 en ε=±ω y la columna de permitidas tal cual
PUBLISHED_CELLS = [
    ((0.1, 0.2), "Peak", "Peak", "Dip", True),
    ((0.3,), "Peak", "Peak", "Peak", True),
    ((0.4,), "Peak", "Dip", "Peak", True),
    ((0.5, 0.6), "Dip", "Dip", "Peak", False),
    ((0.7,), "Dip", "Dip", "Dip", False),
    ((0.8, 0.9), "Peak", "Dip", "Dip", False),
    ((1.0, 1.1), "Peak", "Peak", "Peak", False),
    ((1.2, 1.3), "Dip", "Peak", "Peak", False),
    ((1.4, 1.5, 1.6), "Dip", "Peak", "Dip", False),
]


@pytest.fixture
def published_cells():
    """Nueve celdas publicadas de niveles superiores, por g/ω creciente"""
    return PUBLISHED_CELLS


@pytest.fixture
def observations_csv(tmp_path):
    """Escribe un CSV de observaciones a partir de su texto"""
    def write(text: str, name: str = "observations.csv") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path
    return write
