"""
Módulo de repositorios para lectura y escritura de artefactos.
"""

from app.repositories.spectrum_repository import SpectrumRepository
from app.repositories.observation_repository import ObservationRepository
from app.repositories.artifact_repository import ArtifactRepository

__all__ = [
    "SpectrumRepository",
    "ObservationRepository",
    "ArtifactRepository",
]
