"""
Repositorio de artefactos JSON y manifiestos de ejecución.
"""
import json
import logging
from pathlib import Path
from typing import Any, Union

from pydantic import BaseModel

from app.schemas.responses import RunManifest

logger = logging.getLogger(__name__)

MANIFEST_SUFFIX = ".manifest.json"


class ArtifactRepository:
    """
    Repositorio para documentos JSON y manifiestos.
    """

    @staticmethod
    def to_json(payload: Any) -> str:
        """
        Serializa un modelo pydantic o un diccionario con sangría fija.

        Args:
            payload: Modelo o estructura serializable

        Returns:
            str: Documento JSON terminado en salto de línea
        """
        if isinstance(payload, BaseModel):
            return payload.model_dump_json(indent=2) + "\n"
        return json.dumps(payload, indent=2) + "\n"

    def save_json(self, payload: Any, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.write_text(self.to_json(payload), encoding="utf-8")
        logger.info(f"✅ JSON escrito en {path}")
        return path

    @staticmethod
    def manifest_path(output: Union[str, Path]) -> Path:
        """Ruta del manifiesto junto a un artefacto"""
        output = Path(output)
        return output.with_name(output.name + MANIFEST_SUFFIX)

    def save_manifest(self, manifest: RunManifest, output: Union[str, Path]) -> Path:
        path = self.manifest_path(output)
        path.write_text(manifest.model_dump_json(indent=2) + "\n", encoding="utf-8")
        logger.debug(f"Manifiesto escrito en {path}")
        return path

    def load_manifest(self, path: Union[str, Path]) -> RunManifest:
        return RunManifest.model_validate_json(Path(path).read_text(encoding="utf-8"))
