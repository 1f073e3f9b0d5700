"""
Repositorio de artefactos espectrales.
Serializa rejillas de transmisión (CSV, JSON, mapa P6) y tablas de niveles.
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np
import pandas as pd

from app.schemas.response import SpectrumGrid
from app.utils.helpers import FLOAT_FORMAT

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class SpectrumRepository:
    """
    Repositorio para escribir y leer rejillas y tablas de niveles.
    """

    def __init__(self, float_format: str = FLOAT_FORMAT):
        self.float_format = float_format

    def grid_frame(self, grid: SpectrumGrid) -> pd.DataFrame:
        """
        Rejilla en formato largo, ε primero y ω_p después (orden fila-mayor).

        Args:
            grid: Rejilla de transmisión

        Returns:
            pd.DataFrame: Columnas epsilon, omega_p, transmission
        """
        n_eps, n_probe = grid.shape
        return pd.DataFrame(
            {
                "epsilon": np.repeat(grid.epsilon_axis, n_probe),
                "omega_p": np.tile(grid.probe_axis, n_eps),
                "transmission": grid.values.reshape(-1),
            }
        )

    def save_grid_csv(self, grid: SpectrumGrid, path: PathLike) -> Path:
        """
        Escribe la rejilla como CSV "epsilon,omega_p,transmission".
        """
        return self.save_frame(self.grid_frame(grid), path)

    def grid_payload(self, grid: SpectrumGrid) -> Dict[str, Any]:
        """
        Ejes, arreglo plano de valores y bloque de metadatos.
        """
        return {
            "epsilon_axis": grid.epsilon_axis.tolist(),
            "probe_axis": grid.probe_axis.tolist(),
            "shape": list(grid.shape),
            "values": grid.values.reshape(-1).tolist(),
            "metadata": {
                "template": grid.template.model_dump(),
                "probe": grid.probe.model_dump(),
                "thermal": grid.thermal.model_dump(),
                "clamped_points": grid.clamped_points,
            },
        }

    def save_grid_json(self, grid: SpectrumGrid, path: PathLike) -> Path:
        path = Path(path)
        path.write_text(json.dumps(self.grid_payload(grid), indent=2) + "\n", encoding="utf-8")
        logger.info(f"✅ JSON de la rejilla escrito en {path}")
        return path

    def heatmap_bytes(self, grid: SpectrumGrid) -> bytes:
        """
        Mapa P6 de 8 bits en escala de grises: gris = round(255·T), un píxel por
        punto de la red, ε en x y ω_p creciendo hacia arriba.
        """
        gray = np.rint(255.0 * grid.values).astype(np.uint8)
        image = gray.T[::-1, :]
        height, width = image.shape
        rgb = np.repeat(image[:, :, None], 3, axis=2)
        header = f"P6\n{width} {height}\n255\n".encode("ascii")
        return header + rgb.tobytes()

    def save_heatmap(self, grid: SpectrumGrid, path: PathLike) -> Path:
        path = Path(path)
        path.write_bytes(self.heatmap_bytes(grid))
        logger.info(f"✅ Mapa P6 escrito en {path}")
        return path

    def save_frame(self, frame: pd.DataFrame, path: PathLike) -> Path:
        """Escribe una tabla con el formato numérico común"""
        path = Path(path)
        frame.to_csv(path, index=False, float_format=self.float_format, lineterminator="\n")
        logger.info(f"✅ CSV escrito en {path} ({len(frame)} filas)")
        return path

    def frame_text(self, frame: pd.DataFrame) -> str:
        """Texto CSV de una tabla (para salida estándar)"""
        return frame.to_csv(index=False, float_format=self.float_format, lineterminator="\n")

    def load_frame(self, path: PathLike) -> pd.DataFrame:
        """Lee una tabla escrita por save_frame sin pérdida de las 9 cifras"""
        return pd.read_csv(Path(path), float_precision="round_trip")
