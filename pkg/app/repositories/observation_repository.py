"""
Repositorio de observaciones de resonancia.
Lee y escribe el CSV "bias,bias_kind,i,j,frequency,weight".
"""
import logging
from pathlib import Path
from typing import List, Sequence, Union

import pandas as pd
from pandas.errors import EmptyDataError, ParserError
from pydantic import ValidationError

from app.core.exceptions import ObservationParseError
from app.schemas.fit import ResonanceObservation
from app.utils.helpers import FLOAT_FORMAT

logger = logging.getLogger(__name__)

COLUMNS = ["bias", "bias_kind", "i", "j", "frequency", "weight"]
REQUIRED_COLUMNS = COLUMNS[:5]


class ObservationRepository:
    """
    Repositorio para la ingesta de observaciones.
    Los errores indican la línea del archivo (la cabecera es la línea 1).
    """

    def load_csv(self, path: Union[str, Path]) -> List[ResonanceObservation]:
        """
        Lee y valida las observaciones.

        Args:
            path: Ruta del CSV

        Returns:
            List[ResonanceObservation]: Observaciones en orden de archivo
        """
        path = Path(path)
        try:
            frame = pd.read_csv(path, dtype=str, keep_default_na=False, skip_blank_lines=False)
        except FileNotFoundError as e:
            raise ObservationParseError(f"file not found: {path}") from e
        except EmptyDataError as e:
            raise ObservationParseError("empty observations file", line=1) from e
        except ParserError as e:
            raise ObservationParseError(f"malformed CSV: {e}") from e

        frame.columns = [str(c).strip() for c in frame.columns]
        missing = [c for c in REQUIRED_COLUMNS if c not in frame.columns]
        if missing:
            raise ObservationParseError(f"missing columns: {', '.join(missing)}", line=1)
        if frame.empty:
            raise ObservationParseError("no observations after the header", line=2)

        observations = []
        for offset, row in enumerate(frame.itertuples(index=False)):
            line = offset + 2
            observations.append(self._parse_row(row._asdict(), line))

        logger.info(f"✅ {len(observations)} observaciones leídas de {path}")
        return observations

    def save_csv(self, observations: Sequence[ResonanceObservation], path: Union[str, Path]) -> Path:
        """Escribe observaciones con el formato de ingesta"""
        path = Path(path)
        frame = pd.DataFrame.from_records(
            [
                {
                    "bias": o.bias,
                    "bias_kind": o.bias_kind,
                    "i": o.transition[0],
                    "j": o.transition[1],
                    "frequency": o.frequency,
                    "weight": o.weight,
                }
                for o in observations
            ],
            columns=COLUMNS,
        )
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        logger.info(f"✅ {len(frame)} observaciones escritas en {path}")
        return path

    @staticmethod
    def _parse_row(row: dict, line: int) -> ResonanceObservation:
        values = {key: str(row.get(key, "")).strip() for key in COLUMNS}
        if not any(values.values()):
            raise ObservationParseError("blank row", line=line)
        try:
            numbers = {
                "bias": float(values["bias"]),
                "i": int(values["i"]),
                "j": int(values["j"]),
                "frequency": float(values["frequency"]),
                "weight": float(values["weight"]) if values["weight"] else 1.0,
            }
        except ValueError as e:
            raise ObservationParseError(f"invalid number ({e})", line=line) from e

        try:
            return ResonanceObservation(
                bias=numbers["bias"],
                bias_kind=values["bias_kind"] or "epsilon",
                transition=(numbers["i"], numbers["j"]),
                frequency=numbers["frequency"],
                weight=numbers["weight"],
            )
        except ValidationError as e:
            error = e.errors()[0]
            field = ".".join(str(p) for p in error["loc"])
            raise ObservationParseError(f"{field}: {error['msg']}", line=line) from e
