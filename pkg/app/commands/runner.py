"""
app/commands/runner.py

Envoltura común de los comandos: cronometra la ejecución, traduce errores
a códigos de salida y escribe el manifiesto junto a cada artefacto.
"""
import json
import logging
import sys
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Generator, List, Optional

import click
from pydantic import ValidationError

from app import __version__
from app.core.exceptions import InvalidInputError, RabiSpectraError
from app.repositories.artifact_repository import ArtifactRepository
from app.schemas.responses import RunManifest
from app.utils.helpers import generate_error_response

logger = logging.getLogger(__name__)


class CommandRun:
    """Estado de una ejecución: parámetros resueltos, artefactos y código de salida"""

    def __init__(self, command: str, parameters: Dict[str, Any]):
        self.command = command
        self.parameters = parameters
        self.outputs: List[Path] = []
        self.exit_code = 0
        self.started = time.perf_counter()

    def add_output(self, path: Optional[Path]) -> None:
        if path is not None:
            self.outputs.append(Path(path))

    def emit(self, text: str, output: Optional[str]) -> None:
        """Escribe texto en un archivo o en la salida estándar"""
        if output:
            path = Path(output)
            path.write_text(text, encoding="utf-8")
            self.add_output(path)
        else:
            click.echo(text, nl=False)

    def manifest(self) -> RunManifest:
        return RunManifest(
            command=self.command,
            parameters=self.parameters,
            version=__version__,
            duration_seconds=time.perf_counter() - self.started,
            outputs=[str(p) for p in self.outputs],
            exit_code=self.exit_code,
        )


@contextmanager
def command_run(command: str, parameters: Dict[str, Any]) -> Generator[CommandRun, None, None]:
    """
    Ejecuta el cuerpo de un comando con el contrato de salida de la CLI.

    Args:
        command: Nombre del comando
        parameters: Parámetros resueltos (se registran en el manifiesto)

    Yields:
        CommandRun: Estado de la ejecución
    """
    run = CommandRun(command, parameters)
    try:
        try:
            yield run
        except ValidationError as e:
            error = e.errors()[0]
            raise InvalidInputError(f"{error['loc'][0] if error['loc'] else 'input'}: {error['msg']}") from e
    except RabiSpectraError as e:
        run.exit_code = e.exit_code
        logger.error(f"❌ {command}: {e.message}")
        payload = generate_error_response(e.message, e.code, e.exit_code, e.details or None)
        click.echo(json.dumps(payload, indent=2, default=str), err=True)
    finally:
        repository = ArtifactRepository()
        manifest = run.manifest()
        for output in run.outputs:
            repository.save_manifest(manifest, output)
        if not run.outputs:
            logger.info(
                f"✅ {command}: salida por stdout sin manifiesto "
                f"(exit_code={manifest.exit_code}, {manifest.duration_seconds:.3f} s)"
            )
    if run.exit_code:
        sys.exit(run.exit_code)
