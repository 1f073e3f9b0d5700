"""
app/main.py

Punto de entrada de la CLI `rabi-spectra`.
"""
import logging
import sys

import click

from app import __version__
from app.commands import boundaries, classify, fit, levels, spectrum, verify
from app.core.config import settings


@click.group()
@click.version_option(__version__, prog_name="rabi-spectra")
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default=None,
    help="Nivel de log (por defecto RABI_SPEC_LOG_LEVEL)",
)
def cli(log_level):
    """Simulador y análisis del modelo de Rabi cuántico con sesgo.

    Cada archivo escrito con -o/--output lleva al lado <archivo>.manifest.json
    (comando, parámetros, versión, duración y código de salida). Las salidas
    por stdout no generan manifiesto; el resumen queda en el log.
    """
    level = (log_level or settings.log_level).upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    if settings.debug:
        logging.getLogger(__name__).debug(f"🔄 Starting {settings.app_name} with {settings.worker_count} threads")


cli.add_command(levels)
cli.add_command(spectrum)
cli.add_command(classify)
cli.add_command(boundaries)
cli.add_command(fit)
cli.add_command(verify)


if __name__ == "__main__":
    cli()
