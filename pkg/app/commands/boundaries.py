"""
app/commands/boundaries.py

Comando `boundaries`: fronteras de régimen para un Δ/ω dado.
"""
import click

from app.commands.runner import command_run
from app.repositories.artifact_repository import ArtifactRepository
from app.services.analytic_service import AnalyticService


@click.command("boundaries")
@click.option("--delta-ratio", type=float, required=True, help="Δ/ω en [0, 1)")
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None, help="JSON de salida con su <archivo>.manifest.json (stdout sin manifiesto si falta)")
def boundaries(delta_ratio, output):
    """Calcula las cuatro fronteras g/ω."""
    with command_run("boundaries", dict(delta_ratio=delta_ratio, output=output)) as run:
        result = AnalyticService.regime_boundaries(delta_ratio)
        run.emit(ArtifactRepository.to_json(result), output)
