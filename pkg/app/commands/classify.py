"""
app/commands/classify.py

Comando `classify`: intervalo de acoplamiento (1..5) o patrón de niveles
superiores (1..9) en JSON.
"""
import click

from app.commands.runner import command_run
from app.repositories.artifact_repository import ArtifactRepository
from app.services.hamiltonian_service import HamiltonianService
from app.services.regime_service import RegimeService

# Código de salida cuando g/ω cae junto a una frontera o a un cruce de patrón
NEAR_BOUNDARY_EXIT = 4


@click.command("classify")
@click.option("--delta", type=float, required=True, help="Gap del qubit Δ")
@click.option("--omega", type=float, required=True, help="Frecuencia del oscilador ω")
@click.option("--g", "g", type=float, required=True, help="Acoplamiento g")
@click.option("--high", is_flag=True, default=False, help="Patrón de las líneas 2→4 y 3→5")
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None, help="JSON de salida con su <archivo>.manifest.json (stdout sin manifiesto si falta)")
def classify(delta, omega, g, high, output):
    """Clasifica el régimen de acoplamiento."""
    parameters = dict(delta=delta, omega=omega, g=g, high=high, output=output)
    with command_run("classify", parameters) as run:
        params = HamiltonianService.params_or_error(delta=delta, epsilon=0.0, omega=omega, g=g)
        if high:
            report = RegimeService.classify_high(params)
            if report.near_crossover is not None:
                run.exit_code = NEAR_BOUNDARY_EXIT
        else:
            report = RegimeService.classify_low(params)
            if report.near_boundary is not None:
                run.exit_code = NEAR_BOUNDARY_EXIT
        run.emit(ArtifactRepository.to_json(report), output)
