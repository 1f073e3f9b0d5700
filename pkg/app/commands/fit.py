"""
app/commands/fit.py

Comando `fit`: ajuste de (Δ, ω, g) a partir de un CSV de observaciones.
"""
import click

from app.commands.runner import command_run
from app.core.exceptions import FitNotConvergedError
from app.repositories.artifact_repository import ArtifactRepository
from app.repositories.observation_repository import ObservationRepository
from app.schemas.fit import FluxCalibration
from app.services.fit_service import FitService
from app.services.hamiltonian_service import HamiltonianService


@click.command("fit")
@click.option("--observations", "observations_path", type=click.Path(dir_okay=False), required=True,
              help='CSV "bias,bias_kind,i,j,frequency,weight"')
@click.option("--init-delta", type=float, required=True, help="Estimación inicial de Δ")
@click.option("--init-omega", type=float, required=True, help="Estimación inicial de ω")
@click.option("--init-g", type=float, required=True, help="Estimación inicial de g")
@click.option("--ip", type=float, default=None, help="Corriente persistente I_p (para bias_kind=nphi)")
@click.option("--flux-quantum", type=float, default=1.0, show_default=True, help="Cuanto de flujo Φ₀")
@click.option("--n-phi0", type=float, default=None, help="Punto de simetría fijo (semientero)")
@click.option("--seed", type=int, default=None, help="Semilla del reinicio (por defecto RABI_SPEC_FIT_SEED)")
@click.option("--max-iter", type=click.IntRange(min=1), default=None, help="Iteraciones por corrida")
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None, help="JSON de salida con su <archivo>.manifest.json (stdout sin manifiesto si falta)")
def fit(observations_path, init_delta, init_omega, init_g, ip, flux_quantum, n_phi0, seed, max_iter, output):
    """Ajusta los parámetros del modelo a frecuencias de resonancia."""
    parameters = dict(observations=observations_path, init_delta=init_delta, init_omega=init_omega,
                      init_g=init_g, ip=ip, flux_quantum=flux_quantum, n_phi0=n_phi0, seed=seed,
                      max_iter=max_iter, output=output)
    with command_run("fit", parameters) as run:
        observations = ObservationRepository().load_csv(observations_path)
        initial = HamiltonianService.params_or_error(delta=init_delta, epsilon=0.0, omega=init_omega, g=init_g)
        cal = None
        if ip is not None:
            cal = FluxCalibration(ip=ip, flux_quantum=flux_quantum, n_phi0=n_phi0)

        result = FitService.fit_parameters(observations, initial, cal=cal, seed=seed, max_iter=max_iter)
        run.emit(ArtifactRepository.to_json(result), output)
        if not result.converged:
            raise FitNotConvergedError(
                f"Fit did not converge: {result.message}",
                result=result,
            )
