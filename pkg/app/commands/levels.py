"""
app/commands/levels.py

Comando `levels`: energías E_n(ε) y frecuencias de transición en CSV.
"""
import click
import numpy as np
import pandas as pd

from app.commands.runner import command_run
from app.core.config import settings
from app.core.exceptions import ConvergenceError, InvalidInputError
from app.repositories.spectrum_repository import SpectrumRepository
from app.schemas.model import TruncationConfig
from app.schemas.response import EpsilonSweep
from app.services.hamiltonian_service import HamiltonianService
from app.utils.helpers import pair_label, parse_pairs


def sample_axis(eps_min: float, eps_max: float, eps_steps: int, name: str = "epsilon") -> np.ndarray:
    """Eje inclusivo; rango vacío o pasos < 1 es un error de entrada"""
    if eps_steps < 1 or not eps_max >= eps_min:
        raise InvalidInputError(f"Empty {name} range [{eps_min:g}, {eps_max:g}] with {eps_steps} steps")
    if eps_steps == 1:
        return np.array([eps_min])
    return np.linspace(eps_min, eps_max, eps_steps)


def levels_frame(sweep: EpsilonSweep, levels: int, pairs) -> pd.DataFrame:
    """Tabla epsilon, E_0..E_{N−1} y las columnas ω_ij pedidas"""
    highest = max([levels - 1] + [j for _, j in pairs])
    trunc = TruncationConfig(
        n_fock=max(16, highest + 1),
        n_levels_checked=max(settings.n_levels_checked, highest + 1),
    )
    eig_rows = []
    for eps in sweep.epsilons:
        try:
            eig = HamiltonianService.converged_eigensystem(sweep.params_at(eps), trunc)
        except ConvergenceError as e:
            raise e.at_epsilon(eps) from e
        if levels > eig.dimension:
            raise InvalidInputError(f"--levels {levels} exceeds the truncated dimension {eig.dimension}")
        row = {"epsilon": eps}
        row.update({f"E_{n}": float(eig.energies[n]) for n in range(levels)})
        for i, j in pairs:
            row[pair_label(i, j)] = HamiltonianService.transition_frequency(eig, i, j)
        eig_rows.append(row)
    return pd.DataFrame.from_records(eig_rows)


@click.command("levels")
@click.option("--delta", type=float, required=True, help="Gap del qubit Δ")
@click.option("--omega", type=float, required=True, help="Frecuencia del oscilador ω")
@click.option("--g", "g", type=float, required=True, help="Acoplamiento g")
@click.option("--eps-min", type=float, default=None, help="ε mínimo (por defecto −2ω)")
@click.option("--eps-max", type=float, default=None, help="ε máximo (por defecto 2ω)")
@click.option("--eps-steps", type=int, default=241, show_default=True, help="Número de muestras en ε")
@click.option("--levels", "n_levels", type=click.IntRange(min=1), default=6, show_default=True,
              help="Número de niveles E_0..E_{N-1}")
@click.option("--transitions", default="", help='Frecuencias ω_ij adicionales, p. ej. "0-1,0-2"')
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None, help="CSV de salida con su <archivo>.manifest.json (stdout sin manifiesto si falta)")
def levels(delta, omega, g, eps_min, eps_max, eps_steps, n_levels, transitions, output):
    """Energías y frecuencias de transición en función de ε."""
    parameters = dict(delta=delta, omega=omega, g=g, eps_min=eps_min, eps_max=eps_max,
                      eps_steps=eps_steps, levels=n_levels, transitions=transitions, output=output)
    with command_run("levels", parameters) as run:
        template = HamiltonianService.params_or_error(delta=delta, epsilon=0.0, omega=omega, g=g)
        lo = -2.0 * omega if eps_min is None else eps_min
        hi = 2.0 * omega if eps_max is None else eps_max
        axis = sample_axis(lo, hi, eps_steps)
        pairs = parse_pairs(transitions)

        sweep = EpsilonSweep(template=template, epsilons=axis.tolist())
        frame = levels_frame(sweep, n_levels, pairs)
        repository = SpectrumRepository()
        run.emit(repository.frame_text(frame), output)
