"""
app/commands/spectrum.py

Comando `spectrum`: rejilla de transmisión T = 1 − R en CSV/JSON y mapa P6 opcional.
"""
from pathlib import Path

import click

from app.commands.levels import sample_axis
from app.commands.runner import command_run
from app.core.exceptions import InvalidInputError
from app.repositories.spectrum_repository import SpectrumRepository
from app.schemas.response import EpsilonSweep, ProbeConfig, ThermalConfig
from app.services.hamiltonian_service import HamiltonianService
from app.services.response_service import DEFAULT_EPSILON_POINTS, DEFAULT_PROBE_POINTS, ResponseService


@click.command("spectrum")
@click.option("--delta", type=float, required=True, help="Gap del qubit Δ")
@click.option("--omega", type=float, required=True, help="Frecuencia del oscilador ω")
@click.option("--g", "g", type=float, required=True, help="Acoplamiento g")
@click.option("--eps-min", type=float, default=None, help="ε mínimo (por defecto −2ω)")
@click.option("--eps-max", type=float, default=None, help="ε máximo (por defecto 2ω)")
@click.option("--eps-steps", type=int, default=DEFAULT_EPSILON_POINTS, show_default=True)
@click.option("--probe-min", type=float, default=None, help="ω_p mínimo (por defecto 0.8ω)")
@click.option("--probe-max", type=float, default=None, help="ω_p máximo (por defecto 1.2ω)")
@click.option("--probe-steps", type=int, default=DEFAULT_PROBE_POINTS, show_default=True)
@click.option("--amplitude", type=float, default=2e-3, show_default=True, help="Amplitud de la sonda A_p")
@click.option("--gamma", type=float, default=3e-3, show_default=True, help="Decoherencia Γ")
@click.option("--r0", type=float, default=1.0, show_default=True, help="Reflexión máxima R₀")
@click.option("--kt", type=float, default=None, help="Energía térmica k_BT (unidades de frecuencia)")
@click.option("--temperature-mk", type=float, default=None, help="Temperatura en mK (frecuencias en GHz)")
@click.option("--max-levels", type=int, default=8, show_default=True, help="Niveles retenidos")
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None, help="CSV de salida con su <archivo>.manifest.json (stdout sin manifiesto si falta)")
@click.option("--json", "json_path", type=click.Path(dir_okay=False), default=None, help="JSON de salida")
@click.option("--heatmap", type=click.Path(dir_okay=False), default=None, help="Mapa P6 de salida")
def spectrum(delta, omega, g, eps_min, eps_max, eps_steps, probe_min, probe_max, probe_steps,
             amplitude, gamma, r0, kt, temperature_mk, max_levels, output, json_path, heatmap):
    """Espectro de transmisión sobre la red (ε, ω_p)."""
    parameters = dict(delta=delta, omega=omega, g=g, eps_min=eps_min, eps_max=eps_max, eps_steps=eps_steps,
                      probe_min=probe_min, probe_max=probe_max, probe_steps=probe_steps,
                      amplitude=amplitude, gamma=gamma, r0=r0, kt=kt, temperature_mk=temperature_mk,
                      max_levels=max_levels, output=output, json=json_path, heatmap=heatmap)
    with command_run("spectrum", parameters) as run:
        if kt is not None and temperature_mk is not None:
            raise InvalidInputError("Use either --kt or --temperature-mk, not both")
        if temperature_mk is not None:
            kt = ResponseService.thermal_energy_from_temperature(temperature_mk)
        thermal = ThermalConfig(kt=kt or 0.0, max_levels=max_levels)
        probe = ProbeConfig(amplitude_ap=amplitude, gamma=gamma, r0=r0)

        template = HamiltonianService.params_or_error(delta=delta, epsilon=0.0, omega=omega, g=g)
        eps_axis = sample_axis(
            -2.0 * omega if eps_min is None else eps_min,
            2.0 * omega if eps_max is None else eps_max,
            eps_steps,
        )
        probe_axis = sample_axis(
            0.8 * omega if probe_min is None else probe_min,
            1.2 * omega if probe_max is None else probe_max,
            probe_steps,
            "probe",
        )

        grid = ResponseService.transmission_grid(
            EpsilonSweep(template=template, epsilons=eps_axis.tolist()), probe, thermal, probe_axis
        )

        repository = SpectrumRepository()
        run.emit(repository.frame_text(repository.grid_frame(grid)), output)
        if json_path:
            run.add_output(repository.save_grid_json(grid, Path(json_path)))
        if heatmap:
            run.add_output(repository.save_heatmap(grid, Path(heatmap)))
