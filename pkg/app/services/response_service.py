"""
app/services/response_service.py

Servicio de respuesta espectroscópica.
Reflexión térmica multinivel

    R = R₀ Σ_{i<j} P_i Ω_ij² / (Ω_ij² + (ω_p − ω_ij)² + Γ²),   Ω_ij = A_p |⟨j|x|i⟩|

y rejillas de transmisión T = 1 − R sobre (ε, ω_p).
"""
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import constants

from app.core.dependencies import get_executor
from app.core.exceptions import ConvergenceError, InvalidInputError
from app.schemas.model import EigenSystem, ModelParams, TruncationConfig
from app.schemas.response import (
    EpsilonSweep,
    ProbeConfig,
    SpectrumGrid,
    ThermalConfig,
    TransitionLine,
    TransitionPoint,
)
from app.services.hamiltonian_service import HamiltonianService

logger = logging.getLogger(__name__)

# Densidades por defecto de la rejilla
DEFAULT_EPSILON_POINTS = 241
DEFAULT_PROBE_POINTS = 201

# k_B/h en GHz por kelvin
GHZ_PER_KELVIN = constants.k / constants.h / 1e9


class ResponseService:
    """
    Servicio para poblaciones térmicas, reflexión y rejillas de transmisión.
    """

    @staticmethod
    def thermal_populations(eig: EigenSystem, thermal: ThermalConfig) -> np.ndarray:
        """
        Poblaciones de Boltzmann sobre los niveles retenidos.

        Args:
            eig: Sistema propio
            thermal: Configuración térmica

        Returns:
            np.ndarray: P_i normalizadas (las menores que population_floor valen 0)
        """
        levels = min(thermal.max_levels, eig.dimension)
        energies = eig.energies[:levels] - eig.energies[0]
        if thermal.kt == 0.0:
            populations = np.zeros(levels)
            populations[0] = 1.0
            return populations

        weights = np.exp(-energies / thermal.kt)
        populations = weights / weights.sum()
        populations[populations < thermal.population_floor] = 0.0
        return populations / populations.sum()

    @staticmethod
    def reflection(
        eig: EigenSystem, probe: ProbeConfig, thermal: ThermalConfig, omega_p: float
    ) -> float:
        """
        Coeficiente de reflexión a la frecuencia de sonda ω_p, recortado a 1.
        """
        if not omega_p >= 0:
            raise InvalidInputError("omega_p must be >= 0")
        raw = ResponseService.reflection_sum(eig, probe, thermal, np.array([omega_p]))[0]
        if raw > 1.0:
            logger.warning(f"⚠️ Suma de reflexión {raw:.4f} > 1 en ω_p={omega_p:g}; se recorta")
        return float(min(raw, 1.0))

    @staticmethod
    def reflection_sum(
        eig: EigenSystem, probe: ProbeConfig, thermal: ThermalConfig, probe_axis: np.ndarray
    ) -> np.ndarray:
        """
        Suma de lorentzianas sin recortar, evaluada sobre un eje de sonda.
        """
        probe_axis = np.asarray(probe_axis, dtype=float)
        populations = ResponseService.thermal_populations(eig, thermal)
        occupied = np.flatnonzero(populations)
        if not occupied.size:
            return np.zeros_like(probe_axis)

        # elementos |⟨j|x|i⟩| para i poblado y todo j
        drive = np.abs(eig.vectors.T @ HamiltonianService.apply_drive(eig.vectors[:, occupied]))

        # Transiciones activas i → j (j > i)
        columns, rows = [], []
        for column, i in enumerate(occupied):
            for j in range(i + 1, eig.dimension):
                if drive[j, column] > 0.0:
                    columns.append(column)
                    rows.append(j)
        if not rows:
            return np.zeros_like(probe_axis)

        lower = occupied[columns]
        upper = np.array(rows)
        rabi_sq = (probe.amplitude_ap * drive[upper, columns]) ** 2
        omega_ij = eig.energies[upper] - eig.energies[lower]
        gamma_sq = np.array([probe.gamma_for(int(i), int(j)) for i, j in zip(lower, upper)]) ** 2
        weights = populations[lower] * rabi_sq

        detuning_sq = (probe_axis[None, :] - omega_ij[:, None]) ** 2
        lines = weights[:, None] / (rabi_sq[:, None] + detuning_sq + gamma_sq[:, None])
        return probe.r0 * lines.sum(axis=0)

    @staticmethod
    def transmission_grid(
        sweep: EpsilonSweep,
        probe: ProbeConfig,
        thermal: ThermalConfig,
        probe_axis: Optional[Sequence[float]] = None,
        trunc: Optional[TruncationConfig] = None,
        workers: Optional[int] = None,
    ) -> SpectrumGrid:
        """
        Rejilla T = 1 − R. Cada columna ε usa su propio sistema propio
        convergido; las columnas se calculan en paralelo y se combinan por
        índice de ε.

        Args:
            sweep: Barrido en ε y plantilla del modelo
            probe: Configuración de sonda
            thermal: Configuración térmica
            probe_axis: Frecuencias de sonda ascendentes (por defecto 0.8ω..1.2ω)
            trunc: Truncamiento
            workers: Hilos de trabajo (por defecto RABI_SPEC_THREADS)

        Returns:
            SpectrumGrid: Rejilla de transmisión
        """
        if probe_axis is None:
            probe_axis = ResponseService.default_probe_axis(sweep.template.omega)
        probe_axis = ResponseService._checked_axis(probe_axis, "probe axis")
        if probe_axis[0] < 0:
            raise InvalidInputError("probe frequencies must be >= 0")

        def column(eps: float) -> Tuple[np.ndarray, int]:
            eig = ResponseService._converged(sweep.params_at(eps), trunc)
            raw = ResponseService.reflection_sum(eig, probe, thermal, probe_axis)
            clamped = int(np.count_nonzero(raw > 1.0))
            return 1.0 - np.minimum(raw, 1.0), clamped

        logger.info(
            f"🔄 Rejilla de transmisión {len(sweep.epsilons)}×{len(probe_axis)} "
            f"(g/ω={sweep.template.g_ratio:.4g})"
        )
        with get_executor(workers) as executor:
            results = list(executor.map(column, sweep.epsilons))

        clamped_points = sum(c for _, c in results)
        if clamped_points:
            logger.warning(f"⚠️ Reflexión recortada a 1 en {clamped_points} puntos")

        values = np.vstack([col for col, _ in results])
        logger.info("✅ Rejilla de transmisión completa")
        return SpectrumGrid(
            epsilon_axis=np.array(sweep.epsilons, dtype=float),
            probe_axis=probe_axis,
            values=np.clip(values, 0.0, 1.0),
            template=sweep.template,
            probe=probe,
            thermal=thermal,
            clamped_points=clamped_points,
        )

    @staticmethod
    def transition_lines(
        sweep: EpsilonSweep,
        pairs: Sequence[Tuple[int, int]],
        trunc: Optional[TruncationConfig] = None,
        workers: Optional[int] = None,
    ) -> List[TransitionLine]:
        """
        Frecuencia ω_ij y elemento de matriz por muestra de ε para cada par.
        """
        pairs = [(int(i), int(j)) for i, j in pairs]
        for i, j in pairs:
            if not 0 <= i < j:
                raise InvalidInputError(f"Invalid transition {i}-{j}: levels must satisfy 0 <= i < j")

        def sample(eps: float) -> List[TransitionPoint]:
            eig = ResponseService._converged(sweep.params_at(eps), trunc)
            points = []
            for i, j in pairs:
                points.append(
                    TransitionPoint(
                        epsilon=eps,
                        frequency=HamiltonianService.transition_frequency(eig, i, j),
                        matrix_element=HamiltonianService.drive_matrix_element(eig, i, j),
                    )
                )
            return points

        with get_executor(workers) as executor:
            samples = list(executor.map(sample, sweep.epsilons))

        return [
            TransitionLine(from_level=i, to_level=j, points=[row[k] for row in samples])
            for k, (i, j) in enumerate(pairs)
        ]

    @staticmethod
    def thermal_energy_from_temperature(temperature_mk: float) -> float:
        """
        Energía térmica k_BT/h en GHz para una temperatura en mK.
        """
        if not temperature_mk >= 0:
            raise InvalidInputError("temperature must be >= 0 mK")
        return float(GHZ_PER_KELVIN * temperature_mk / 1000.0)

    @staticmethod
    def default_epsilon_axis(omega: float, points: int = DEFAULT_EPSILON_POINTS) -> np.ndarray:
        """Eje ε por defecto: [−2ω, 2ω]"""
        return np.linspace(-2.0 * omega, 2.0 * omega, points)

    @staticmethod
    def default_probe_axis(omega: float, points: int = DEFAULT_PROBE_POINTS) -> np.ndarray:
        """Eje ω_p por defecto: [0.8ω, 1.2ω]"""
        return np.linspace(0.8 * omega, 1.2 * omega, points)

    @staticmethod
    def _converged(params: ModelParams, trunc: Optional[TruncationConfig]) -> EigenSystem:
        try:
            return HamiltonianService.converged_eigensystem(params, trunc)
        except ConvergenceError as e:
            raise e.at_epsilon(params.epsilon) from e

    @staticmethod
    def _checked_axis(axis: Sequence[float], name: str) -> np.ndarray:
        axis = np.asarray(axis, dtype=float)
        if axis.ndim != 1 or axis.size == 0:
            raise InvalidInputError(f"{name} must be a nonempty 1-D sequence")
        if not np.all(np.isfinite(axis)):
            raise InvalidInputError(f"{name} must be finite")
        if np.any(np.diff(axis) < 0):
            raise InvalidInputError(f"{name} must be sorted ascending")
        return axis
