"""
app/services/fit_service.py

Servicio de ajuste de parámetros.
Estima (Δ, ω, g) a partir de frecuencias de resonancia medidas por mínimos
cuadrados ponderados con búsqueda simplex de Nelder-Mead, e incluye la
calibración flujo → sesgo y el modelo del acoplador.
"""
import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import ValidationError
from scipy import optimize

from app.core.config import settings
from app.core.dependencies import get_executor
from app.core.exceptions import InvalidInputError
from app.schemas.fit import FitResult, FluxCalibration, ResonanceObservation
from app.schemas.model import ModelParams, TruncationConfig
from app.services.hamiltonian_service import HamiltonianService

logger = logging.getLogger(__name__)

# Relación de flujo del acoplador respecto del lazo del qubit
DEFAULT_COUPLER_RATIO = 0.05

# Perturbación relativa del reinicio
RESTART_SCALE = 0.01

# Penalización para ω ≤ 0
INVALID_PENALTY = 1e30


class FitService:
    """
    Servicio de ajuste y calibración.
    """

    @staticmethod
    def flux_to_epsilon(cal: FluxCalibration, n_phi: float) -> float:
        """
        Sesgo ε = 2·I_p·Φ₀·(n_φ − n_φ0).

        Args:
            cal: Calibración (n_phi0 fijo o el semientero más cercano)
            n_phi: Flujo normalizado

        Returns:
            float: ε en las unidades de la calibración
        """
        n_phi0 = cal.n_phi0 if cal.n_phi0 is not None else math.floor(n_phi) + 0.5
        return float(2.0 * cal.ip * cal.flux_quantum * (n_phi - n_phi0))

    @staticmethod
    def coupler_flux(n_phi: float, r_c: float = DEFAULT_COUPLER_RATIO) -> float:
        """Flujo del acoplador n_φc = r_c·n_φ"""
        return float(r_c * n_phi)

    @staticmethod
    def coupler_critical_current(ic: float, n_phi_c: float) -> float:
        """
        Corriente crítica del acoplador 4·I_c·cos(2π n_φc)·cos(π n_φc).
        """
        if not ic > 0:
            raise InvalidInputError("junction critical current must be > 0")
        return float(4.0 * ic * math.cos(2.0 * math.pi * n_phi_c) * math.cos(math.pi * n_phi_c))

    @staticmethod
    def observation_epsilon(obs: ResonanceObservation, cal: Optional[FluxCalibration]) -> float:
        """ε de una observación (directo o a través de la calibración)"""
        if obs.bias_kind == "epsilon":
            return obs.bias
        if cal is None:
            raise InvalidInputError("observations with bias_kind 'nphi' require a flux calibration")
        return FitService.flux_to_epsilon(cal, obs.bias)

    @staticmethod
    def model_frequencies(
        params: ModelParams,
        epsilons: Sequence[float],
        transitions: Sequence[Tuple[int, int]],
        executor=None,
    ) -> np.ndarray:
        """
        Frecuencias ω_ij del modelo para cada (ε, transición) emparejados.
        Cada ε distinto se diagonaliza una sola vez.
        """
        highest = max(j for _, j in transitions)
        trunc = TruncationConfig(
            n_fock=max(16, highest + 1),
            n_levels_checked=max(settings.n_levels_checked, highest + 1),
        )
        distinct = sorted(set(float(e) for e in epsilons))

        def energies(eps: float) -> np.ndarray:
            return HamiltonianService.converged_eigensystem(params.with_epsilon(eps), trunc).energies

        if executor is None:
            spectra = [energies(eps) for eps in distinct]
        else:
            spectra = list(executor.map(energies, distinct))
        by_eps = dict(zip(distinct, spectra))

        out = np.empty(len(epsilons))
        for k, (eps, (i, j)) in enumerate(zip(epsilons, transitions)):
            levels = by_eps[float(eps)]
            if j >= len(levels):
                raise InvalidInputError(f"Level {j} outside the truncated spectrum ({len(levels)} levels)")
            out[k] = levels[j] - levels[i]
        return out

    @staticmethod
    def fit_parameters(
        observations: Sequence[ResonanceObservation],
        initial: ModelParams,
        cal: Optional[FluxCalibration] = None,
        seed: Optional[int] = None,
        max_iter: Optional[int] = None,
        xatol: Optional[float] = None,
        workers: Optional[int] = None,
    ) -> FitResult:
        """
        Ajusta (Δ, ω, g) minimizando Σ w·(ω_ij^modelo − ω_ij^medida)² / Σ w.

        ε de cada observación es fijo. La búsqueda trabaja en coordenadas
        normalizadas por la estimación inicial y se reinicia una vez desde el
        mejor punto perturbado (semilla fija).

        Args:
            observations: Al menos 3 observaciones en al menos 2 sesgos distintos
            initial: Estimación inicial (su ε se ignora)
            cal: Calibración de flujo para observaciones con bias_kind 'nphi'
            seed: Semilla de la perturbación del reinicio (por defecto FIT_SEED)
            max_iter: Iteraciones por corrida (por defecto FIT_MAX_ITER)
            xatol: Tamaño relativo del simplex para converger (por defecto FIT_XATOL)
            workers: Hilos para diagonalizar los sesgos en paralelo

        Returns:
            FitResult: Mejor punto, residuos y estado de convergencia
        """
        observations = list(observations)
        if len(observations) < 3:
            raise InvalidInputError(f"At least 3 observations are required (got {len(observations)})")

        epsilons_in = [FitService.observation_epsilon(o, cal) for o in observations]
        if len(set(epsilons_in)) < 2:
            raise InvalidInputError("Observations must span at least 2 distinct bias values")

        seed = settings.fit_seed if seed is None else seed
        max_iter = max_iter or settings.fit_max_iter
        xatol = xatol or settings.fit_xatol

        # Orden canónico: el resultado no depende del orden de entrada
        order = sorted(
            range(len(observations)),
            key=lambda k: (
                epsilons_in[k],
                observations[k].transition,
                observations[k].frequency,
                observations[k].weight,
            ),
        )
        epsilons = [epsilons_in[k] for k in order]
        transitions = [observations[k].transition for k in order]
        measured = np.array([observations[k].frequency for k in order])
        weights = np.array([observations[k].weight for k in order])
        weights = weights / weights.sum()

        scale = np.array(
            [
                initial.delta if initial.delta > 0 else 0.1 * initial.omega,
                initial.omega,
                initial.g if initial.g > 0 else 0.1 * initial.omega,
            ]
        )
        # Convergencia solo por tamaño del simplex
        fatol = np.inf

        def params_from(x: np.ndarray) -> Optional[ModelParams]:
            delta, omega, g = x * scale
            if not omega > 0:
                return None
            # el espectro es invariante bajo Δ → −Δ y g → −g
            return ModelParams(delta=abs(delta), epsilon=0.0, omega=omega, g=abs(g))

        logger.info(f"🔄 Ajustando {len(observations)} observaciones en {len(set(epsilons))} sesgos")

        with get_executor(workers) as executor:

            def objective(x: np.ndarray) -> float:
                params = params_from(x)
                if params is None:
                    return INVALID_PENALTY
                model = FitService.model_frequencies(params, epsilons, transitions, executor)
                return float(np.sum(weights * (model - measured) ** 2))

            options = {"xatol": xatol, "fatol": fatol, "maxiter": max_iter}
            first = optimize.minimize(objective, np.ones(3), method="Nelder-Mead", options=options)
            logger.debug(f"Primera corrida: f={first.fun:.3e}, nit={first.nit}")

            rng = np.random.default_rng(seed)
            restart_x = first.x * (1.0 + RESTART_SCALE * rng.standard_normal(3))
            second = optimize.minimize(objective, restart_x, method="Nelder-Mead", options=options)
            logger.debug(f"Reinicio: f={second.fun:.3e}, nit={second.nit}")

            best = second if second.fun <= first.fun else first
            params = params_from(best.x)
            if params is None:
                raise InvalidInputError("Fit diverged to a non-positive oscillator frequency")
            model = FitService.model_frequencies(params, epsilons, transitions, executor)

        sorted_residuals = model - measured
        residuals = np.empty_like(sorted_residuals)
        residuals[np.array(order)] = sorted_residuals
        converged = bool(best.success)

        result = FitResult(
            params=params,
            residual_rms=float(np.sqrt(np.mean(residuals**2))),
            per_observation_residuals=residuals.tolist(),
            iterations=int(first.nit + second.nit),
            evaluations=int(first.nfev + second.nfev),
            restarts=1,
            converged=converged,
            message=str(best.message),
        )
        if converged:
            logger.info(
                f"✅ Ajuste convergido: Δ={params.delta:.6g}, ω={params.omega:.6g}, "
                f"g={params.g:.6g}, rms={result.residual_rms:.3e}"
            )
        else:
            logger.warning(f"⚠️ Ajuste sin converger: {best.message}")
        return result

    @staticmethod
    def synthesize_observations(
        params: ModelParams,
        epsilons: Sequence[float],
        pairs: Sequence[Tuple[int, int]],
        noise_sigma: float = 0.0,
        seed: int = 0,
    ) -> List[ResonanceObservation]:
        """
        Observaciones sintéticas (con ruido gaussiano opcional) para cada
        combinación de ε y transición.
        """
        if noise_sigma < 0:
            raise InvalidInputError("noise_sigma must be >= 0")
        grid = [(float(eps), (int(i), int(j))) for eps in epsilons for i, j in pairs]
        if not grid:
            raise InvalidInputError("at least one epsilon and one transition are required")
        frequencies = FitService.model_frequencies(
            params, [eps for eps, _ in grid], [pair for _, pair in grid]
        )
        if noise_sigma > 0:
            rng = np.random.default_rng(seed)
            frequencies = frequencies + rng.normal(0.0, noise_sigma, size=len(frequencies))

        try:
            return [
                ResonanceObservation(bias=eps, bias_kind="epsilon", transition=pair, frequency=float(freq))
                for (eps, pair), freq in zip(grid, frequencies)
            ]
        except ValidationError as e:
            raise InvalidInputError(f"Synthetic observation rejected: {e.errors()[0]['msg']}") from e

    @staticmethod
    def relative_errors(result: FitResult, reference: ModelParams) -> Dict[str, float]:
        """Errores relativos de (Δ, ω, g) frente a parámetros de referencia"""
        errors = {}
        for name in ("delta", "omega", "g"):
            expected = getattr(reference, name)
            got = getattr(result.params, name)
            errors[name] = abs(got - expected) / expected if expected else abs(got)
        return errors
