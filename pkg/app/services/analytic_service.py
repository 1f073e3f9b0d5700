"""
app/services/analytic_service.py

Resultados en forma cerrada del modelo de Rabi con sesgo:
polinomios de Laguerre asociados, solapamientos de Fock desplazados,
desdoblamientos de pares en ε=0 y ε=ω, estados desplazados de acoplamiento
profundo y fronteras de régimen para Δ/ω arbitrario.
"""
import logging
import math
from functools import lru_cache
from typing import Callable, Dict, List, Literal, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from app.core.config import settings
from app.core.exceptions import (
    BoundaryNotBracketedError,
    InvalidInputError,
    TruncationError,
    UnsupportedRegimeError,
)
from app.schemas.analytic import BoundarySet, DisplacedState
from app.schemas.model import ModelParams, TruncationConfig
from app.services.hamiltonian_service import HamiltonianService

logger = logging.getLogger(__name__)

# Límites Δ/ω → 0 de las cuatro fronteras
B1_LIMIT = math.sqrt(2 - math.sqrt(2)) / 2
B2_LIMIT = 0.5
B3_LIMIT = 1 / math.sqrt(2)
B4_LIMIT = math.sqrt(2 + math.sqrt(2)) / 2

# Barrido y bisección de raíces en g/ω
SCAN_START = 0.05
SCAN_STOP = 2.0
SCAN_STEP = 0.01
ROOT_TOL = 1e-4

NORM_TOL = 1e-8


class AnalyticService:
    """
    Servicio de fórmulas cerradas. Funciones puras, seguras en concurrencia.
    """

    @staticmethod
    def assoc_laguerre(n: int, m: int, x: float) -> float:
        """
        Polinomio de Laguerre asociado L_n^m(x) por recurrencia de tres términos.

        Args:
            n: Grado (≥ 0)
            m: Orden (≥ 0)
            x: Argumento real

        Returns:
            float: L_n^m(x)
        """
        if n < 0 or m < 0:
            raise InvalidInputError("Laguerre degree and order must be >= 0")
        if n == 0:
            return 1.0
        # (k+1) L_{k+1} = (2k+m+1−x) L_k − (k+m) L_{k−1}
        l_prev, l_curr = 1.0, 1.0 + m - x
        for k in range(1, n):
            l_prev, l_curr = l_curr, ((2 * k + m + 1 - x) * l_curr - (k + m) * l_prev) / (k + 1)
        return float(l_curr)

    @staticmethod
    def displaced_fock_overlap(alpha: float, m: int, n: int) -> float:
        """
        Elemento ⟨m|D(α)|n⟩ para α real.

        Args:
            alpha: Desplazamiento
            m: Fila (número de Fock)
            n: Columna (número de Fock)

        Returns:
            float: Elemento de matriz del operador de desplazamiento
        """
        if m < 0 or n < 0:
            raise InvalidInputError("Fock indices must be >= 0")
        low, high = min(m, n), max(m, n)
        diff = high - low
        # D(α)† = D(−α): por encima de la diagonal cambia el signo de α
        base = alpha if m >= n else -alpha
        log_ratio = 0.5 * (math.lgamma(low + 1) - math.lgamma(high + 1))
        power = base**diff if diff else 1.0
        laguerre = AnalyticService.assoc_laguerre(low, diff, alpha * alpha)
        return float(math.exp(log_ratio - alpha * alpha / 2) * power * laguerre)

    @staticmethod
    def displaced_fock_column(alpha: float, n: int, cutoff: int) -> np.ndarray:
        """Columna (⟨m|D(α)|n⟩) para m = 0..cutoff"""
        return np.array([AnalyticService.displaced_fock_overlap(alpha, m, n) for m in range(cutoff + 1)])

    @staticmethod
    def e31_second_term(
        g: float, omega: float, branch: Optional[Literal["plus", "minus"]] = None
    ) -> float:
        """
        Segundo término de la frecuencia 1→3 en ε=ω:
        e^{−2g²/ω²}(2g/ω)[1 ± (1/√2)(2 − 4g²/ω²)].

        Sin rama explícita se usa "minus" para g/ω < 1/√2 y "plus" en otro caso.
        """
        if omega <= 0:
            raise InvalidInputError("omega must be > 0")
        ratio = g / omega
        if branch is None:
            branch = "minus" if ratio < B3_LIMIT else "plus"
        sign = 1.0 if branch == "plus" else -1.0
        bracket = 1.0 + sign * (2.0 - 4.0 * ratio**2) / math.sqrt(2)
        return float(math.exp(-2.0 * ratio**2) * 2.0 * ratio * bracket)

    @staticmethod
    def symmetry_point_splitting(n: int, params: ModelParams) -> float:
        """
        Estimación para Δ pequeño de E_{2n+1} − E_{2n} en ε=0:
        Δ·e^{−2g²/ω²}·|L_n(4g²/ω²)|.
        """
        if params.epsilon != 0.0:
            raise InvalidInputError("symmetry_point_splitting requires epsilon = 0")
        if n < 0:
            raise InvalidInputError("pair index must be >= 0")
        x = 4.0 * params.g_ratio**2
        return float(params.delta * math.exp(-x / 2) * abs(AnalyticService.assoc_laguerre(n, 0, x)))

    @staticmethod
    def eps_omega_pair_offsets(
        g: float, omega: float, n_pair: int, delta: Optional[float] = None
    ) -> Tuple[float, float]:
        """
        Energías (inferior, superior) respecto de E_0 del par n casi degenerado
        en ε=ω, en el límite de Δ pequeño.

        Args:
            g: Acoplamiento
            omega: Frecuencia del oscilador
            n_pair: Índice del par (≥ 1; el par n agrupa los niveles 2n−1 y 2n)
            delta: Gap del qubit; sin él se usa el corchete sin prefactor

        Returns:
            Tuple[float, float]: (E_inferior − E_0, E_superior − E_0)
        """
        if omega <= 0:
            raise InvalidInputError("omega must be > 0")
        if n_pair < 1:
            raise InvalidInputError("pair index at epsilon = omega must be >= 1")
        ratio = g / omega
        x = 4.0 * ratio**2
        prefactor = 1.0 if delta is None else delta / 2
        half = (
            prefactor
            * math.exp(-x / 2)
            * 2.0
            * ratio
            * abs(AnalyticService.assoc_laguerre(n_pair - 1, 1, x))
            / math.sqrt(n_pair)
        )
        # El corchete adimensional queda en unidades de ω
        scale = omega if delta is None else 1.0
        return n_pair * omega - scale * half, n_pair * omega + scale * half

    @staticmethod
    def numeric_pair_splittings(params: ModelParams, n_pairs: int) -> List[float]:
        """
        Desdoblamientos E_{2n+1} − E_{2n} en ε=0 por diagonalización.
        """
        if n_pairs < 1:
            raise InvalidInputError("n_pairs must be >= 1")
        trunc = TruncationConfig(
            n_fock=max(16, 2 * n_pairs),
            n_levels_checked=max(settings.n_levels_checked, 2 * n_pairs),
        )
        eig = HamiltonianService.converged_eigensystem(params.with_epsilon(0.0), trunc)
        energies = eig.energies
        return [float(energies[2 * n + 1] - energies[2 * n]) for n in range(n_pairs)]

    @staticmethod
    def build_displaced_states(
        g: float, omega: float, n_fock: int
    ) -> Tuple[Tuple[DisplacedState, DisplacedState], Tuple[DisplacedState, DisplacedState]]:
        """
        Estados de acoplamiento profundo de los niveles |0⟩ y |3⟩:

            |0⟩ = (|L⟩D(α)|0⟩ + |R⟩D(−α)|0⟩)/√2
            |3⟩ = (|L⟩D(α)|1⟩ − |R⟩D(−α)|1⟩)/√2

        con α = g/ω. Ambos tienen paridad +1, así que ⟨0|(a+a†)|3⟩ = 0.

        Returns:
            Tuple: (componentes de |0⟩, componentes de |3⟩)
        """
        if omega <= 0:
            raise InvalidInputError("omega must be > 0")
        if n_fock < 1:
            raise InvalidInputError("n_fock must be >= 1")
        alpha = g / omega
        amplitude = 1 / math.sqrt(2)

        def component(branch: str, fock_index: int, sign: float) -> DisplacedState:
            displacement = alpha if branch == "L" else -alpha
            coefficients = AnalyticService.displaced_fock_column(displacement, fock_index, n_fock)
            norm = float(np.linalg.norm(coefficients))
            if norm < 1 - NORM_TOL:
                raise TruncationError(
                    f"n_fock={n_fock} too small for displacement {alpha:.4g} (norm {norm:.10f})",
                    {"n_fock": n_fock, "norm": norm},
                )
            return DisplacedState(
                qubit_branch=branch,
                displacement=displacement,
                fock_index=fock_index,
                amplitude=sign * amplitude,
                coefficients=coefficients,
            )

        ground = (component("L", 0, 1.0), component("R", 0, 1.0))
        third = (component("L", 1, 1.0), component("R", 1, -1.0))
        return ground, third

    @staticmethod
    def displaced_state_vector(states: Sequence[DisplacedState]) -> np.ndarray:
        """Suma de componentes desplazadas en la base k = 2n + s"""
        if not states:
            raise InvalidInputError("at least one component is required")
        size = len(states[0].coefficients)
        vector = np.zeros(2 * size)
        for state in states:
            if len(state.coefficients) != size:
                raise InvalidInputError("components must share the same cutoff")
            vector[state.qubit_index::2] += state.amplitude * state.coefficients
        return vector

    @staticmethod
    def higher_level_crossovers() -> Dict[str, Tuple[float, ...]]:
        """
        Valores de g/ω (límite de Δ pequeño) donde cambia cada criterio de las
        líneas 2→4 y 3→5, con x = 4g²/ω²:

            allowed_24_35_at0:      ceros de L_1(x)·L_2(x)
            shape_24_at0:           |L_2(x)| = |L_1(x)|
            shape_24_at_eps_omega:  |L_1^1(x)|/√2 = |L_0^1(x)|
            shape_35_at_eps_omega:  |L_2^1(x)|/√3 = |L_1^1(x)|/√2

        Returns:
            Dict[str, Tuple[float, ...]]: Cruces ascendentes en (0, 2] por criterio
        """
        return dict(_cached_crossovers())

    @staticmethod
    def regime_boundaries(delta_ratio: float) -> BoundarySet:
        """
        Fronteras b1 < b2 < b3 < b4 en g/ω para un Δ/ω dado.

        b2 y b3 son raíces en ε=0 de E_3 − E_2 y de (E_3 − E_2) − (E_1 − E_0);
        b1 y b4 son los cambios de signo de la segunda diferencia de ω_13(ε)
        en ε=ω. Los resultados se guardan en caché por Δ/ω.

        Args:
            delta_ratio: Δ/ω en [0, 1)

        Returns:
            BoundarySet: Fronteras con el método usado en cada una
        """
        if not math.isfinite(delta_ratio) or delta_ratio < 0:
            raise InvalidInputError("delta_ratio must be finite and >= 0")
        if delta_ratio >= 1:
            raise UnsupportedRegimeError(
                f"Regime boundaries are defined for delta/omega < 1 (got {delta_ratio:g})"
            )
        return _cached_boundaries(float(delta_ratio))

    # ------------------------------------------------------------------
    # Auxiliares de las fronteras
    # ------------------------------------------------------------------

    @staticmethod
    def symmetric_splittings(delta_ratio: float, g_ratio: float) -> Tuple[float, float]:
        """Desdoblamientos con signo (s_0, s_1) en ε=0 con ω = 1"""
        params = ModelParams(delta=delta_ratio, epsilon=0.0, omega=1.0, g=g_ratio)
        n_fock = HamiltonianService.converged_eigensystem(params).n_fock
        plus, minus = HamiltonianService.sector_energies(params, n_fock)
        return float(minus[0] - plus[0]), float(minus[1] - plus[1])

    @staticmethod
    def omega13_curvature(delta_ratio: float, g_ratio: float, step: Optional[float] = None) -> float:
        """
        Segunda diferencia centrada de ω_13(ε) en ε=ω (ω = 1).
        Positiva ↔ valle, negativa ↔ pico.
        """
        h = step or settings.curvature_step
        center = ModelParams(delta=delta_ratio, epsilon=1.0, omega=1.0, g=g_ratio)
        n_fock = HamiltonianService.converged_eigensystem(center).n_fock
        values = []
        for eps in (1.0 - h, 1.0, 1.0 + h):
            eig = HamiltonianService.solve(center.with_epsilon(eps), n_fock)
            values.append(HamiltonianService.transition_frequency(eig, 1, 3))
        return (values[0] - 2.0 * values[1] + values[2]) / h**2


def _bracket_root(
    f: Callable[[float], float], start: float, stop: float, rising: bool
) -> Optional[float]:
    """
    Barre f en pasos de SCAN_STEP desde `start` y bisecciona el primer cambio
    de signo (negativo→positivo si rising) hasta ROOT_TOL.
    """
    lo = start
    f_lo = f(lo)
    steps = int(math.floor((stop - start) / SCAN_STEP + 1e-9))
    for k in range(1, steps + 1):
        hi = start + k * SCAN_STEP
        f_hi = f(hi)
        crossed = (f_lo < 0 <= f_hi) if rising else (f_lo > 0 >= f_hi)
        if crossed:
            while hi - lo > ROOT_TOL:
                mid = 0.5 * (lo + hi)
                f_mid = f(mid)
                if (f_mid < 0) == rising:
                    lo = mid
                else:
                    hi = mid
            return 0.5 * (lo + hi)
        lo, f_lo = hi, f_hi
    return None


@lru_cache(maxsize=64)
def _cached_boundaries(delta_ratio: float) -> BoundarySet:
    limits = {"b1": B1_LIMIT, "b2": B2_LIMIT, "b3": B3_LIMIT, "b4": B4_LIMIT}
    if delta_ratio == 0.0:
        # Sin gap todos los desdoblamientos se anulan: solo queda el límite
        return BoundarySet(
            **limits,
            delta_ratio=0.0,
            method="analytic-limit",
            methods={name: "analytic-limit" for name in limits},
        )

    logger.info(f"🔄 Calculando fronteras para Δ/ω={delta_ratio:g}")

    def s1(g: float) -> float:
        return AnalyticService.symmetric_splittings(delta_ratio, g)[1]

    def gap_difference(g: float) -> float:
        s0, s_1 = AnalyticService.symmetric_splittings(delta_ratio, g)
        return abs(s_1) - s0

    def curvature(g: float) -> float:
        return AnalyticService.omega13_curvature(delta_ratio, g)

    b2 = _bracket_root(s1, SCAN_START, SCAN_STOP, rising=True)
    if b2 is None:
        raise BoundaryNotBracketedError(
            f"E_3 - E_2 has no sign change in (0, {SCAN_STOP}] at delta/omega={delta_ratio:g}",
            {"boundary": "b2", "delta_ratio": delta_ratio},
        )
    b3 = _bracket_root(gap_difference, b2, SCAN_STOP, rising=True)
    if b3 is None:
        raise BoundaryNotBracketedError(
            f"(E_3 - E_2) - (E_1 - E_0) has no sign change in ({b2:.4f}, {SCAN_STOP}] "
            f"at delta/omega={delta_ratio:g}",
            {"boundary": "b3", "delta_ratio": delta_ratio},
        )

    values = {"b2": b2, "b3": b3}
    methods = {"b2": "numeric-root", "b3": "numeric-root"}

    # Valle → pico antes de b2; pico → valle después de b3
    b1 = _bracket_root(curvature, SCAN_START, b2, rising=False)
    b4 = _bracket_root(curvature, b3, SCAN_STOP, rising=True)
    for name, root in (("b1", b1), ("b4", b4)):
        if root is None:
            logger.warning(
                f"⚠️ {name} sin cambio de signo para Δ/ω={delta_ratio:g}; se usa el límite analítico"
            )
            values[name] = limits[name]
            methods[name] = "analytic-limit"
        else:
            values[name] = root
            methods[name] = "numeric-root"

    overall = "numeric-root" if all(m == "numeric-root" for m in methods.values()) else "analytic-limit"
    result = BoundarySet(**values, delta_ratio=delta_ratio, method=overall, methods=methods)
    logger.info(
        f"✅ Fronteras Δ/ω={delta_ratio:g}: "
        + ", ".join(f"{name}={value:.4f}" for name, value in zip(("b1", "b2", "b3", "b4"), result.as_tuple()))
    )
    return result


def _pair_weight_at_omega(n_pair: int, x: float) -> float:
    """|L_{n−1}^1(x)|/√n: desdoblamiento relativo del par n en ε=ω"""
    return abs(AnalyticService.assoc_laguerre(n_pair - 1, 1, x)) / math.sqrt(n_pair)


CROSSOVER_CRITERIA: Dict[str, Callable[[float], float]] = {
    "allowed_24_35_at0": lambda x: AnalyticService.assoc_laguerre(1, 0, x) * AnalyticService.assoc_laguerre(2, 0, x),
    "shape_24_at0": lambda x: abs(AnalyticService.assoc_laguerre(2, 0, x)) - abs(AnalyticService.assoc_laguerre(1, 0, x)),
    "shape_24_at_eps_omega": lambda x: _pair_weight_at_omega(1, x) - _pair_weight_at_omega(2, x),
    "shape_35_at_eps_omega": lambda x: _pair_weight_at_omega(2, x) - _pair_weight_at_omega(3, x),
}

# Rejilla de búsqueda de cruces en g/ω
CROSSOVER_GRID = np.linspace(0.01, SCAN_STOP, 400)


@lru_cache(maxsize=1)
def _cached_crossovers() -> Tuple[Tuple[str, Tuple[float, ...]], ...]:
    result = []
    for name, criterion in CROSSOVER_CRITERIA.items():

        def f(g: float) -> float:
            return criterion(4.0 * g**2)

        roots: List[float] = []
        values = [f(g) for g in CROSSOVER_GRID]
        for lo, hi, f_lo, f_hi in zip(CROSSOVER_GRID, CROSSOVER_GRID[1:], values, values[1:]):
            if f_lo == 0.0:
                roots.append(float(lo))
            elif f_lo * f_hi < 0:
                roots.append(float(optimize.brentq(f, lo, hi, xtol=1e-10)))
        result.append((name, tuple(roots)))
    return tuple(result)
