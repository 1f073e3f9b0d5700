"""
app/services/regime_service.py

Servicio de clasificación de regímenes.
Lee la forma (pico, valle, plano) de las curvas ω_ij(ε) en ε=0 y ε=±ω,
las reglas de selección en ε=0, y ubica g/ω en los cinco intervalos de
acoplamiento o en los nueve patrones de niveles superiores.
"""
import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.core.config import settings
from app.core.exceptions import InvalidInputError, UnsupportedRegimeError
from app.schemas.analytic import BOUNDARY_NAMES
from app.schemas.model import EigenSystem, ModelParams, TruncationConfig
from app.schemas.regimes import HigherLevelPattern, LineShapeFeature, NearBoundary, RegimeReport
from app.services.analytic_service import AnalyticService
from app.services.hamiltonian_service import HamiltonianService

logger = logging.getLogger(__name__)

# Transiciones usadas como evidencia del intervalo
LOW_TRANSITIONS: Tuple[Tuple[int, int], ...] = ((0, 2), (1, 3), (0, 3), (1, 2))

# Nueve patrones (permitidas 2→4 y 3→5, 2→4 en ε=0, 2→4 en ε=±ω, 3→5 en ε=±ω),
# ordenados por g/ω, con los valores de muestra de cada celda
HIGHER_LEVEL_TABLE: Tuple[Tuple[Tuple[bool, str, str, str], Tuple[float, ...]], ...] = (
    ((True, "Peak", "Peak", "Dip"), (0.1, 0.2)),
    ((True, "Peak", "Peak", "Peak"), (0.3,)),
    ((False, "Peak", "Dip", "Peak"), (0.4,)),
    ((True, "Dip", "Dip", "Peak"), (0.5, 0.6)),
    ((True, "Dip", "Dip", "Dip"), (0.7,)),
    ((True, "Peak", "Dip", "Dip"), (0.8, 0.9)),
    ((False, "Peak", "Peak", "Peak"), (1.0, 1.1)),
    ((False, "Dip", "Peak", "Peak"), (1.2, 1.3)),
    ((False, "Dip", "Peak", "Dip"), (1.4, 1.5, 1.6)),
)

# Nombre de cada criterio del patrón, en el orden de la clave
PATTERN_CRITERIA: Tuple[str, ...] = (
    "allowed_24_35_at0",
    "shape_24_at0",
    "shape_24_at_eps_omega",
    "shape_35_at_eps_omega",
)

# Dos cruces más próximos que esto a g/ω empatan
CROSSOVER_TIE = 1e-6

# Niveles a menos de esta fracción de ω se consideran degenerados
DEGENERACY_FRACTION = 1e-6


class RegimeService:
    """
    Servicio de extracción de rasgos y clasificación.
    """

    @staticmethod
    def extract_features(
        params: ModelParams,
        transitions: Sequence[Tuple[int, int]],
        h: Optional[float] = None,
        locations: Sequence[str] = ("epsilon_zero", "epsilon_omega"),
    ) -> List[LineShapeFeature]:
        """
        Forma de cada línea en ε=0 y ε=ω a partir de la segunda diferencia
        centrada de ω_ij(ε): negativa → Peak, positiva → Dip, |·| < 1e−6ω/h² → Flat.

        Args:
            params: Plantilla del modelo (su ε se ignora)
            transitions: Pares (i, j) con i < j
            h: Paso en ε (por defecto CURVATURE_STEP·ω)
            locations: Puntos evaluados

        Returns:
            List[LineShapeFeature]: Un rasgo por transición y punto
        """
        step = settings.curvature_step * params.omega if h is None else h
        if not step > 0:
            raise InvalidInputError("finite-difference step h must be > 0")
        transitions = [(int(i), int(j)) for i, j in transitions]
        for i, j in transitions:
            if not 0 <= i < j:
                raise InvalidInputError(f"Invalid transition {i}-{j}: levels must satisfy 0 <= i < j")

        needed = max(j for _, j in transitions) + 2
        trunc = TruncationConfig(
            n_fock=max(16, needed),
            n_levels_checked=max(settings.n_levels_checked, needed),
        )

        center_zero = RegimeService._stencil(params, 0.0, step, trunc)[1]
        elements = {
            (i, j): HamiltonianService.drive_matrix_element(center_zero, i, j) for i, j in transitions
        }

        features: List[LineShapeFeature] = []
        for location in locations:
            eps0 = 0.0 if location == "epsilon_zero" else params.omega
            stencil = RegimeService._stencil(params, eps0, step, trunc)
            for i, j in transitions:
                values = [HamiltonianService.transition_frequency(eig, i, j) for eig in stencil]
                numerator = values[0] - 2.0 * values[1] + values[2]
                features.append(
                    LineShapeFeature(
                        transition=(i, j),
                        location=location,
                        shape=RegimeService.shape_from_difference(numerator, params.omega),
                        allowed=RegimeService.is_allowed(elements[(i, j)]),
                        second_difference=numerator / step**2,
                        matrix_element=elements[(i, j)],
                        ambiguous=RegimeService._is_degenerate(stencil[1], (i, j), params.omega),
                    )
                )
        return features

    @staticmethod
    def classify_low(params: ModelParams) -> RegimeReport:
        """
        Intervalo 1..5 de g/ω según las fronteras para Δ/ω, con los rasgos de
        las líneas 0→2, 1→3, 0→3 y 1→2 como evidencia.
        """
        RegimeService._check_domain(params)
        boundaries = AnalyticService.regime_boundaries(params.delta_ratio)
        g_ratio = params.g_ratio
        index = boundaries.interval_index(g_ratio)

        features = RegimeService.extract_features(params, LOW_TRANSITIONS)

        near = None
        name, distance = boundaries.nearest(g_ratio)
        # Bordes del intervalo que solo valen en el límite Δ→0
        limit_edges = [
            edge for edge in RegimeService._interval_edges(index)
            if boundaries.methods.get(edge) == "analytic-limit"
        ]
        if distance < settings.near_boundary_band:
            near = NearBoundary(boundary=name, value=getattr(boundaries, name), distance=distance)
            logger.warning(f"⚠️ g/ω={g_ratio:.4f} a {distance:.4f} de la frontera {name}")
        elif any(f.ambiguous for f in features):
            near = NearBoundary(boundary=name, value=getattr(boundaries, name), distance=distance, reason="ambiguous")
            logger.warning(f"⚠️ Niveles casi degenerados para g/ω={g_ratio:.4f}")
        elif limit_edges:
            edge = min(limit_edges, key=lambda e: abs(g_ratio - getattr(boundaries, e)))
            value = getattr(boundaries, edge)
            near = NearBoundary(boundary=edge, value=value, distance=abs(g_ratio - value), reason="analytic-limit")
            logger.warning(f"⚠️ La frontera {edge} del intervalo {index} es el límite Δ→0, no una raíz numérica")

        return RegimeReport(
            interval_index=index,
            bounds=boundaries.interval_bounds(index),
            g_ratio=g_ratio,
            delta_ratio=params.delta_ratio,
            boundaries=boundaries,
            features=features,
            near_boundary=near,
        )

    @staticmethod
    def classify_high(params: ModelParams) -> HigherLevelPattern:
        """
        Patrón de las líneas 2→4 y 3→5: permitidas en ε=0, forma de 2→4 en
        ε=0 y ε=±ω, forma de 3→5 en ε=±ω.
        """
        RegimeService._check_domain(params)
        features = RegimeService.extract_features(params, ((2, 4), (3, 5)))
        by_key = {(f.transition, f.location): f for f in features}

        pattern_key = (
            by_key[((2, 4), "epsilon_zero")].allowed and by_key[((3, 5), "epsilon_zero")].allowed,
            by_key[((2, 4), "epsilon_zero")].shape,
            by_key[((2, 4), "epsilon_omega")].shape,
            by_key[((3, 5), "epsilon_omega")].shape,
        )
        index, g_values = RegimeService.lookup_pattern(pattern_key)
        measured, crossover, cell_key = None, None, pattern_key
        if index is None:
            index, crossover = RegimeService.resolve_pattern(pattern_key, params.g_ratio)
            measured = pattern_key
            if index is None:
                logger.warning(f"⚠️ Patrón {pattern_key} fuera de la tabla para g/ω={params.g_ratio:.4f}")
            else:
                cell_key, g_values = HIGHER_LEVEL_TABLE[index - 1]
                logger.warning(
                    f"⚠️ Patrón {pattern_key} fuera de la tabla para g/ω={params.g_ratio:.4f}; "
                    f"celda {index} por el cruce de {crossover.boundary} en {crossover.value:.4f}"
                )

        return HigherLevelPattern(
            allowed_24_35_at0=cell_key[0],
            shape_24_at0=cell_key[1],
            shape_24_at_eps_omega=cell_key[2],
            shape_35_at_eps_omega=cell_key[3],
            interval_index=index,
            g_values=list(g_values),
            features=[f for f in features if f.location == "epsilon_omega" or f.transition == (2, 4)],
            measured=measured,
            near_crossover=crossover,
        )

    @staticmethod
    def resolve_pattern(
        key: Tuple[bool, str, str, str], g_ratio: float
    ) -> Tuple[Optional[int], Optional[NearBoundary]]:
        """
        Celda para un patrón medido que no está en la tabla.

        Entre g/ω vecinos dos criterios cambian en cruces distintos, y entre
        ambos cruces aparece un patrón sin celda. Se elige la celda que difiere
        en un solo criterio cuyo cruce (límite Δ→0) está más cerca de g/ω.

        Args:
            key: Patrón medido
            g_ratio: g/ω evaluado

        Returns:
            Tuple[Optional[int], Optional[NearBoundary]]: Celda y cruce usado, o
            (None, None) si no hay candidata o dos empatan
        """
        crossovers = AnalyticService.higher_level_crossovers()
        candidates: List[Tuple[float, int, NearBoundary]] = []
        for index, (pattern, _) in enumerate(HIGHER_LEVEL_TABLE, start=1):
            differing = [name for name, a, b in zip(PATTERN_CRITERIA, pattern, key) if a != b]
            if len(differing) != 1 or not crossovers.get(differing[0]):
                continue
            value = min(crossovers[differing[0]], key=lambda c: abs(g_ratio - c))
            distance = abs(g_ratio - value)
            note = NearBoundary(boundary=differing[0], value=value, distance=distance, reason="crossover")
            candidates.append((distance, index, note))

        if not candidates:
            return None, None
        candidates.sort(key=lambda c: c[0])
        if len(candidates) > 1 and candidates[1][0] - candidates[0][0] < CROSSOVER_TIE:
            return None, None
        _, index, note = candidates[0]
        return index, note

    @staticmethod
    def lookup_pattern(key: Tuple[bool, str, str, str]) -> Tuple[Optional[int], Tuple[float, ...]]:
        """Celda 1..9 del patrón, o (None, ()) si no está en la tabla"""
        for index, (pattern, g_values) in enumerate(HIGHER_LEVEL_TABLE, start=1):
            if pattern == tuple(key):
                return index, g_values
        return None, ()

    @staticmethod
    def is_deep_strong(params: ModelParams) -> bool:
        """Acoplamiento profundo: g ≥ max(ω, √(Δω)/2)"""
        return params.g >= max(params.omega, math.sqrt(params.delta * params.omega) / 2)

    @staticmethod
    def large_gap_observables(params: ModelParams, scan_points: int = 81) -> Dict[str, Optional[float]]:
        """
        Cantidades legibles en espectros con Δ ≥ ω, donde la taxonomía de cinco
        intervalos no aplica: ω_01 lejos del punto de simetría, ω_01 y ω_12 en
        ε=0 y el menor ε > 0 con ω_01 = ω_12.
        """
        far = 2.0 * max(params.delta, params.omega)

        def frequencies(eps: float) -> Tuple[float, float]:
            eig = HamiltonianService.converged_eigensystem(params.with_epsilon(eps))
            return (
                HamiltonianService.transition_frequency(eig, 0, 1),
                HamiltonianService.transition_frequency(eig, 1, 2),
            )

        w01_zero, w12_zero = frequencies(0.0)
        w01_far, _ = frequencies(far)

        def gap(eps: float) -> float:
            w01, w12 = frequencies(eps)
            return w01 - w12

        crossing = None
        grid = np.linspace(0.0, far, scan_points)
        previous = gap(grid[0])
        for lo, hi in zip(grid, grid[1:]):
            current = gap(hi)
            if np.sign(current) != np.sign(previous) and previous != 0.0:
                f_lo = previous
                for _ in range(40):
                    mid = 0.5 * (lo + hi)
                    f_mid = gap(mid)
                    if np.sign(f_mid) == np.sign(f_lo):
                        lo, f_lo = mid, f_mid
                    else:
                        hi = mid
                crossing = float(0.5 * (lo + hi))
                break
            previous = current

        return {
            "omega01_far": w01_far,
            "epsilon_far": far,
            "omega01_zero": w01_zero,
            "omega12_zero": w12_zero,
            "crossing_epsilon": crossing,
        }

    @staticmethod
    def shape_from_difference(numerator: float, omega: float = 1.0) -> str:
        """Forma a partir del numerador f(ε+h) − 2f(ε) + f(ε−h)"""
        if abs(numerator) < 1e-6 * omega:
            return "Flat"
        return "Peak" if numerator < 0 else "Dip"

    @staticmethod
    def is_allowed(matrix_element: float) -> bool:
        """Umbral relativo al elemento 0→1 del oscilador desnudo (que vale 1)"""
        return matrix_element > settings.allowed_threshold

    # ------------------------------------------------------------------
    # Auxiliares internos
    # ------------------------------------------------------------------

    @staticmethod
    def _check_domain(params: ModelParams) -> None:
        if params.delta_ratio >= 1:
            raise UnsupportedRegimeError(
                f"Regime taxonomy is defined for delta/omega < 1 (got {params.delta_ratio:g}); "
                "use large_gap_observables instead"
            )

    @staticmethod
    def _interval_edges(index: int) -> List[str]:
        """Fronteras que delimitan el intervalo 1..5"""
        edges = [None, *BOUNDARY_NAMES, None]
        return [name for name in (edges[index - 1], edges[index]) if name is not None]

    @staticmethod
    def _stencil(
        params: ModelParams, eps0: float, step: float, trunc: TruncationConfig
    ) -> List[EigenSystem]:
        """Sistemas propios en ε0 − h, ε0, ε0 + h con un mismo corte"""
        center = params.with_epsilon(eps0)
        n_fock = HamiltonianService.converged_eigensystem(center, trunc).n_fock
        return [
            HamiltonianService.solve(params.with_epsilon(eps0 - step), n_fock),
            HamiltonianService.solve(center, n_fock),
            HamiltonianService.solve(params.with_epsilon(eps0 + step), n_fock),
        ]

    @staticmethod
    def _is_degenerate(eig: EigenSystem, transition: Tuple[int, int], omega: float) -> bool:
        tol = DEGENERACY_FRACTION * omega
        energies = eig.energies
        for level in transition:
            for neighbour in (level - 1, level + 1):
                if 0 <= neighbour < eig.dimension and abs(energies[level] - energies[neighbour]) < tol:
                    return True
        return False
