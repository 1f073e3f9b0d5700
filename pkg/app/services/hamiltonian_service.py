"""
app/services/hamiltonian_service.py

Servicio del núcleo del modelo.
Construye y diagonaliza el Hamiltoniano de Rabi con sesgo truncado

    H = −(Δ/2)σ_x − (ε/2)σ_z + ω a†a + g σ_z (a + a†)

y expone energías, frecuencias de transición y elementos de matriz del
operador de sondeo x = a + a†.
"""
import logging
import math
from typing import Optional, Tuple

import numpy as np
from pydantic import ValidationError
from scipy import linalg

from app.core.exceptions import ConvergenceError, InvalidInputError
from app.schemas.model import EigenSystem, ModelParams, TruncationConfig

logger = logging.getLogger(__name__)

# σ_z por índice de qubit s (s = 0 ↔ |R⟩, s = 1 ↔ |L⟩)
SIGMA_Z = np.array([1.0, -1.0])

# Tolerancias
SYMMETRY_TOL = 1e-12
DEGENERACY_TOL = 1e-10


class HamiltonianService:
    """
    Servicio para construir, diagonalizar y consultar el Hamiltoniano truncado.
    Todas las operaciones son funciones puras de sus entradas.
    """

    @staticmethod
    def build_hamiltonian(params: ModelParams, n_fock: int) -> np.ndarray:
        """
        Construye la matriz real simétrica de dimensión 2(n_fock + 1).

        Args:
            params: Parámetros del modelo
            n_fock: Corte de número de fotones (inclusivo, ≥ 1)

        Returns:
            np.ndarray: Hamiltoniano en la base k = 2n + s
        """
        if n_fock < 1:
            raise InvalidInputError("n_fock must be >= 1 to represent the coupling term")

        dim = 2 * (n_fock + 1)
        n = np.arange(n_fock + 1)
        H = np.zeros((dim, dim))

        # Diagonal: −(ε/2)σ_z + ω n
        H[2 * n, 2 * n] = -params.epsilon / 2 + params.omega * n
        H[2 * n + 1, 2 * n + 1] = params.epsilon / 2 + params.omega * n

        # −(Δ/2)σ_x acopla s = 0 y s = 1 con el mismo n
        H[2 * n, 2 * n + 1] = -params.delta / 2

        # g σ_z (a + a†): ⟨n+1, s|…|n, s⟩ = g z_s √(n+1)
        lower = n[:-1]
        amplitude = params.g * np.sqrt(lower + 1.0)
        for s in (0, 1):
            H[2 * lower + s, 2 * (lower + 1) + s] = SIGMA_Z[s] * amplitude

        # Triángulo superior reflejado: simetría exacta
        return np.triu(H) + np.triu(H, 1).T

    @staticmethod
    def diagonalize(
        H: np.ndarray,
        params: Optional[ModelParams] = None,
        n_fock: Optional[int] = None,
    ) -> EigenSystem:
        """
        Descomposición propia completa de una matriz real simétrica.

        Args:
            H: Matriz simétrica con entradas finitas
            params: Parámetros que la generaron (opcional)
            n_fock: Corte usado (opcional)

        Returns:
            EigenSystem: Energías ascendentes y vectores ortonormales
        """
        H = np.asarray(H, dtype=float)
        if H.ndim != 2 or H.shape[0] != H.shape[1]:
            raise InvalidInputError("H must be a square matrix")
        if not np.all(np.isfinite(H)):
            raise InvalidInputError("H must have finite entries")

        scale = max(1.0, float(np.max(np.abs(H)))) if H.size else 1.0
        asymmetry = float(np.max(np.abs(H - H.T))) if H.size else 0.0
        if asymmetry > SYMMETRY_TOL * scale:
            raise InvalidInputError(f"H is not symmetric (max asymmetry {asymmetry:.3e})")

        energies, vectors = linalg.eigh(H)
        vectors = HamiltonianService._fix_signs(vectors)
        return EigenSystem(energies=energies, vectors=vectors, params=params, n_fock=n_fock)

    @staticmethod
    def solve(params: ModelParams, n_fock: int) -> EigenSystem:
        """
        Diagonaliza a corte fijo.

        En ε = 0 el Hamiltoniano conmuta con la paridad P = σ_x ⊗ (−1)^{a†a};
        se diagonaliza cada sector por separado para que cada vector tenga
        paridad definida incluso en cruces exactos de niveles.
        """
        H = HamiltonianService.build_hamiltonian(params, n_fock)
        if params.epsilon != 0.0:
            return HamiltonianService.diagonalize(H, params=params, n_fock=n_fock)

        energies = []
        vectors = []
        parities = []
        for parity in (1.0, -1.0):
            U = HamiltonianService._parity_basis(n_fock, parity)
            block_energies, block_vectors = linalg.eigh(U.T @ H @ U)
            energies.append(block_energies)
            vectors.append(U @ block_vectors)
            parities.append(np.full(block_energies.shape, parity))

        energies = np.concatenate(energies)
        vectors = np.concatenate(vectors, axis=1)
        parities = np.concatenate(parities)

        order = HamiltonianService._degenerate_order(energies, parities)
        vectors = HamiltonianService._fix_signs(vectors[:, order])
        return EigenSystem(
            energies=energies[order], vectors=vectors, params=params, n_fock=n_fock
        )

    @staticmethod
    def converged_eigensystem(
        params: ModelParams, trunc: Optional[TruncationConfig] = None
    ) -> EigenSystem:
        """
        Sistema propio al menor corte probado cuyo espectro bajo es estable
        cuando el corte crece un 50 %.

        Args:
            params: Parámetros del modelo
            trunc: Configuración de truncamiento (por defecto, la de settings)

        Returns:
            EigenSystem: Sistema propio convergido
        """
        trunc = trunc or TruncationConfig()
        ratio = params.g / params.omega
        # La población de fotones del estado desplazado escala como (g/ω)²
        cutoff = max(trunc.n_fock, 16, math.ceil(8 * ratio**2 + 8))
        cutoff = min(cutoff, trunc.max_fock)
        checked = trunc.n_levels_checked

        current = HamiltonianService.solve(params, cutoff)
        while True:
            bigger = min(math.ceil(1.5 * cutoff), trunc.max_fock)
            if bigger <= cutoff:
                raise ConvergenceError(
                    f"Fock cutoff did not converge within max_fock={trunc.max_fock}",
                    previous=current.energies[:checked],
                    last=current.energies[:checked],
                )

            candidate = HamiltonianService.solve(params, bigger)
            drift = np.abs(candidate.energies[:checked] - current.energies[:checked])
            if np.all(drift < trunc.energy_tol):
                logger.debug(f"✅ Corte convergido en n_fock={cutoff}")
                return current

            logger.debug(f"🔄 Corte {cutoff} → {bigger} (deriva máx {drift.max():.2e})")
            if bigger == trunc.max_fock:
                raise ConvergenceError(
                    f"Fock cutoff did not converge within max_fock={trunc.max_fock}",
                    previous=current.energies[:checked],
                    last=candidate.energies[:checked],
                )
            cutoff, current = bigger, candidate

    @staticmethod
    def transition_frequency(eig: EigenSystem, i: int, j: int) -> float:
        """
        Frecuencia de transición ω_ij = E_j − E_i.

        Args:
            eig: Sistema propio
            i: Nivel inferior
            j: Nivel superior (j > i)

        Returns:
            float: Frecuencia no negativa
        """
        if not 0 <= i < j < eig.dimension:
            raise InvalidInputError(f"Levels must satisfy 0 <= i < j < {eig.dimension}")
        return float(eig.energies[j] - eig.energies[i])

    @staticmethod
    def drive_matrix_element(eig: EigenSystem, i: int, j: int) -> float:
        """
        Elemento de matriz |⟨j|(a + a†)|i⟩| en la base truncada.
        """
        for level in (i, j):
            if not 0 <= level < eig.dimension:
                raise InvalidInputError(f"Level {level} outside 0..{eig.dimension - 1}")
        column = HamiltonianService.apply_drive(eig.vectors[:, [i]])
        return float(abs(eig.vectors[:, j] @ column[:, 0]))

    @staticmethod
    def drive_matrix(eig: EigenSystem, levels: Optional[int] = None) -> np.ndarray:
        """
        Matriz |⟨j|(a + a†)|i⟩| entre los primeros `levels` estados.
        """
        levels = eig.dimension if levels is None else min(levels, eig.dimension)
        V = eig.vectors[:, :levels]
        return np.abs(V.T @ HamiltonianService.apply_drive(V))

    @staticmethod
    def parity_expectations(eig: EigenSystem) -> np.ndarray:
        """
        Valores esperados ⟨ψ_k|P|ψ_k⟩ con P = σ_x ⊗ (−1)^{a†a}.
        """
        n_rows = eig.dimension // 2
        V = eig.vectors.reshape(n_rows, 2, eig.dimension)
        signs = (-1.0) ** np.arange(n_rows)
        return 2.0 * np.einsum("n,nk,nk->k", signs, V[:, 0, :], V[:, 1, :])

    @staticmethod
    def sector_energies(params: ModelParams, n_fock: int) -> Tuple[np.ndarray, np.ndarray]:
        """
        Energías ascendentes de los sectores de paridad (+, −) en ε = 0.
        """
        H = HamiltonianService.build_hamiltonian(params.with_epsilon(0.0), n_fock)
        result = []
        for parity in (1.0, -1.0):
            U = HamiltonianService._parity_basis(n_fock, parity)
            result.append(linalg.eigh(U.T @ H @ U, eigvals_only=True))
        return result[0], result[1]

    @staticmethod
    def signed_pair_splitting(
        params: ModelParams, n: int, n_fock: Optional[int] = None
    ) -> float:
        """
        Desdoblamiento con signo E_n^(−) − E_n^(+) del n-ésimo par en ε = 0.
        Sus ceros marcan los cruces E_{2n} = E_{2n+1}.
        """
        if n < 0:
            raise InvalidInputError("pair index must be >= 0")
        symmetric = params.with_epsilon(0.0)
        if n_fock is None:
            n_fock = HamiltonianService.converged_eigensystem(symmetric).n_fock
        plus, minus = HamiltonianService.sector_energies(symmetric, n_fock)
        return float(minus[n] - plus[n])

    @staticmethod
    def params_or_error(**values: float) -> ModelParams:
        """Construye ModelParams convirtiendo errores de validación en InvalidInputError"""
        try:
            return ModelParams(**values)
        except ValidationError as e:
            raise InvalidInputError(f"Invalid model parameters: {e.errors()[0]['msg']}") from e

    # ------------------------------------------------------------------
    # Auxiliares internos
    # ------------------------------------------------------------------

    @staticmethod
    def _parity_basis(n_fock: int, parity: float) -> np.ndarray:
        """Columnas (|n,R⟩ + p(−1)^n |n,L⟩)/√2, base ortonormal del sector p"""
        n = np.arange(n_fock + 1)
        U = np.zeros((2 * (n_fock + 1), n_fock + 1))
        U[2 * n, n] = 1 / np.sqrt(2)
        U[2 * n + 1, n] = parity * (-1.0) ** n / np.sqrt(2)
        return U

    @staticmethod
    def apply_drive(V: np.ndarray) -> np.ndarray:
        """(a + a†) ⊗ 1 aplicado a columnas en la base k = 2n + s"""
        n_rows = V.shape[0] // 2
        W = V.reshape(n_rows, 2, -1)
        out = np.zeros_like(W)
        root = np.sqrt(np.arange(1, n_rows, dtype=float))[:, None, None]
        out[1:] += root * W[:-1]   # a†: √n |n−1⟩ → |n⟩
        out[:-1] += root * W[1:]   # a:  √(n+1) |n+1⟩ → |n⟩
        return out.reshape(V.shape)

    @staticmethod
    def _fix_signs(vectors: np.ndarray) -> np.ndarray:
        """Fase determinista: la componente de mayor módulo es positiva"""
        pivots = np.argmax(np.abs(vectors), axis=0)
        signs = np.sign(vectors[pivots, np.arange(vectors.shape[1])])
        signs[signs == 0] = 1.0
        return vectors * signs

    @staticmethod
    def _degenerate_order(energies: np.ndarray, parities: np.ndarray) -> np.ndarray:
        """Orden por energía y, dentro de una degeneración, paridad +1 primero"""
        order = list(np.argsort(energies, kind="stable"))
        scale = max(1.0, float(np.max(np.abs(energies))))
        swapped = True
        while swapped:
            swapped = False
            for k in range(len(order) - 1):
                a, b = order[k], order[k + 1]
                close = energies[b] - energies[a] < DEGENERACY_TOL * scale
                if close and parities[a] < parities[b]:
                    order[k], order[k + 1] = b, a
                    swapped = True
        return np.array(order)
