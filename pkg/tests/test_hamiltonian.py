# tests/test_hamiltonian.py
"""
Pruebas del núcleo del modelo: construcción, diagonalización, convergencia
del corte y reglas de selección de paridad
"""
import math

import numpy as np
import pytest

from app.core.exceptions import ConvergenceError, InvalidInputError
from app.schemas.model import EigenSystem, ModelParams, TruncationConfig
from app.services.hamiltonian_service import HamiltonianService


@pytest.mark.unit
class TestBuildHamiltonian:
    """Pruebas de la matriz truncada"""

    def test_dimension_and_symmetry(self):
        """Dimensión 2(n_fock + 1) y simetría exacta"""
        params = ModelParams(delta=0.3, epsilon=0.2, omega=1.0, g=0.7)
        H = HamiltonianService.build_hamiltonian(params, 10)

        assert H.shape == (22, 22)
        assert np.array_equal(H, H.T)

    def test_matrix_entries(self):
        """Entradas en la base k = 2n + s"""
        params = ModelParams(delta=0.3, epsilon=0.2, omega=1.5, g=0.7)
        H = HamiltonianService.build_hamiltonian(params, 4)

        assert H[0, 0] == pytest.approx(-0.1)
        assert H[1, 1] == pytest.approx(0.1)
        assert H[2, 2] == pytest.approx(-0.1 + 1.5)
        assert H[3, 3] == pytest.approx(0.1 + 1.5)
        assert H[0, 1] == pytest.approx(-0.15)
        # g σ_z (a + a†): +g para |R⟩, −g para |L⟩
        assert H[0, 2] == pytest.approx(0.7)
        assert H[1, 3] == pytest.approx(-0.7)
        assert H[2, 4] == pytest.approx(0.7 * math.sqrt(2))
        assert H[0, 3] == 0.0

    def test_cutoff_too_small(self):
        """n_fock = 0 no representa el acoplamiento"""
        params = ModelParams(delta=0.3, omega=1.0, g=0.7)
        with pytest.raises(InvalidInputError):
            HamiltonianService.build_hamiltonian(params, 0)

    def test_params_validation(self):
        """ω ≤ 0 o valores no finitos se rechazan"""
        with pytest.raises(InvalidInputError):
            HamiltonianService.params_or_error(delta=0.1, epsilon=0.0, omega=0.0, g=0.1)
        with pytest.raises(InvalidInputError):
            HamiltonianService.params_or_error(delta=0.1, epsilon=math.nan, omega=1.0, g=0.1)
        with pytest.raises(InvalidInputError):
            HamiltonianService.params_or_error(delta=-0.1, epsilon=0.0, omega=1.0, g=0.1)


@pytest.mark.unit
class TestDiagonalize:
    """Pruebas de la descomposición propia"""

    def test_uncoupled_spectrum_exact(self):
        """Con g = 0 el espectro es nω ± √(Δ² + ε²)/2"""
        params = ModelParams(delta=0.1, epsilon=0.3, omega=1.0, g=0.0)
        eig = HamiltonianService.solve(params, 10)

        gap = math.hypot(0.1, 0.3)
        expected = np.sort([n + s * gap / 2 for n in range(11) for s in (-1, 1)])
        assert np.max(np.abs(eig.energies - expected)) < 1e-12

    def test_orthonormal_and_sorted(self):
        """Vectores ortonormales y energías ascendentes"""
        params = ModelParams(delta=0.1, epsilon=0.3, omega=1.0, g=0.6)
        eig = HamiltonianService.solve(params, 30)

        assert np.all(np.diff(eig.energies) >= 0)
        residual = np.max(np.abs(eig.vectors.T @ eig.vectors - np.eye(eig.dimension)))
        assert residual < 1e-10

    def test_sign_convention(self):
        """La componente de mayor módulo de cada vector es positiva"""
        params = ModelParams(delta=0.4, epsilon=0.25, omega=1.0, g=0.5)
        eig = HamiltonianService.solve(params, 20)

        pivots = np.argmax(np.abs(eig.vectors), axis=0)
        assert np.all(eig.vectors[pivots, np.arange(eig.dimension)] > 0)

    def test_arrays_are_read_only(self):
        """El sistema propio es inmutable"""
        eig = HamiltonianService.solve(ModelParams(delta=0.1, omega=1.0, g=0.2), 8)
        with pytest.raises(ValueError):
            eig.energies[0] = 1.0

    def test_rejects_asymmetric_matrix(self):
        """Una matriz no simétrica es un error de entrada"""
        H = np.array([[0.0, 1.0], [0.5, 0.0]])
        with pytest.raises(InvalidInputError):
            HamiltonianService.diagonalize(H)

    def test_rejects_non_finite_matrix(self):
        """Entradas no finitas son un error de entrada"""
        H = np.array([[0.0, np.nan], [np.nan, 0.0]])
        with pytest.raises(InvalidInputError):
            HamiltonianService.diagonalize(H)

    def test_rejects_non_square_matrix(self):
        """La matriz debe ser cuadrada"""
        with pytest.raises(InvalidInputError):
            HamiltonianService.diagonalize(np.zeros((2, 3)))

    def test_bias_symmetry(self):
        """E(ε) = E(−ε)"""
        params = ModelParams(delta=0.1, epsilon=0.37, omega=1.0, g=0.8)
        plus = HamiltonianService.solve(params, 40).energies
        minus = HamiltonianService.solve(params.with_epsilon(-0.37), 40).energies

        assert np.max(np.abs(plus - minus)) < 1e-10

    def test_eigensystem_shape_validation(self):
        """vectors debe ser cuadrada y coincidir con energies"""
        with pytest.raises(ValueError):
            EigenSystem(energies=np.zeros(3), vectors=np.zeros((2, 2)))


@pytest.mark.unit
class TestParity:
    """Pruebas de la simetría de paridad en ε = 0"""

    def test_definite_parity(self, small_delta):
        """Cada nivel bajo tiene paridad ±1"""
        eig = HamiltonianService.solve(small_delta(0.6), 30)
        parities = HamiltonianService.parity_expectations(eig)[:8]

        assert np.max(np.abs(np.abs(parities) - 1.0)) < 1e-8
        # el fundamental es par
        assert parities[0] == pytest.approx(1.0)

    def test_exact_degeneracy_puts_even_parity_first(self):
        """Con Δ = 0 el doblete fundamental se ordena (+1, −1)"""
        params = ModelParams(delta=0.0, epsilon=0.0, omega=1.0, g=0.5)
        eig = HamiltonianService.solve(params, 40)
        parities = HamiltonianService.parity_expectations(eig)

        assert eig.energies[0] == pytest.approx(-0.25, abs=1e-10)
        assert eig.energies[1] == pytest.approx(-0.25, abs=1e-10)
        assert parities[0] == pytest.approx(1.0)
        assert parities[1] == pytest.approx(-1.0)

    def test_selection_rules_flip(self, small_delta):
        """0→2, 1→3 permitidas bajo g/ω = 0.5 y prohibidas encima (0→3, 1→2 al revés)"""
        below = HamiltonianService.converged_eigensystem(small_delta(0.3))
        above = HamiltonianService.converged_eigensystem(small_delta(0.6))
        element = HamiltonianService.drive_matrix_element

        for eig, allowed, forbidden in (
            (below, ((0, 2), (1, 3)), ((0, 3), (1, 2))),
            (above, ((0, 3), (1, 2)), ((0, 2), (1, 3))),
        ):
            for i, j in allowed:
                assert element(eig, i, j) > 1e-3
            for i, j in forbidden:
                assert element(eig, i, j) < 1e-10

    def test_drive_matrix_matches_elements(self, small_delta):
        """drive_matrix es simétrica y coincide con drive_matrix_element"""
        eig = HamiltonianService.solve(small_delta(0.4, epsilon=0.2), 30)
        M = HamiltonianService.drive_matrix(eig, 6)

        assert M.shape == (6, 6)
        assert np.allclose(M, M.T, atol=1e-12)
        assert M[0, 2] == pytest.approx(HamiltonianService.drive_matrix_element(eig, 0, 2))

    def test_bare_oscillator_element(self):
        """Sin acoplamiento ⟨2|x|0⟩ = 1 y ⟨1|x|0⟩ = 0"""
        eig = HamiltonianService.solve(ModelParams(delta=0.1, epsilon=0.0, omega=1.0, g=0.0), 16)

        assert HamiltonianService.drive_matrix_element(eig, 0, 2) == pytest.approx(1.0)
        assert HamiltonianService.drive_matrix_element(eig, 0, 1) == pytest.approx(0.0, abs=1e-12)

    def test_signed_pair_splitting_uncoupled(self):
        """Con g = 0: s_0 = Δ y s_1 = −Δ"""
        params = ModelParams(delta=0.1, epsilon=0.0, omega=1.0, g=0.0)

        assert HamiltonianService.signed_pair_splitting(params, 0, 16) == pytest.approx(0.1)
        assert HamiltonianService.signed_pair_splitting(params, 1, 16) == pytest.approx(-0.1)

    def test_signed_pair_splitting_changes_sign(self, small_delta):
        """s_1 cambia de signo entre g/ω = 0.3 y 0.6"""
        assert HamiltonianService.signed_pair_splitting(small_delta(0.3), 1) < 0
        assert HamiltonianService.signed_pair_splitting(small_delta(0.6), 1) > 0


@pytest.mark.unit
class TestConvergence:
    """Pruebas del corte de Fock adaptativo"""

    def test_cutoff_grows_with_coupling(self):
        """El corte inicial escala como 8(g/ω)² + 8"""
        eig = HamiltonianService.converged_eigensystem(ModelParams(delta=0.1, omega=1.0, g=2.0))
        assert eig.n_fock >= 40
        print(f"Corte convergido: {eig.n_fock}")

    def test_converged_spectrum_is_stable(self, small_delta):
        """El espectro convergido coincide con uno a corte mucho mayor"""
        params = small_delta(1.0, epsilon=0.5)
        eig = HamiltonianService.converged_eigensystem(params)
        reference = HamiltonianService.solve(params, 120)

        assert np.max(np.abs(eig.energies[:8] - reference.energies[:8])) < 1e-7

    def test_convergence_failure(self):
        """Sin margen para crecer se lanza ConvergenceError con ambos espectros"""
        trunc = TruncationConfig(n_fock=16, max_fock=16, n_levels_checked=8)
        with pytest.raises(ConvergenceError) as exc:
            HamiltonianService.converged_eigensystem(ModelParams(delta=0.1, omega=1.0, g=0.3), trunc)

        assert len(exc.value.previous) == 8
        assert len(exc.value.last) == 8
        assert exc.value.exit_code == 3

    def test_transition_frequency(self, small_delta):
        """ω_ij = E_j − E_i con índices validados"""
        eig = HamiltonianService.solve(small_delta(0.2), 16)

        assert HamiltonianService.transition_frequency(eig, 0, 2) == pytest.approx(
            eig.energies[2] - eig.energies[0]
        )
        with pytest.raises(InvalidInputError):
            HamiltonianService.transition_frequency(eig, 2, 1)
        with pytest.raises(InvalidInputError):
            HamiltonianService.transition_frequency(eig, 0, eig.dimension)
