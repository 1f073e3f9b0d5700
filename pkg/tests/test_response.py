# tests/test_response.py
"""
Pruebas del modelo de respuesta: poblaciones térmicas, reflexión y rejillas
"""
import logging

import numpy as np
import pytest
from pydantic import ValidationError

from app.core.exceptions import InvalidInputError
from app.schemas.model import ModelParams
from app.schemas.response import EpsilonSweep, ProbeConfig, ThermalConfig
from app.services.hamiltonian_service import HamiltonianService
from app.services.response_service import ResponseService


@pytest.fixture
def uncoupled_eig():
    """Qubit y oscilador desacoplados: ω_02 = ω y ⟨2|x|0⟩ = 1"""
    return HamiltonianService.solve(ModelParams(delta=0.1, epsilon=0.0, omega=1.0, g=0.0), 16)


@pytest.mark.unit
class TestThermalPopulations:
    """Pruebas de las poblaciones de Boltzmann"""

    def test_zero_temperature(self, uncoupled_eig):
        """kT = 0 puebla solo el fundamental"""
        populations = ResponseService.thermal_populations(uncoupled_eig, ThermalConfig(kt=0.0, max_levels=6))
        assert populations.tolist() == [1.0, 0.0, 0.0, 0.0, 0.0, 0.0]

    def test_finite_temperature(self, uncoupled_eig):
        """Normalizadas y decrecientes con la energía"""
        populations = ResponseService.thermal_populations(uncoupled_eig, ThermalConfig(kt=0.5, max_levels=8))

        assert populations.sum() == pytest.approx(1.0)
        assert np.all(np.diff(populations) <= 0)
        assert populations[1] / populations[0] == pytest.approx(np.exp(-0.1 / 0.5))

    def test_population_floor(self, uncoupled_eig):
        """Poblaciones bajo el umbral se anulan"""
        populations = ResponseService.thermal_populations(
            uncoupled_eig, ThermalConfig(kt=0.05, max_levels=8, population_floor=1e-3)
        )
        assert populations[2] == 0.0
        assert populations.sum() == pytest.approx(1.0)

    def test_thermal_energy_from_temperature(self):
        """20 mK ≈ 0.4167 GHz"""
        assert ResponseService.thermal_energy_from_temperature(20.0) == pytest.approx(0.41673, abs=1e-4)
        with pytest.raises(InvalidInputError):
            ResponseService.thermal_energy_from_temperature(-1.0)


@pytest.mark.unit
class TestReflection:
    """Pruebas del coeficiente de reflexión"""

    def test_single_line_at_resonance(self, uncoupled_eig):
        """En resonancia R = Ω²/(Ω² + Γ²)"""
        probe = ProbeConfig(amplitude_ap=2e-3, gamma=3e-3, r0=1.0)
        value = ResponseService.reflection(uncoupled_eig, probe, ThermalConfig(), 1.0)
        assert value == pytest.approx(4.0 / 13.0, rel=1e-9)

    def test_lorentzian_detuning(self, uncoupled_eig):
        """Fuera de resonancia decae como una lorentziana"""
        probe = ProbeConfig(amplitude_ap=2e-3, gamma=3e-3, r0=0.5)
        value = ResponseService.reflection(uncoupled_eig, probe, ThermalConfig(), 1.01)
        expected = 0.5 * 4e-6 / (4e-6 + 1e-4 + 9e-6)
        assert value == pytest.approx(expected, rel=1e-6)

    def test_gamma_override(self, uncoupled_eig):
        """Γ por transición"""
        probe = ProbeConfig(amplitude_ap=2e-3, gamma=3e-3, gamma_overrides={"0-2": 1e-3})
        assert probe.gamma_for(0, 2) == 1e-3
        assert probe.gamma_for(1, 3) == 3e-3

        value = ResponseService.reflection(uncoupled_eig, probe, ThermalConfig(), 1.0)
        assert value == pytest.approx(4.0 / 5.0, rel=1e-9)

    def test_invalid_override_key(self):
        """Las claves deben tener forma 'i-j'"""
        with pytest.raises(ValidationError):
            ProbeConfig(gamma_overrides={"02": 1e-3})

    def test_clamped_with_warning(self, uncoupled_eig, monkeypatch, caplog):
        """Una suma mayor que 1 se recorta y se avisa"""
        monkeypatch.setattr(ResponseService, "reflection_sum", staticmethod(lambda *args: np.array([1.5])))
        with caplog.at_level(logging.WARNING):
            value = ResponseService.reflection(uncoupled_eig, ProbeConfig(), ThermalConfig(), 1.0)

        assert value == 1.0
        assert any("1.5000" in record.getMessage() for record in caplog.records)

    def test_negative_probe_frequency(self, uncoupled_eig):
        """ω_p < 0 es inválido"""
        with pytest.raises(InvalidInputError):
            ResponseService.reflection(uncoupled_eig, ProbeConfig(), ThermalConfig(), -1.0)


@pytest.mark.unit
class TestTransmissionGrid:
    """Pruebas de la rejilla T(ε, ω_p)"""

    def test_shape_and_range(self, small_delta):
        """Forma (n_ε, n_p) y valores en [0, 1]"""
        sweep = EpsilonSweep(template=small_delta(0.3), epsilons=np.linspace(-1.0, 1.0, 5).tolist())
        grid = ResponseService.transmission_grid(
            sweep, ProbeConfig(), ThermalConfig(kt=0.2), probe_axis=np.linspace(0.8, 1.2, 11), workers=2
        )

        assert grid.shape == (5, 11)
        assert np.all((grid.values >= 0) & (grid.values <= 1))
        assert grid.clamped_points == 0

    def test_bias_symmetry(self, small_delta):
        """T(ε) = T(−ε) sobre un eje simétrico"""
        sweep = EpsilonSweep(template=small_delta(0.3), epsilons=np.linspace(-1.0, 1.0, 9).tolist())
        grid = ResponseService.transmission_grid(
            sweep, ProbeConfig(), ThermalConfig(kt=0.5), probe_axis=np.linspace(0.8, 1.2, 21)
        )
        assert np.max(np.abs(grid.values - grid.values[::-1])) < 1e-8

    def test_resonance_dip(self):
        """Sin acoplamiento la transmisión en ω_p = ω es 1 − 4/13"""
        sweep = EpsilonSweep(template=ModelParams(delta=0.1, omega=1.0, g=0.0), epsilons=[0.0])
        grid = ResponseService.transmission_grid(sweep, ProbeConfig(), ThermalConfig(), probe_axis=[1.0])
        assert grid.values[0, 0] == pytest.approx(9.0 / 13.0, rel=1e-9)

    def test_default_probe_axis(self, small_delta):
        """Sin eje explícito se usan 201 puntos en [0.8ω, 1.2ω]"""
        sweep = EpsilonSweep(template=small_delta(0.2), epsilons=[0.0])
        grid = ResponseService.transmission_grid(sweep, ProbeConfig(), ThermalConfig())

        assert grid.shape == (1, 201)
        assert grid.probe_axis[0] == pytest.approx(0.8)
        assert grid.probe_axis[-1] == pytest.approx(1.2)

    def test_invalid_probe_axis(self, small_delta):
        """Eje desordenado o negativo es inválido"""
        sweep = EpsilonSweep(template=small_delta(0.2), epsilons=[0.0])
        with pytest.raises(InvalidInputError):
            ResponseService.transmission_grid(sweep, ProbeConfig(), ThermalConfig(), probe_axis=[1.0, 0.9])
        with pytest.raises(InvalidInputError):
            ResponseService.transmission_grid(sweep, ProbeConfig(), ThermalConfig(), probe_axis=[-0.1, 0.9])

    def test_unsorted_sweep_rejected(self, small_delta):
        """Las muestras de ε deben estar ordenadas"""
        with pytest.raises(ValidationError):
            EpsilonSweep(template=small_delta(0.2), epsilons=[0.5, 0.0])

    def test_default_epsilon_axis(self):
        """241 puntos en [−2ω, 2ω]"""
        axis = ResponseService.default_epsilon_axis(2.0)
        assert len(axis) == 241
        assert axis[0] == pytest.approx(-4.0)
        assert axis[-1] == pytest.approx(4.0)


@pytest.mark.unit
class TestTransitionLines:
    """Pruebas de las trazas ω_ij(ε)"""

    def test_uncoupled_photon_line(self):
        """Sin acoplamiento la línea 0→2 es plana en ω con elemento 1"""
        sweep = EpsilonSweep(
            template=ModelParams(delta=0.1, omega=1.0, g=0.0), epsilons=np.linspace(-0.5, 0.5, 5).tolist()
        )
        (line,) = ResponseService.transition_lines(sweep, [(0, 2)], workers=2)

        assert line.label == "0-2"
        assert len(line.points) == 5
        for point in line.points:
            assert point.frequency == pytest.approx(1.0)
            assert point.matrix_element == pytest.approx(1.0)
        assert line.at(0.24).epsilon == pytest.approx(0.25)

    def test_invalid_pair(self, small_delta):
        """i < j es obligatorio"""
        sweep = EpsilonSweep(template=small_delta(0.2), epsilons=[0.0])
        with pytest.raises(InvalidInputError):
            ResponseService.transition_lines(sweep, [(2, 1)])
