# tests/test_helpers.py
"""
Pruebas de las funciones de utilidad y de la jerarquía de errores
"""
import pytest

from app.core.exceptions import ConvergenceError, FitNotConvergedError, InvalidInputError, ObservationParseError
from app.utils.helpers import generate_error_response, pair_label, parse_pairs


@pytest.mark.unit
class TestParsePairs:
    """Pruebas del parser de transiciones"""

    def test_valid_list(self):
        assert parse_pairs("0-1, 0-2,1 - 3") == [(0, 1), (0, 2), (1, 3)]

    def test_empty(self):
        assert parse_pairs("") == []
        assert parse_pairs("   ") == []

    @pytest.mark.parametrize("text", ["0-0", "2-1", "a-b", "0,1", "0-1-2"])
    def test_invalid(self, text):
        with pytest.raises(InvalidInputError):
            parse_pairs(text)

    def test_label(self):
        assert pair_label(1, 3) == "omega_1_3"


@pytest.mark.unit
class TestErrorResponses:
    """Pruebas de las respuestas de error y sus códigos de salida"""

    def test_payload_without_details(self):
        payload = generate_error_response("bad", "INVALID_INPUT", 2)
        assert payload == {"error": "bad", "code": "INVALID_INPUT", "exit_code": 2}

    def test_payload_with_details(self):
        payload = generate_error_response("bad", details={"line": 3})
        assert payload["details"] == {"line": 3}
        assert payload["exit_code"] == 1

    def test_exit_codes(self):
        assert InvalidInputError("x").exit_code == 2
        assert ObservationParseError("x", line=4).exit_code == 2
        assert ConvergenceError("x").exit_code == 3
        assert FitNotConvergedError("x").exit_code == 5

    def test_convergence_error_at_epsilon(self):
        """La copia anotada conserva las energías y añade ε"""
        error = ConvergenceError("no convergence", previous=[0.1], last=[0.2]).at_epsilon(0.5)
        assert error.epsilon == 0.5
        assert error.details["previous"] == [0.1]
        assert "epsilon=0.5" in error.message
