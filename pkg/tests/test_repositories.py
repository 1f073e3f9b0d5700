# tests/test_repositories.py
"""
Pruebas de persistencia: rejillas, mapas P6, observaciones y manifiestos
"""
import numpy as np
import pytest

from app.core.exceptions import ObservationParseError
from app.repositories.artifact_repository import ArtifactRepository
from app.repositories.observation_repository import ObservationRepository
from app.repositories.spectrum_repository import SpectrumRepository
from app.schemas.model import ModelParams
from app.schemas.response import ProbeConfig, SpectrumGrid, ThermalConfig
from app.schemas.responses import RunManifest

HEADER = "bias,bias_kind,i,j,frequency,weight\n"


@pytest.fixture
def grid():
    """Rejilla 3 × 2 con valores conocidos"""
    return SpectrumGrid(
        epsilon_axis=np.array([-1.0, 0.0, 1.0]),
        probe_axis=np.array([0.9, 1.1]),
        values=np.array([[0.0, 1.0], [0.5, 0.25], [1.0, 0.123456789123]]),
        template=ModelParams(delta=0.1, omega=1.0, g=0.3),
        probe=ProbeConfig(),
        thermal=ThermalConfig(),
    )


@pytest.mark.unit
class TestSpectrumRepository:
    """Pruebas de la serialización de rejillas"""

    def test_grid_frame_is_epsilon_major(self, grid):
        """Filas en orden ε primero, ω_p después"""
        frame = SpectrumRepository().grid_frame(grid)

        assert list(frame.columns) == ["epsilon", "omega_p", "transmission"]
        assert frame["epsilon"].tolist() == [-1.0, -1.0, 0.0, 0.0, 1.0, 1.0]
        assert frame["omega_p"].tolist() == [0.9, 1.1, 0.9, 1.1, 0.9, 1.1]
        assert frame["transmission"].tolist()[:4] == [0.0, 1.0, 0.5, 0.25]

    def test_csv_round_trip(self, grid, tmp_path):
        """Nueve cifras significativas y texto idéntico al reescribir"""
        repository = SpectrumRepository()
        path = repository.save_grid_csv(grid, tmp_path / "grid.csv")
        text = path.read_text()

        assert text.splitlines()[0] == "epsilon,omega_p,transmission"
        assert "0.123456789\n" in text

        frame = repository.load_frame(path)
        assert repository.frame_text(frame) == text

    def test_json_payload(self, grid, tmp_path):
        """Ejes, forma, valores planos y metadatos"""
        payload = SpectrumRepository().grid_payload(grid)

        assert payload["shape"] == [3, 2]
        assert len(payload["values"]) == 6
        assert payload["metadata"]["template"]["g"] == 0.3
        assert payload["metadata"]["clamped_points"] == 0

    def test_heatmap(self, grid):
        """P6 de 8 bits, ε en x y ω_p creciendo hacia arriba"""
        data = SpectrumRepository().heatmap_bytes(grid)
        header = b"P6\n3 2\n255\n"

        assert data.startswith(header)
        pixels = np.frombuffer(data[len(header):], dtype=np.uint8).reshape(2, 3, 3)
        # fila superior = ω_p mayor
        assert pixels[0, :, 0].tolist() == [255, 64, 31]
        assert pixels[1, :, 0].tolist() == [0, 128, 255]
        assert np.all(pixels[:, :, 0] == pixels[:, :, 2])


@pytest.mark.unit
class TestObservationRepository:
    """Pruebas de la ingesta de observaciones"""

    def test_load_valid_file(self, observations_csv):
        """Lee filas con y sin peso"""
        path = observations_csv(HEADER + "0.1,epsilon,0,1,5.5,2\n0.6,nphi,0,2,6.25,\n")
        observations = ObservationRepository().load_csv(path)

        assert len(observations) == 2
        assert observations[0].weight == 2.0
        assert observations[1].bias_kind == "nphi"
        assert observations[1].transition == (0, 2)
        assert observations[1].weight == 1.0

    def test_bad_number_reports_line(self, observations_csv):
        """Un número inválido indica su línea"""
        path = observations_csv(HEADER + "0.1,epsilon,0,1,5.5,1\n0.2,epsilon,0,x,5.5,1\n")
        with pytest.raises(ObservationParseError) as exc:
            ObservationRepository().load_csv(path)

        assert exc.value.line == 3
        assert "line 3" in str(exc.value)

    def test_invalid_transition_reports_line(self, observations_csv):
        """i ≥ j se rechaza con número de línea"""
        path = observations_csv(HEADER + "0.1,epsilon,2,1,5.5,1\n")
        with pytest.raises(ObservationParseError) as exc:
            ObservationRepository().load_csv(path)
        assert exc.value.line == 2

    def test_missing_column(self, observations_csv):
        """Falta una columna obligatoria"""
        path = observations_csv("bias,i,j,frequency\n0.1,0,1,5.5\n")
        with pytest.raises(ObservationParseError) as exc:
            ObservationRepository().load_csv(path)
        assert "bias_kind" in str(exc.value)

    def test_empty_file(self, observations_csv):
        """Un archivo vacío es un error de ingesta"""
        with pytest.raises(ObservationParseError):
            ObservationRepository().load_csv(observations_csv(""))

    def test_header_only(self, observations_csv):
        """Solo cabecera: no hay observaciones"""
        with pytest.raises(ObservationParseError) as exc:
            ObservationRepository().load_csv(observations_csv(HEADER))
        assert "no observations" in str(exc.value)

    def test_save_and_reload(self, observations_csv, tmp_path):
        """Lo escrito se vuelve a leer igual"""
        repository = ObservationRepository()
        original = repository.load_csv(observations_csv(HEADER + "0.1,epsilon,0,1,5.5,2\n-0.3,epsilon,1,3,7.125,1\n"))
        path = repository.save_csv(original, tmp_path / "copy.csv")

        assert repository.load_csv(path) == original


@pytest.mark.unit
class TestArtifactRepository:
    """Pruebas de documentos JSON y manifiestos"""

    def test_manifest_path(self, tmp_path):
        """El manifiesto se escribe junto al artefacto"""
        path = ArtifactRepository.manifest_path(tmp_path / "levels.csv")
        assert path.name == "levels.csv.manifest.json"

    def test_manifest_round_trip(self, tmp_path):
        """Guardar y leer conserva el manifiesto"""
        repository = ArtifactRepository()
        manifest = RunManifest(command="levels", parameters={"g": 0.3}, version="1.0.0", duration_seconds=0.5,
                               outputs=["levels.csv"])
        path = repository.save_manifest(manifest, tmp_path / "levels.csv")

        assert repository.load_manifest(path) == manifest

    def test_to_json(self):
        """Modelos y diccionarios terminan en salto de línea"""
        text = ArtifactRepository.to_json(ModelParams(delta=0.1, omega=1.0, g=0.3))
        assert text.endswith("}\n")
        assert '"g": 0.3' in text
        assert ArtifactRepository.to_json({"a": 1}) == '{\n  "a": 1\n}\n'
