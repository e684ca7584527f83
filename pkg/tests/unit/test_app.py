"""
Unit tests for the application object.
"""

from pathlib import Path
from unittest.mock import patch

import pytest

from chainlens.app import ChainLens, Exporter, create_app
from chainlens.config import RunConfig
from chainlens.errors import UsageError
from chainlens.wire import serialize_block
from tests.conftest import ChainBuilder

EXPORTERS = ["degrees", "dwell", "episodes", "extranonce", "flow", "issuance"]


class TestChainLens:
    """Test the ChainLens class."""

    def test_create_app_returns_chainlens_instance(self) -> None:
        """Test that create_app returns a ChainLens instance."""
        assert isinstance(create_app(), ChainLens)

    def test_create_app_loads_exporters(self) -> None:
        """Test that every exporter module registers itself."""
        assert sorted(create_app().exporters) == EXPORTERS

    def test_load_exporters_skips_init(self) -> None:
        """Test that __init__.py is not loaded as an exporter."""
        app = ChainLens()
        files = [Path("__init__.py"), Path("sample.py")]

        with patch.object(Path, "glob", return_value=files):
            with patch("chainlens.app.importlib.import_module") as mock_import:
                app.load_exporters()

        mock_import.assert_called_once_with("chainlens.exporters.sample")
        mock_import.return_value.setup.assert_called_once_with(app)

    def test_load_exporters_handles_errors(self, caplog) -> None:
        """Test that loading errors are logged, not raised."""
        app = ChainLens()

        with patch.object(Path, "glob", return_value=[Path("broken.py")]):
            with patch(
                "chainlens.app.importlib.import_module",
                side_effect=Exception("Load error"),
            ):
                app.load_exporters()

        assert "Failed to load exporter" in caplog.text
        assert "broken" in caplog.text
        assert app.exporters == {}

    def test_commands_need_a_graph(self) -> None:
        """Test that analyses before ingestion are usage errors."""
        app = create_app()
        with pytest.raises(UsageError):
            app.stats()
        with pytest.raises(UsageError):
            app.verify()

    def test_unknown_analysis(self, tmp_path: Path, chain_builder: ChainBuilder) -> None:
        """Test that an unknown analysis name raises UsageError."""
        chain_builder.extend_to(2)
        (tmp_path / "blk00000.dat").write_bytes(
            b"".join(serialize_block(b) for b in chain_builder.blocks)
        )
        app = create_app()
        config = RunConfig(inputs=[tmp_path], out=tmp_path / "out")
        app.ingest(config)

        with pytest.raises(UsageError, match="unknown analysis"):
            app.analyze(config, "velocity")

    def test_analyze_all(self, tmp_path: Path, spend496_chain: ChainBuilder) -> None:
        """Test that 'all' runs every exporter in name order."""
        (tmp_path / "blk00000.dat").write_bytes(
            b"".join(serialize_block(b) for b in spend496_chain.blocks)
        )
        app = create_app()
        config = RunConfig(inputs=[tmp_path], out=tmp_path / "out")
        app.ingest(config)

        names = [p.name for p in app.analyze(config)]

        assert names == [
            "degrees.csv",
            "dwell.csv",
            "episodes.csv",
            "extranonce.csv",
            "miner_runs.csv",
            "consolidations.csv",
            "flow.csv",
            "matrix.html",
            "issuance.csv",
        ]

    def test_custom_exporter(self, tmp_path: Path, chain_builder: ChainBuilder) -> None:
        """Test that an added exporter writes its rows."""

        class Heights(Exporter):
            name = "heights"
            header = ("height",)

            def rows(self, graph, config):
                return [(b.height,) for b in graph.blocks]

        chain_builder.extend_to(2)
        (tmp_path / "blk00000.dat").write_bytes(
            b"".join(serialize_block(b) for b in chain_builder.blocks)
        )
        app = ChainLens()
        app.add_exporter(Heights(app))
        config = RunConfig(inputs=[tmp_path], out=tmp_path / "out")
        app.ingest(config)

        [path] = app.analyze(config, "heights")

        assert path.read_text() == "height\n0\n1\n2\n"
