"""
Application object for chainlens.

This module contains the ChainLens class that loads analysis exporters,
holds the ingested chain graph and runs the commands, plus the factory
function used by the command line.
"""

import importlib
import logging
from pathlib import Path
from typing import Any, ClassVar, Iterable, Sequence

from chainlens.chaingraph import (
    ChainGraph,
    ChainStats,
    VerifyReport,
    build_graph,
    chain_stats,
    verify_graph,
)
from chainlens.config import RunConfig
from chainlens.errors import UsageError
from chainlens.synth import generate_chain, load_scenario, write_chain
from chainlens.utils.ingest import parse_files, resolve_inputs
from chainlens.utils.tables import write_table

logger = logging.getLogger(__name__)


class Exporter:
    """
    One named analysis that writes its results under the output directory.

    Subclasses set ``name`` and ``header`` and implement ``rows``; those
    needing more than one file override ``export``.
    """

    name: ClassVar[str]
    header: ClassVar[tuple[str, ...]]
    precision: ClassVar[dict[str, str]] = {}

    def __init__(self, app: "ChainLens") -> None:
        self.app = app

    def rows(self, graph: ChainGraph, config: RunConfig) -> Iterable[Sequence[Any]]:
        raise NotImplementedError

    def export(self, graph: ChainGraph, config: RunConfig) -> list[Path]:
        return [
            write_table(
                config.out,
                self.name,
                self.header,
                self.rows(graph, config),
                config.fmt,
                self.precision,
            )
        ]


class ChainLens:
    """
    The chainlens application.

    Exporters are discovered from the ``exporters`` package; each module
    registers itself through its ``setup(app)`` function.
    """

    def __init__(self) -> None:
        self.exporters: dict[str, Exporter] = {}
        self.graph: ChainGraph | None = None

    def add_exporter(self, exporter: Exporter) -> None:
        self.exporters[exporter.name] = exporter

    def load_exporters(self) -> None:
        """Load all exporter modules from the exporters directory."""
        exporters_dir = Path(__file__).parent / "exporters"
        for file in sorted(exporters_dir.glob("*.py")):
            if file.name != "__init__.py":
                module_name = f"chainlens.exporters.{file.stem}"
                try:
                    module = importlib.import_module(module_name)
                    module.setup(self)
                    logger.info(f"Loaded exporter: {module_name}")
                except Exception as e:
                    logger.error(f"Failed to load exporter {module_name}: {e}")

    def ingest(self, config: RunConfig) -> ChainGraph:
        """Parse the configured block files and build the chain graph."""
        files = resolve_inputs(config.inputs)
        records = parse_files(files, config.workers)
        self.graph = build_graph(records, config.max_height)
        return self.graph

    def stats(self) -> ChainStats:
        return chain_stats(self._require_graph())

    def analyze(self, config: RunConfig, which: str = "all") -> list[Path]:
        """
        Run one exporter, or every exporter in name order for ``all``.

        Raises:
            UsageError: If ``which`` names no loaded exporter
        """
        graph = self._require_graph()
        if which == "all":
            selected = [self.exporters[name] for name in sorted(self.exporters)]
        elif which in self.exporters:
            selected = [self.exporters[which]]
        else:
            known = ", ".join(sorted(self.exporters))
            raise UsageError(f"unknown analysis {which!r} (known: {known}, all)")

        paths: list[Path] = []
        for exporter in selected:
            paths.extend(exporter.export(graph, config))
        return paths

    def verify(self) -> VerifyReport:
        return verify_graph(self._require_graph())

    def synth(self, scenario_path: Path, out_dir: Path) -> list[Path]:
        """Generate a scenario and write its block files and manifest."""
        spec = load_scenario(scenario_path)
        return write_chain(generate_chain(spec), out_dir)

    def _require_graph(self) -> ChainGraph:
        if self.graph is None:
            raise UsageError("no chain ingested")
        return self.graph


def create_app() -> ChainLens:
    """Factory function to create the application with its exporters loaded."""
    app = ChainLens()
    app.load_exporters()
    return app
