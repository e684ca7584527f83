"""
Flow matrix exporter.

Writes ``flow.csv`` (the sparse upper-triangular adjacency matrix) and
``matrix.html``, a static page for pan/zoom inspection of the same cells.
"""

from pathlib import Path
from typing import Any, Iterable, Sequence

from chainlens.analytics import FlowCell, flow_matrix
from chainlens.app import ChainLens, Exporter
from chainlens.chaingraph import ChainGraph
from chainlens.config import RunConfig
from chainlens.utils.matrix_html import render_matrix_html
from chainlens.utils.tables import write_table


class FlowExporter(Exporter):
    name = "flow"
    header = ("src_height", "dst_height", "fraction")

    @staticmethod
    def cells(graph: ChainGraph, config: RunConfig) -> list[FlowCell]:
        return [c for c in flow_matrix(graph) if c.dst_height >= config.min_height]

    def rows(self, graph: ChainGraph, config: RunConfig) -> Iterable[Sequence[Any]]:
        return [(c.src_height, c.dst_height, c.fraction) for c in self.cells(graph, config)]

    def export(self, graph: ChainGraph, config: RunConfig) -> list[Path]:
        cells = self.cells(graph, config)
        table = write_table(
            config.out,
            self.name,
            self.header,
            [(c.src_height, c.dst_height, c.fraction) for c in cells],
            config.fmt,
        )
        html_path = config.out / "matrix.html"
        html_path.write_text(render_matrix_html(cells), encoding="utf-8")
        return [table, html_path]


def setup(app: ChainLens) -> None:
    """Required function to load the exporter."""
    app.add_exporter(FlowExporter(app))
