"""Degree spectrogram exporter."""

from typing import Any, Iterable, Sequence

from chainlens.analytics import degree_spectrogram
from chainlens.app import ChainLens, Exporter
from chainlens.chaingraph import ChainGraph
from chainlens.config import RunConfig


class DegreesExporter(Exporter):
    name = "degrees"
    header = ("height", "signed_degree", "count")

    def rows(self, graph: ChainGraph, config: RunConfig) -> Iterable[Sequence[Any]]:
        return [
            (b.height, b.signed_degree, b.count)
            for b in degree_spectrogram(graph, config.min_height)
        ]


def setup(app: ChainLens) -> None:
    """Required function to load the exporter."""
    app.add_exporter(DegreesExporter(app))
