"""Spam episode exporter."""

from typing import Any, Iterable, Sequence

from chainlens.analytics import degree_spectrogram, spam_episodes
from chainlens.app import ChainLens, Exporter
from chainlens.chaingraph import ChainGraph
from chainlens.config import RunConfig


class EpisodesExporter(Exporter):
    name = "episodes"
    header = ("direction", "signature_degree", "start_height", "end_height", "tx_count")

    def rows(self, graph: ChainGraph, config: RunConfig) -> Iterable[Sequence[Any]]:
        episodes = spam_episodes(
            degree_spectrogram(graph, config.min_height),
            min_degree=config.min_degree,
            min_count=config.min_count,
            max_gap=config.max_gap,
        )
        return [
            (e.direction, e.signature_degree, e.start_height, e.end_height, e.tx_count)
            for e in episodes
        ]


def setup(app: ChainLens) -> None:
    """Required function to load the exporter."""
    app.add_exporter(EpisodesExporter(app))
