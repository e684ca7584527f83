"""
Extranonce exporter.

Besides ``extranonce.csv`` this writes the segmented miner runs and the
groups of coinbases that were first spent together.
"""

from pathlib import Path
from typing import Any, Iterable, Sequence

from chainlens.analytics import extranonce_series, miner_runs, spend_consolidations
from chainlens.app import ChainLens, Exporter
from chainlens.chaingraph import ChainGraph
from chainlens.config import RunConfig
from chainlens.utils.tables import write_table


class ExtranonceExporter(Exporter):
    name = "extranonce"
    header = ("height", "extranonce", "spend_height")

    def rows(self, graph: ChainGraph, config: RunConfig) -> Iterable[Sequence[Any]]:
        return [
            (sample.height, sample.extranonce, sample.spend_height)
            for sample in extranonce_series(graph, config.min_height)
        ]

    def export(self, graph: ChainGraph, config: RunConfig) -> list[Path]:
        paths = super().export(graph, config)
        samples = extranonce_series(graph, config.min_height)
        runs = miner_runs(
            samples,
            reset_threshold=config.reset_threshold,
            max_step_rate=config.max_step_rate,
            max_idle=config.max_idle,
        )
        paths.append(
            write_table(
                config.out,
                "miner_runs",
                ("start_height", "end_height", "slope", "residual", "members"),
                [(r.start_height, r.end_height, r.slope, r.residual, r.members) for r in runs],
                config.fmt,
            )
        )
        paths.append(
            write_table(
                config.out,
                "consolidations",
                ("spend_height", "coinbase_heights"),
                [
                    (group.spend_height, " ".join(str(h) for h in group.heights))
                    for group in spend_consolidations(samples)
                ],
                config.fmt,
            )
        )
        return paths


def setup(app: ChainLens) -> None:
    """Required function to load the exporter."""
    app.add_exporter(ExtranonceExporter(app))
