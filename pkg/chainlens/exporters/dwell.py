"""Dwell time per block plus its linear trend."""

import logging
from pathlib import Path
from typing import Any, Iterable, Sequence

from chainlens.analytics import dwell_series, dwell_trend
from chainlens.app import ChainLens, Exporter
from chainlens.chaingraph import ChainGraph
from chainlens.config import RunConfig, settings
from chainlens.errors import InsufficientData
from chainlens.utils.tables import write_table

logger = logging.getLogger(__name__)


class DwellExporter(Exporter):
    name = "dwell"
    header = ("height", "dwell_blocks", "included_satoshis")
    precision = {"dwell_blocks": ".3f"}

    def rows(self, graph: ChainGraph, config: RunConfig) -> Iterable[Sequence[Any]]:
        return [
            (point.height, point.dwell, point.included_amount)
            for point in dwell_series(graph, config.min_height)
        ]

    def export(self, graph: ChainGraph, config: RunConfig) -> list[Path]:
        paths = super().export(graph, config)
        try:
            trend = dwell_trend(dwell_series(graph, config.min_height))
        except InsufficientData as e:
            logger.warning(f"Skipping dwell trend: {e}")
            return paths

        days = trend.days_between_transactions(graph.max_height, settings.blocks_per_day)
        logger.info(
            f"Dwell trend: {trend.slope:.6g} blocks/block, "
            f"{days:.2f} days between transactions at height {graph.max_height}"
        )
        paths.append(
            write_table(
                config.out,
                "dwell_trend",
                ("slope", "intercept", "n_points", "days_between_transactions"),
                [(trend.slope, trend.intercept, trend.n_points, days)],
                config.fmt,
            )
        )
        return paths


def setup(app: ChainLens) -> None:
    """Required function to load the exporter."""
    app.add_exporter(DwellExporter(app))
