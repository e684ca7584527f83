"""Money supply from coinbase values, with the coinbase maturity report."""

import logging
from typing import Any, Iterable, Sequence

from chainlens.analytics import coinbase_maturity, issuance_series
from chainlens.app import ChainLens, Exporter
from chainlens.chaingraph import ChainGraph
from chainlens.config import RunConfig, settings

logger = logging.getLogger(__name__)


class IssuanceExporter(Exporter):
    name = "issuance"
    header = ("height", "coinbase_value", "fees", "minted", "cumulative_supply")

    def rows(self, graph: ChainGraph, config: RunConfig) -> Iterable[Sequence[Any]]:
        report = coinbase_maturity(graph, settings.maturity)
        logger.info(
            f"Coinbase spends: {report.coinbase_spends}, youngest {report.min_age} "
            f"blocks, {report.premature_spends} before maturity"
        )
        return [
            (p.height, p.coinbase_value, p.fees, p.minted, p.cumulative_supply)
            for p in issuance_series(graph)
            if p.height >= config.min_height
        ]


def setup(app: ChainLens) -> None:
    """Required function to load the exporter."""
    app.add_exporter(IssuanceExporter(app))
