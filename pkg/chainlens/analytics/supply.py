"""Money supply and coinbase maturity, derived from coinbase transactions."""

from chainlens.analytics.records import IssuancePoint, MaturityReport
from chainlens.chaingraph import ChainGraph, Outpoint
from chainlens.config import settings


def block_fees(graph: ChainGraph, height: int) -> int:
    """Fees of a block's resolvable non-coinbase transactions."""
    fees = 0
    for tx in graph.block_at(height).txs[1:]:
        value_in = 0
        for tx_in in tx.inputs:
            entry = graph.outpoint_index.get(Outpoint(tx_in.prev_txid, tx_in.prev_vout))
            if entry is None:
                break
            value_in += entry.value
        else:
            fees += max(value_in - sum(out.value for out in tx.outputs), 0)
    return fees


def issuance_series(graph: ChainGraph) -> list[IssuancePoint]:
    """Newly minted value per block and the cumulative money supply."""
    points = []
    supply = 0
    for height in graph.heights():
        coinbase_value = sum(out.value for out in graph.blocks[height].coinbase.outputs)
        fees = block_fees(graph, height)
        minted = max(coinbase_value - fees, 0)
        supply += minted
        points.append(IssuancePoint(height, coinbase_value, fees, minted, supply))
    return points


def coinbase_maturity(
    graph: ChainGraph, maturity: int = settings.maturity
) -> MaturityReport:
    """Youngest observed coinbase spend and how many broke the maturity rule."""
    ages = [
        link.spender_height - link.source_height
        for link in graph.spend_links.values()
        if graph.outpoint_index[link.source].coinbase
    ]
    return MaturityReport(
        coinbase_spends=len(ages),
        min_age=min(ages) if ages else None,
        premature_spends=sum(1 for age in ages if age < maturity),
    )
