"""Traversals shared by the analyses."""

from typing import NamedTuple

from chainlens.chaingraph.model import ChainGraph, Outpoint


class InputSource(NamedTuple):
    """
    Where one input's value came from.

    Coinbase inputs carry amount 0 and no source height; inputs that could
    not be resolved (dangling or conflicting) carry neither.
    """

    amount: int | None
    source_height: int | None
    same_block: bool
    coinbase: bool


def inputs_with_source_height(graph: ChainGraph, height: int) -> list[InputSource]:
    """
    List every input of every transaction in a block with its source block.

    Raises:
        BadHeight: If ``height`` is outside the chain
    """
    block = graph.block_at(height)
    sources: list[InputSource] = []
    for tx in block.txs:
        for input_index, tx_in in enumerate(tx.inputs):
            if tx_in.is_coinbase:
                sources.append(InputSource(0, None, False, True))
                continue
            link = graph.spend_links.get((tx.txid, input_index))
            if link is None:
                sources.append(InputSource(None, None, False, False))
                continue
            sources.append(
                InputSource(
                    link.amount,
                    link.source_height,
                    link.source_height == height,
                    False,
                )
            )
    return sources


def first_spend_height(graph: ChainGraph, height: int) -> int | None:
    """
    Lowest height at which any output of a block's coinbase was spent.

    Returns None when the coinbase is unspent within the indexed range.
    """
    coinbase = graph.block_at(height).coinbase
    spent_at = [
        entry.spent_by.spender_height
        for vout in range(len(coinbase.outputs))
        if (entry := graph.outpoint_index.get(Outpoint(coinbase.txid, vout)))
        is not None
        and entry.spent_by is not None
        and entry.height == height
    ]
    return min(spent_at) if spent_at else None
