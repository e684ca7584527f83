"""
Inter-block value flow.

For each block, inputs are grouped by the block their value came from and
expressed as fractions of the block's included input value. Coinbase
inputs and inputs spending outputs of the same block are left out, so the
matrix is strictly upper triangular.
"""

from collections import defaultdict
from typing import NamedTuple

from chainlens.analytics.records import FlowCell
from chainlens.chaingraph import ChainGraph, inputs_with_source_height


class FlowRow(NamedTuple):
    cells: list[FlowCell]
    flow_amount: int
    same_block_amount: int


def flow_row(graph: ChainGraph, height: int) -> FlowRow:
    """Flow cells into one block plus the amounts they were normalized by."""
    by_source: dict[int, int] = defaultdict(int)
    flow_amount = 0
    same_block_amount = 0

    for source in inputs_with_source_height(graph, height):
        if source.coinbase or source.source_height is None or source.amount is None:
            continue
        if source.same_block:
            same_block_amount += source.amount
            continue
        by_source[source.source_height] += source.amount
        flow_amount += source.amount

    if flow_amount == 0:
        return FlowRow([], 0, same_block_amount)

    cells = [
        FlowCell(src, height, amount / flow_amount)
        for src, amount in sorted(by_source.items())
        if amount > 0
    ]
    return FlowRow(cells, flow_amount, same_block_amount)


def flow_matrix(graph: ChainGraph) -> list[FlowCell]:
    """All flow cells, ordered by destination then source height."""
    cells: list[FlowCell] = []
    for height in graph.heights():
        cells.extend(flow_row(graph, height).cells)
    return cells
