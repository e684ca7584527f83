"""Vertex counts in the layout of the summary statistics table."""

from dataclasses import dataclass

from chainlens.chaingraph.model import ChainGraph
from chainlens.wire.codec import FRAME_SIZE


@dataclass(frozen=True)
class ChainStats:
    blocks: int
    transactions: int
    inputs: int
    outputs: int
    addresses: int
    raw_bytes: int

    def rows(self) -> list[tuple[str, int]]:
        return [
            ("Blocks", self.blocks),
            ("Transactions", self.transactions),
            ("Inputs", self.inputs),
            ("Outputs", self.outputs),
            ("Addresses", self.addresses),
            ("RawBytes", self.raw_bytes),
        ]

    def to_csv(self) -> str:
        lines = ["metric,value"]
        lines.extend(f"{metric},{value}" for metric, value in self.rows())
        return "\n".join(lines) + "\n"


def chain_stats(graph: ChainGraph) -> ChainStats:
    transactions = inputs = outputs = raw_bytes = 0
    for block in graph.blocks:
        transactions += len(block.txs)
        raw_bytes += FRAME_SIZE + block.size
        for tx in block.txs:
            inputs += len(tx.inputs)
            outputs += len(tx.outputs)
    return ChainStats(
        blocks=len(graph.blocks),
        transactions=transactions,
        inputs=inputs,
        outputs=outputs,
        addresses=len(graph.address_index),
        raw_bytes=raw_bytes,
    )
