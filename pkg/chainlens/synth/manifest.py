"""
Ground truth recorded while generating a chain.

Every quantity is computed from what the generator did, never by parsing
the emitted bytes, so the analysis pipeline can be checked against it.
"""

from collections import Counter, defaultdict
from typing import Literal

from pydantic import BaseModel, Field


class FlowTruth(BaseModel):
    src_height: int
    fraction: float


class BlockTruth(BaseModel):
    height: int
    tx_count: int
    input_count: int
    output_count: int
    size: int
    miner: int
    extranonce: int | None
    fees: int
    flows: list[FlowTruth] = Field(default_factory=list)
    dwell: float | None = None
    included_satoshis: int = 0
    same_block_inputs: int = 0
    degrees: list[tuple[int, int]] = Field(default_factory=list)
    coinbase_spend_height: int | None = None


class EpisodeTruth(BaseModel):
    direction: Literal["in", "out"]
    signature_degree: int
    start_height: int
    end_height: int
    tx_count: int


class StatsTruth(BaseModel):
    blocks: int = 0
    transactions: int = 0
    inputs: int = 0
    outputs: int = 0
    addresses: int = 0
    raw_bytes: int = 0


class GroundTruthManifest(BaseModel):
    scenario: str
    seed: int
    blocks: list[BlockTruth] = Field(default_factory=list)
    episodes: list[EpisodeTruth] = Field(default_factory=list)
    stats: StatsTruth = Field(default_factory=StatsTruth)
    planted_dwell_slopes: dict[str, float] = Field(default_factory=dict)
    files: list[str] = Field(default_factory=list)


class BlockLedger:
    """
    Collects what one generated block contains.

    ``spends`` holds (source height, amount) per non-coinbase input and
    ``shapes`` the (inputs, outputs) count of each transaction, coinbase
    included.
    """

    def __init__(self, height: int) -> None:
        self.height = height
        self.spends: list[tuple[int, int]] = []
        self.shapes: list[tuple[int, int]] = []
        self.fees = 0

    def record_tx(self, n_inputs: int, n_outputs: int, fee: int = 0) -> None:
        self.shapes.append((n_inputs, n_outputs))
        self.fees += fee

    def record_spend(self, source_height: int, amount: int) -> None:
        self.spends.append((source_height, amount))

    def truth(
        self, size: int, miner: int, extranonce: int | None
    ) -> BlockTruth:
        """Derive flows, dwell and degree bins for the block."""
        height = self.height
        by_source: dict[int, int] = defaultdict(int)
        flow_total = 0
        weighted = 0
        included = 0
        same_block = 0
        for source_height, amount in self.spends:
            weighted += (height - source_height) * amount
            included += amount
            if source_height == height:
                same_block += 1
                continue
            by_source[source_height] += amount
            flow_total += amount

        flows = (
            [
                FlowTruth(src_height=src, fraction=amount / flow_total)
                for src, amount in sorted(by_source.items())
                if amount > 0
            ]
            if flow_total
            else []
        )

        degrees: Counter[int] = Counter()
        for n_inputs, n_outputs in self.shapes:
            degrees[n_inputs] += 1
            degrees[-n_outputs] += 1

        return BlockTruth(
            height=height,
            tx_count=len(self.shapes),
            input_count=sum(n for n, _ in self.shapes),
            output_count=sum(m for _, m in self.shapes),
            size=size,
            miner=miner,
            extranonce=extranonce,
            fees=self.fees,
            flows=flows,
            dwell=weighted / included if included else None,
            included_satoshis=included,
            same_block_inputs=same_block,
            degrees=sorted(degrees.items()),
        )
