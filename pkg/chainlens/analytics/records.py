"""Result records produced by the analyses."""

from dataclasses import dataclass
from typing import Literal

Direction = Literal["in", "out"]


@dataclass(frozen=True, slots=True)
class FlowCell:
    """Share of a block's included input value that came from ``src_height``."""

    src_height: int
    dst_height: int
    fraction: float


@dataclass(frozen=True, slots=True)
class DwellPoint:
    height: int
    dwell: float
    included_amount: int


@dataclass(frozen=True, slots=True)
class TrendFit:
    slope: float
    intercept: float
    n_points: int

    def at(self, height: float) -> float:
        return self.slope * height + self.intercept

    def days_between_transactions(self, height: float, blocks_per_day: int = 144) -> float:
        """Fitted dwell at ``height`` expressed in days."""
        return self.at(height) / blocks_per_day


@dataclass(frozen=True, slots=True)
class ExtranonceSample:
    height: int
    extranonce: int | None
    spend_height: int | None


@dataclass(frozen=True, slots=True)
class MinerRun:
    start_height: int
    end_height: int
    slope: float
    residual: float
    members: int


@dataclass(frozen=True, slots=True)
class ConsolidationGroup:
    """Coinbases first spent together at one height."""

    spend_height: int
    heights: tuple[int, ...]


@dataclass(frozen=True, slots=True)
class DegreeBin:
    """Transactions in a block with a given degree: +in degree, -out degree."""

    height: int
    signed_degree: int
    count: int


@dataclass(frozen=True, slots=True)
class SpamEpisode:
    direction: Direction
    signature_degree: int
    start_height: int
    end_height: int
    tx_count: int


@dataclass(frozen=True, slots=True)
class IssuancePoint:
    height: int
    coinbase_value: int
    fees: int
    minted: int
    cumulative_supply: int


@dataclass(frozen=True, slots=True)
class MaturityReport:
    coinbase_spends: int
    min_age: int | None
    premature_spends: int
