"""The chain graph: linkage, outpoint resolution, spend links and provenance."""

from chainlens.chaingraph.builder import build_graph
from chainlens.chaingraph.model import (
    ChainGraph,
    OutputEntry,
    Outpoint,
    SpendLink,
    TxLocation,
)
from chainlens.chaingraph.queries import (
    InputSource,
    first_spend_height,
    inputs_with_source_height,
)
from chainlens.chaingraph.stats import ChainStats, chain_stats
from chainlens.chaingraph.verify import (
    VerifyReport,
    Violation,
    ViolationKind,
    verify_graph,
)

__all__ = [
    "ChainGraph",
    "ChainStats",
    "InputSource",
    "OutputEntry",
    "Outpoint",
    "SpendLink",
    "TxLocation",
    "VerifyReport",
    "Violation",
    "ViolationKind",
    "build_graph",
    "chain_stats",
    "first_spend_height",
    "inputs_with_source_height",
    "verify_graph",
]
