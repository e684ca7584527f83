"""Analyses over the chain graph: flow, dwell, extranonce, degrees, supply."""

from chainlens.analytics.degrees import degree_spectrogram, spam_episodes
from chainlens.analytics.dwell import (
    dwell_from_flow,
    dwell_series,
    dwell_time,
    dwell_trend,
)
from chainlens.analytics.extranonce import (
    extranonce_series,
    miner_runs,
    parse_extranonce,
    spend_consolidations,
)
from chainlens.analytics.flow import FlowRow, flow_matrix, flow_row
from chainlens.analytics.records import (
    ConsolidationGroup,
    DegreeBin,
    DwellPoint,
    ExtranonceSample,
    FlowCell,
    IssuancePoint,
    MaturityReport,
    MinerRun,
    SpamEpisode,
    TrendFit,
)
from chainlens.analytics.supply import block_fees, coinbase_maturity, issuance_series

__all__ = [
    "ConsolidationGroup",
    "DegreeBin",
    "DwellPoint",
    "ExtranonceSample",
    "FlowCell",
    "FlowRow",
    "IssuancePoint",
    "MaturityReport",
    "MinerRun",
    "SpamEpisode",
    "TrendFit",
    "block_fees",
    "coinbase_maturity",
    "degree_spectrogram",
    "dwell_from_flow",
    "dwell_series",
    "dwell_time",
    "dwell_trend",
    "extranonce_series",
    "flow_matrix",
    "flow_row",
    "issuance_series",
    "miner_runs",
    "parse_extranonce",
    "spam_episodes",
    "spend_consolidations",
]
