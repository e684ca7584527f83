"""Scenario-driven synthetic chains with ground-truth manifests."""

from chainlens.synth.generator import (
    ChainGenerator,
    SynthResult,
    generate_chain,
    write_chain,
)
from chainlens.synth.manifest import (
    BlockTruth,
    EpisodeTruth,
    FlowTruth,
    GroundTruthManifest,
    StatsTruth,
)
from chainlens.synth.scenario import (
    FeePolicy,
    MinerSpec,
    PatternKind,
    PatternSpec,
    PlantInput,
    PlantSpec,
    ScenarioSpec,
    SweepSpec,
    load_scenario,
    parse_scenario,
)

__all__ = [
    "BlockTruth",
    "ChainGenerator",
    "EpisodeTruth",
    "FeePolicy",
    "FlowTruth",
    "GroundTruthManifest",
    "MinerSpec",
    "PatternKind",
    "PatternSpec",
    "PlantInput",
    "PlantSpec",
    "ScenarioSpec",
    "StatsTruth",
    "SweepSpec",
    "SynthResult",
    "generate_chain",
    "load_scenario",
    "parse_scenario",
    "write_chain",
]
