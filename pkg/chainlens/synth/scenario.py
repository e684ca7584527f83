"""
Scenario documents for the synthetic chain generator.

A scenario is an INI file::

    [scenario]
    name = miner-lines
    seed = 7
    n_blocks = 600

    [fees]
    base = 1000

    [miner:steady]
    weight = 3
    increment = 7
    reset_period = 150

    [pattern:worm]
    kind = spam_out
    start = 200
    end = 260
    degree = 102
    txs_per_block = 5

    [plant:spend496]
    height = 496
    inputs = 187:100000000, 248:1000000000, 360:5000000000

    [sweep:early]
    height = 420
    first = 10
    last = 19

Values are validated by the pydantic models below; any problem surfaces as
``InvalidScenario``.
"""

import configparser
import logging
from enum import StrEnum
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from chainlens.config import settings
from chainlens.errors import InvalidScenario
from chainlens.wire import SATOSHIS_PER_BTC

logger = logging.getLogger(__name__)

COINBASE_MATURITY = 100


class _ScenarioModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class PatternKind(StrEnum):
    CHURN = "churn"
    CONSOLIDATE = "consolidate"
    DISTRIBUTE = "distribute"
    SPAM_OUT = "spam_out"
    SPAM_IN = "spam_in"


class MinerSpec(_ScenarioModel):
    """
    A miner and its extranonce clock.

    The planted extranonce at height h is ``increment * (h % reset_period)``
    (no modulus when ``reset_period`` is 0). Randomized miners write four
    random bytes instead.
    """

    name: str
    weight: float = Field(default=1.0, gt=0)
    increment: int = Field(default=1, ge=0)
    reset_period: int = Field(default=0, ge=0)
    randomize: bool = False

    def extranonce(self, height: int) -> int:
        ticks = height % self.reset_period if self.reset_period else height
        return (self.increment * ticks) & 0xFFFFFFFF


class PatternSpec(_ScenarioModel):
    """
    A spend pattern active on heights ``start..end`` inclusive.

    ``degree`` is the input count for churn, consolidate and spam_in, and
    the output count for distribute and spam_out. ``hold``/``drift`` make a
    churn pattern plant a dwell time of ``hold + drift * (h - start)``
    blocks.
    """

    name: str
    kind: PatternKind
    start: int = Field(ge=0)
    end: int = Field(ge=0)
    degree: int = Field(default=2, ge=1)
    txs_per_block: int = Field(default=1, ge=0)
    same_block: float = Field(default=0.0, ge=0.0, le=1.0)
    hold: int | None = Field(default=None, ge=1)
    drift: float = Field(default=0.0, ge=0.0, lt=1.0)

    @model_validator(mode="after")
    def _check_range(self) -> "PatternSpec":
        if self.start > self.end:
            raise ValueError(f"pattern {self.name}: start {self.start} > end {self.end}")
        if self.hold is not None and self.kind != PatternKind.CHURN:
            raise ValueError(f"pattern {self.name}: hold only applies to churn")
        return self


class PlantInput(_ScenarioModel):
    source_height: int = Field(ge=0)
    amount: int = Field(gt=0)


class PlantSpec(_ScenarioModel):
    """One exact spend at ``height`` of amounts carved from earlier coinbases."""

    name: str
    height: int = Field(ge=0)
    inputs: list[PlantInput] = Field(min_length=1)

    @model_validator(mode="after")
    def _check_sources(self) -> "PlantSpec":
        for item in self.inputs:
            if item.source_height >= self.height:
                raise ValueError(
                    f"plant {self.name}: source {item.source_height} "
                    f"not below height {self.height}"
                )
        return self


class SweepSpec(_ScenarioModel):
    """Spend every coinbase of blocks ``first..last`` in one transaction."""

    name: str
    height: int = Field(ge=0)
    first: int = Field(ge=0)
    last: int = Field(ge=0)

    @model_validator(mode="after")
    def _check_range(self) -> "SweepSpec":
        if not self.first <= self.last < self.height:
            raise ValueError(
                f"sweep {self.name}: need first <= last < height, "
                f"got {self.first}..{self.last} at {self.height}"
            )
        return self


class FeePolicy(_ScenarioModel):
    base: int = Field(default=1000, ge=0)
    per_input: int = Field(default=0, ge=0)
    per_output: int = Field(default=0, ge=0)

    def fee(self, n_inputs: int, n_outputs: int) -> int:
        return self.base + self.per_input * n_inputs + self.per_output * n_outputs


def _default_miners() -> list[MinerSpec]:
    return [MinerSpec(name="solo")]


class ScenarioSpec(_ScenarioModel):
    name: str = "scenario"
    seed: int = Field(default=0, ge=0, lt=2**64)
    n_blocks: int = Field(ge=1)
    miners: list[MinerSpec] = Field(default_factory=_default_miners, min_length=1)
    patterns: list[PatternSpec] = Field(default_factory=list)
    plants: list[PlantSpec] = Field(default_factory=list)
    sweeps: list[SweepSpec] = Field(default_factory=list)
    fees: FeePolicy = Field(default_factory=FeePolicy)
    initial_reward: int = Field(default=50 * SATOSHIS_PER_BTC, ge=0)
    halving_interval: int = Field(default=210_000, ge=1)
    max_file_bytes: int = Field(default=settings.max_file_bytes, gt=0)
    start_time: int = Field(default=1231006505, ge=0)

    @model_validator(mode="after")
    def _check_heights(self) -> "ScenarioSpec":
        last = self.n_blocks - 1
        for pattern in self.patterns:
            if pattern.end > last:
                raise ValueError(f"pattern {pattern.name} ends after block {last}")
        for plant in self.plants:
            if plant.height > last:
                raise ValueError(f"plant {plant.name} after block {last}")
        covered: set[int] = set()
        for sweep in self.sweeps:
            if sweep.height > last:
                raise ValueError(f"sweep {sweep.name} after block {last}")
            span = set(range(sweep.first, sweep.last + 1))
            if covered & span:
                raise ValueError(f"sweep {sweep.name} overlaps another sweep")
            covered |= span
        return self

    def reward(self, height: int) -> int:
        """Block subsidy: halves every ``halving_interval`` blocks."""
        halvings = height // self.halving_interval
        return self.initial_reward >> halvings if halvings < 64 else 0


def parse_scenario(text: str) -> ScenarioSpec:
    """
    Parse a scenario from INI text.

    Raises:
        InvalidScenario: On INI syntax errors, unknown sections or keys, and
            values failing validation
    """
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as e:
        raise InvalidScenario(f"unreadable scenario: {e}") from e

    document: dict[str, Any] = {"miners": [], "patterns": [], "plants": [], "sweeps": []}
    for section in parser.sections():
        values = dict(parser[section])
        kind, _, name = section.partition(":")
        if section == "scenario":
            document.update(values)
        elif section == "fees":
            document["fees"] = values
        elif kind == "miner" and name:
            document["miners"].append({"name": name, **values})
        elif kind == "pattern" and name:
            document["patterns"].append({"name": name, **values})
        elif kind == "plant" and name:
            values["inputs"] = _parse_plant_inputs(name, values.get("inputs", ""))
            document["plants"].append({"name": name, **values})
        elif kind == "sweep" and name:
            document["sweeps"].append({"name": name, **values})
        else:
            raise InvalidScenario(f"unknown section [{section}]")

    if not document["miners"]:
        del document["miners"]

    try:
        return ScenarioSpec.model_validate(document)
    except ValidationError as e:
        raise InvalidScenario(str(e)) from e


def _parse_plant_inputs(name: str, raw: str) -> list[dict[str, str]]:
    """``"187:100000000, 248:1000000000"`` -> source height / satoshi pairs."""
    items = []
    for chunk in raw.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        height, sep, amount = chunk.partition(":")
        if not sep:
            raise InvalidScenario(
                f"plant {name}: input {chunk!r} is not <source_height>:<satoshis>"
            )
        items.append({"source_height": height.strip(), "amount": amount.strip()})
    return items


def load_scenario(path: str | Path) -> ScenarioSpec:
    """
    Read and parse a scenario file.

    Raises:
        InvalidScenario: If the file cannot be read or does not validate
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InvalidScenario(f"cannot read scenario {path}: {e}") from e
    spec = parse_scenario(text)
    logger.info(
        f"Loaded scenario {spec.name} from {path}: {spec.n_blocks} blocks, "
        f"{len(spec.patterns)} patterns"
    )
    return spec
