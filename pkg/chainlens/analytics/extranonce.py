"""
Miner attribution from coinbase extranonce values.

Miners that increment the extranonce each time the header nonce space is
exhausted leave a slow clock in their coinbases: their blocks fall on one
straight line of extranonce against height until the counter is reset.
"""

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice

from chainlens.analytics.records import ConsolidationGroup, ExtranonceSample, MinerRun
from chainlens.chaingraph import ChainGraph, first_spend_height
from chainlens.config import settings
from chainlens.wire import iter_pushes


def parse_extranonce(script_sig: bytes) -> int | None:
    """
    Read the extranonce from a coinbase scriptSig.

    The schema is a 4-byte first push (the difficulty bits) followed by a
    1-4 byte push read as a little-endian unsigned integer. Anything else
    yields None; later pushes are ignored.
    """
    pushes = list(islice(iter_pushes(script_sig), 2))
    if len(pushes) < 2 or len(pushes[0]) != 4 or not 1 <= len(pushes[1]) <= 4:
        return None
    return int.from_bytes(pushes[1], "little")


def extranonce_series(graph: ChainGraph, start: int = 0) -> list[ExtranonceSample]:
    """Extranonce and coinbase first-spend height for every block."""
    return [
        ExtranonceSample(
            height=height,
            extranonce=parse_extranonce(graph.blocks[height].coinbase.inputs[0].script_sig),
            spend_height=first_spend_height(graph, height),
        )
        for height in graph.heights(start)
    ]


@dataclass
class _Track:
    heights: list[int] = field(default_factory=list)
    values: list[int] = field(default_factory=list)

    def add(self, height: int, value: int) -> None:
        self.heights.append(height)
        self.values.append(value)

    @property
    def last_height(self) -> int:
        return self.heights[-1]

    @property
    def last_value(self) -> int:
        return self.values[-1]


def miner_runs(
    samples: list[ExtranonceSample],
    reset_threshold: float = settings.reset_threshold,
    max_step_rate: int | None = settings.max_step_rate,
    max_idle: int | None = settings.max_idle,
) -> list[MinerRun]:
    """
    Segment extranonce samples into per-miner clock runs.

    Samples are taken in height order. A sample extends the most recently
    extended open track whose last value it does not undercut. A sample no
    track can take closes every track it undercuts by more than
    ``reset_threshold`` (a counter reset) and opens a new track. For a
    single miner this is the plain rule: a run grows while the extranonce
    is non-decreasing and a drop below ``reset_threshold`` times the
    previous value starts the next run.

    Interleaved miners need the two optional gates: ``max_step_rate`` caps
    the increase per block a track accepts and ``max_idle`` closes tracks
    that went that many blocks without a member.

    Args:
        samples: Height-ordered samples; absent extranonces are skipped
        reset_threshold: A drop below this fraction of a track's last value
            is a reset
        max_step_rate: Largest extranonce increase per block a track accepts;
            None for no cap
        max_idle: Blocks a track may go without a new member; None keeps
            tracks open

    Returns:
        Runs with at least three members, ordered by start height
    """
    open_tracks: list[_Track] = []
    closed: list[_Track] = []

    for sample in samples:
        if sample.extranonce is None:
            continue
        height, value = sample.height, sample.extranonce

        if max_idle is not None:
            active = []
            for track in open_tracks:
                if height - track.last_height > max_idle:
                    closed.append(track)
                else:
                    active.append(track)
            open_tracks = active

        best: _Track | None = None
        for track in open_tracks:
            step = value - track.last_value
            if step < 0:
                continue
            if max_step_rate is not None and step > max_step_rate * (
                height - track.last_height
            ):
                continue
            if best is None or track.last_height > best.last_height:
                best = track
        if best is not None:
            best.add(height, value)
            continue

        for track in [t for t in open_tracks if value < reset_threshold * t.last_value]:
            open_tracks.remove(track)
            closed.append(track)
        fresh = _Track()
        fresh.add(height, value)
        open_tracks.append(fresh)

    closed.extend(open_tracks)
    runs = [_fit_run(track) for track in closed if len(track.heights) >= 3]
    runs.sort(key=lambda run: (run.start_height, run.end_height))
    return runs


def _fit_run(track: _Track) -> MinerRun:
    """Least-squares line through a track in exact rational arithmetic."""
    n = len(track.heights)
    sum_h = sum(track.heights)
    sum_v = sum(track.values)
    sum_hh = sum(h * h for h in track.heights)
    sum_hv = sum(h * v for h, v in zip(track.heights, track.values))

    denominator = n * sum_hh - sum_h * sum_h
    slope = Fraction(n * sum_hv - sum_h * sum_v, denominator)
    intercept = (Fraction(sum_v) - slope * sum_h) / n
    squared = sum(
        (v - (slope * h + intercept)) ** 2 for h, v in zip(track.heights, track.values)
    )
    return MinerRun(
        start_height=track.heights[0],
        end_height=track.heights[-1],
        slope=float(slope),
        residual=math.sqrt(float(squared / n)),
        members=n,
    )


def spend_consolidations(
    samples: list[ExtranonceSample], min_group: int = 2
) -> list[ConsolidationGroup]:
    """Group coinbases whose value was first spent at the same height."""
    by_spend: dict[int, list[int]] = defaultdict(list)
    for sample in samples:
        if sample.spend_height is not None:
            by_spend[sample.spend_height].append(sample.height)
    return [
        ConsolidationGroup(spend_height, tuple(sorted(heights)))
        for spend_height, heights in sorted(by_spend.items())
        if len(heights) >= min_group
    ]
