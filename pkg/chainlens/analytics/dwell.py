"""
Dwell time: the amount-weighted mean age, in blocks, of the value spent in
a block.

    D_N = sum((N - b_i) * a_i) / sum(a_i)

over the block's inputs with a source block. Coinbase inputs have none and
are skipped; inputs spending same-block outputs count at distance zero.
"""

import numpy as np

from chainlens.analytics.flow import FlowRow
from chainlens.analytics.records import DwellPoint, TrendFit
from chainlens.chaingraph import ChainGraph, inputs_with_source_height
from chainlens.errors import InsufficientData


def dwell_time(graph: ChainGraph, height: int) -> DwellPoint | None:
    """
    Dwell time of one block, or None when no input has a source block.

    The weighted sum is kept in integer satoshi-blocks; the only floating
    point operation is the final division.
    """
    weighted = 0
    total = 0
    for source in inputs_with_source_height(graph, height):
        if source.coinbase or source.source_height is None or source.amount is None:
            continue
        weighted += (height - source.source_height) * source.amount
        total += source.amount
    if total == 0:
        return None
    return DwellPoint(height, weighted / total, total)


def dwell_series(graph: ChainGraph, start: int = 0) -> list[DwellPoint]:
    points = []
    for height in graph.heights(start):
        point = dwell_time(graph, height)
        if point is not None:
            points.append(point)
    return points


def dwell_from_flow(row: FlowRow, height: int) -> float | None:
    """
    Dwell time recomputed as the first moment of a block's flow row,
    extended with same-block value at distance zero.
    """
    total = row.flow_amount + row.same_block_amount
    if total == 0:
        return None
    moment = sum((height - cell.src_height) * cell.fraction for cell in row.cells)
    return moment * row.flow_amount / total


def dwell_trend(points: list[DwellPoint]) -> TrendFit:
    """
    Ordinary least-squares line of dwell against height.

    Raises:
        InsufficientData: With fewer than two points or a single height
    """
    if len(points) < 2:
        raise InsufficientData(f"trend needs at least 2 points, got {len(points)}")

    x = np.array([p.height for p in points], dtype=np.float64)
    y = np.array([p.dwell for p in points], dtype=np.float64)
    dx = x - x.mean()
    sxx = float(np.dot(dx, dx))
    if sxx == 0.0:
        raise InsufficientData("all dwell points share one height")

    slope = float(np.dot(dx, y - y.mean())) / sxx
    intercept = float(y.mean()) - slope * float(x.mean())
    return TrendFit(slope=slope, intercept=intercept, n_points=len(points))
