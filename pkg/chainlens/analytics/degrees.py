"""
Degree spectrogram and spam episode detection.

Each block contributes a histogram of its transactions' input counts on
the positive axis and output counts on the negative axis. Spam algorithms
show up as long runs of blocks with many transactions sharing one
anomalous degree.
"""

from collections import Counter, defaultdict

from chainlens.analytics.records import DegreeBin, SpamEpisode
from chainlens.chaingraph import ChainGraph
from chainlens.config import settings


def degree_spectrogram(graph: ChainGraph, start: int = 0) -> list[DegreeBin]:
    """Per-block transaction counts by +in / -out degree, raw integer degrees."""
    bins: list[DegreeBin] = []
    for height in graph.heights(start):
        txs = graph.blocks[height].txs
        counts = Counter(-len(tx.outputs) for tx in txs)
        counts.update(len(tx.inputs) for tx in txs)
        bins.extend(
            DegreeBin(height, degree, count) for degree, count in sorted(counts.items())
        )
    return bins


def spam_episodes(
    bins: list[DegreeBin],
    min_degree: int = settings.min_degree,
    min_count: int = settings.min_count,
    max_gap: int = settings.max_gap,
) -> list[SpamEpisode]:
    """
    Find sustained runs of blocks dominated by one anomalous degree.

    A block qualifies for a signed degree d when |d| >= ``min_degree`` and
    it holds at least ``min_count`` transactions of that degree. Qualifying
    blocks of one degree merge into an episode while at most ``max_gap``
    non-qualifying blocks separate them.

    Returns:
        Episodes ordered by start height; ``tx_count`` sums the qualifying
        blocks' counts
    """
    hits: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for b in bins:
        if abs(b.signed_degree) >= min_degree and b.count >= min_count:
            hits[b.signed_degree].append((b.height, b.count))

    episodes: list[SpamEpisode] = []
    for signed_degree, blocks in hits.items():
        blocks.sort()
        start, end, total = blocks[0][0], blocks[0][0], blocks[0][1]
        for height, count in blocks[1:]:
            if height - end - 1 <= max_gap:
                end = height
                total += count
                continue
            episodes.append(_episode(signed_degree, start, end, total))
            start, end, total = height, height, count
        episodes.append(_episode(signed_degree, start, end, total))

    episodes.sort(
        key=lambda e: (e.start_height, e.direction, e.signature_degree, e.end_height)
    )
    return episodes


def _episode(signed_degree: int, start: int, end: int, tx_count: int) -> SpamEpisode:
    return SpamEpisode(
        direction="in" if signed_degree > 0 else "out",
        signature_degree=abs(signed_degree),
        start_height=start,
        end_height=end,
        tx_count=tx_count,
    )
