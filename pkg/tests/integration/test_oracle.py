"""
Integration tests comparing every analysis against the generator's ground
truth on the shipped scenarios.
"""

from collections import defaultdict

import pytest

from chainlens.analytics import (
    degree_spectrogram,
    dwell_time,
    extranonce_series,
    flow_row,
    spam_episodes,
)
from chainlens.chaingraph import chain_stats, verify_graph

SHIPPED = ["churn-heavy", "miner-lines", "spam-worms"]


@pytest.mark.slow
@pytest.mark.parametrize("name", SHIPPED)
class TestOracleEquivalence:
    """Analyses over parsed bytes reproduce what the generator planted."""

    def test_stats(self, name, shipped_result, shipped_graph):
        """Test vertex counts match the manifest."""
        stats = chain_stats(shipped_graph(name))
        truth = shipped_result(name).manifest.stats

        assert (
            stats.blocks,
            stats.transactions,
            stats.inputs,
            stats.outputs,
            stats.addresses,
            stats.raw_bytes,
        ) == (
            truth.blocks,
            truth.transactions,
            truth.inputs,
            truth.outputs,
            truth.addresses,
            truth.raw_bytes,
        )

    def test_verify_and_fees(self, name, shipped_result, shipped_graph):
        """Test the chain verifies and fees per block match."""
        report = verify_graph(shipped_graph(name))

        assert report.ok, report.violations[:5]
        assert [report.fees[t.height] for t in shipped_result(name).manifest.blocks] == [
            t.fees for t in shipped_result(name).manifest.blocks
        ]

    def test_flows(self, name, shipped_result, shipped_graph):
        """Test every flow row matches the planted source fractions."""
        graph = shipped_graph(name)
        for truth in shipped_result(name).manifest.blocks:
            row = flow_row(graph, truth.height)
            assert [c.src_height for c in row.cells] == [f.src_height for f in truth.flows]
            assert [c.fraction for c in row.cells] == pytest.approx(
                [f.fraction for f in truth.flows], rel=1e-9
            )

    def test_dwell(self, name, shipped_result, shipped_graph):
        """Test dwell per block matches the planted spends."""
        graph = shipped_graph(name)
        for truth in shipped_result(name).manifest.blocks:
            point = dwell_time(graph, truth.height)
            if truth.dwell is None:
                assert point is None
                continue
            assert point is not None
            assert point.included_amount == truth.included_satoshis
            assert point.dwell == pytest.approx(truth.dwell, rel=1e-9)

    def test_degrees(self, name, shipped_result, shipped_graph):
        """Test degree bins match the planted transaction shapes."""
        by_height: dict[int, list[tuple[int, int]]] = defaultdict(list)
        for b in degree_spectrogram(shipped_graph(name)):
            by_height[b.height].append((b.signed_degree, b.count))

        for truth in shipped_result(name).manifest.blocks:
            assert by_height[truth.height] == [tuple(d) for d in truth.degrees]

    def test_extranonce(self, name, shipped_result, shipped_graph):
        """Test extranonce values and coinbase spend heights match."""
        samples = extranonce_series(shipped_graph(name))
        blocks = shipped_result(name).manifest.blocks

        assert [s.extranonce for s in samples] == [t.extranonce for t in blocks]
        assert [s.spend_height for s in samples] == [t.coinbase_spend_height for t in blocks]

    def test_episodes(self, name, shipped_result, shipped_graph):
        """Test detected spam episodes are exactly the planted ones."""
        detected = spam_episodes(degree_spectrogram(shipped_graph(name)))
        planted = shipped_result(name).manifest.episodes

        assert [
            (e.direction, e.signature_degree, e.start_height, e.end_height, e.tx_count)
            for e in detected
        ] == [
            (e.direction, e.signature_degree, e.start_height, e.end_height, e.tx_count)
            for e in planted
        ]
