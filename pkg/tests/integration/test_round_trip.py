"""
Integration tests for byte-exact parse/serialize over a long synthetic chain.
"""

import pytest

from chainlens.chaingraph import build_graph, chain_stats, verify_graph
from chainlens.synth import PatternSpec, ScenarioSpec, generate_chain
from chainlens.wire import scan_file, serialize_block


@pytest.fixture(scope="module")
def long_chain():
    spec = ScenarioSpec(
        name="long",
        seed=10_000,
        n_blocks=10_000,
        max_file_bytes=1_000_000,
        patterns=[
            PatternSpec(
                name="churn", kind="churn", start=110, end=9_999, degree=2, txs_per_block=1
            )
        ],
    )
    return generate_chain(spec)


@pytest.mark.slow
class TestRoundTrip:
    """Ten thousand blocks survive parse then serialize unchanged."""

    def test_files_reproduce(self, long_chain):
        """Test re-serializing every parsed block rebuilds each file exactly."""
        assert len(long_chain.files) > 1
        total = 0
        for index, data in enumerate(long_chain.files):
            blocks = list(scan_file(data, index))
            assert b"".join(serialize_block(b) for b in blocks) == data
            total += len(blocks)
        assert total == 10_000

    def test_graph_verifies(self, long_chain):
        """Test the parsed chain links, verifies and matches the manifest counts."""
        blocks = [b for i, data in enumerate(long_chain.files) for b in scan_file(data, i)]
        graph = build_graph(blocks)
        stats = chain_stats(graph)
        truth = long_chain.manifest.stats

        assert verify_graph(graph).ok
        assert graph.max_height == 9_999
        assert (stats.blocks, stats.transactions, stats.inputs, stats.outputs) == (
            truth.blocks,
            truth.transactions,
            truth.inputs,
            truth.outputs,
        )
        assert stats.raw_bytes == truth.raw_bytes
