"""
Unit tests for inter-block flow and dwell time.
"""

import pytest

from chainlens.analytics import (
    DwellPoint,
    TrendFit,
    dwell_from_flow,
    dwell_series,
    dwell_time,
    dwell_trend,
    flow_matrix,
    flow_row,
)
from chainlens.errors import InsufficientData
from chainlens.wire import SATOSHIS_PER_BTC
from tests.conftest import ChainBuilder


class TestFlowRow:
    """Tests for flow_row."""

    def test_three_sources(self, spend496_chain: ChainBuilder) -> None:
        """Test the fractions of a block spending three old coinbases."""
        row = flow_row(spend496_chain.graph(), 496)

        assert [(c.src_height, c.dst_height) for c in row.cells] == [
            (187, 496),
            (248, 496),
            (360, 496),
        ]
        assert [c.fraction for c in row.cells] == pytest.approx([1 / 61, 10 / 61, 50 / 61])
        assert row.flow_amount == 61 * SATOSHIS_PER_BTC
        assert row.same_block_amount == 0

    def test_coinbase_only_block_is_empty(self, chain_builder: ChainBuilder) -> None:
        """Test a block with only a coinbase has no flow."""
        chain_builder.extend_to(2)
        row = flow_row(chain_builder.graph(), 2)
        assert row.cells == []
        assert row.flow_amount == 0

    def test_same_block_excluded(self, chain_builder: ChainBuilder) -> None:
        """Test value spent from the same block is kept out of the cells."""
        coinbase = chain_builder.add_block().coinbase
        parent = chain_builder.spend([(coinbase, 0)], [10, chain_builder.reward - 10])
        child = chain_builder.spend([(parent, 0)], [10])
        chain_builder.add_block([parent, child])

        row = flow_row(chain_builder.graph(), 1)

        assert [(c.src_height, c.fraction) for c in row.cells] == [(0, 1.0)]
        assert row.flow_amount == chain_builder.reward
        assert row.same_block_amount == 10

    def test_fractions_merge_per_source(self, chain_builder: ChainBuilder) -> None:
        """Test several inputs from one block form one cell."""
        coinbase = chain_builder.add_block(
            coinbase=chain_builder.coinbase(0, [30, 70])
        ).coinbase
        chain_builder.add_block([chain_builder.spend([(coinbase, 0), (coinbase, 1)], [100])])

        row = flow_row(chain_builder.graph(), 1)

        assert len(row.cells) == 1
        assert row.cells[0].fraction == pytest.approx(1.0)


class TestFlowMatrix:
    """Tests for flow_matrix."""

    def test_upper_triangular(self, spend496_chain: ChainBuilder) -> None:
        """Test every cell points from an older block to a newer one."""
        cells = flow_matrix(spend496_chain.graph())

        assert len(cells) == 3
        assert all(c.src_height < c.dst_height for c in cells)
        assert sum(c.fraction for c in cells) == pytest.approx(1.0)


class TestDwellTime:
    """Tests for dwell_time and dwell_series."""

    def test_three_sources(self, spend496_chain: ChainBuilder) -> None:
        """Test the amount-weighted age of the three spent coinbases."""
        point = dwell_time(spend496_chain.graph(), 496)

        assert point is not None
        assert point.dwell == pytest.approx(9589 / 61)
        assert f"{point.dwell:.3f}" == "157.197"
        assert point.included_amount == 6_100_000_000

    @pytest.mark.parametrize("factor", [2, 3, 7])
    def test_scaling_amounts_keeps_dwell(self, factor: int) -> None:
        """Test multiplying every spent amount by one factor leaves dwell unchanged."""

        def spend_block(scale: int) -> float:
            builder = ChainBuilder(reward=scale * 50 * SATOSHIS_PER_BTC)
            sources = []
            for height, coins in ((3, 1), (5, 10), (8, 50)):
                builder.extend_to(height - 1)
                value = scale * coins * SATOSHIS_PER_BTC
                rest = builder.reward - value
                coinbase = builder.coinbase(height, [value, rest] if rest else None)
                builder.add_block(coinbase=coinbase)
                sources.append((coinbase, 0))
            builder.extend_to(19)
            builder.add_block([builder.spend(sources, [scale * 61 * SATOSHIS_PER_BTC])])
            point = dwell_time(builder.graph(), 20)
            assert point is not None
            return point.dwell

        assert spend_block(factor) == spend_block(1)
        assert spend_block(1) == pytest.approx((17 * 1 + 15 * 10 + 12 * 50) / 61)

    def test_coinbase_only_block(self, chain_builder: ChainBuilder) -> None:
        """Test a block with nothing but a coinbase has no dwell."""
        chain_builder.extend_to(1)
        assert dwell_time(chain_builder.graph(), 1) is None

    def test_same_block_counts_at_zero(self, chain_builder: ChainBuilder) -> None:
        """Test same-block inputs lower the mean at distance zero."""
        coinbase = chain_builder.add_block().coinbase
        parent = chain_builder.spend([(coinbase, 0)], [100, chain_builder.reward - 100])
        child = chain_builder.spend([(parent, 1)], [chain_builder.reward - 100])
        chain_builder.add_block([parent, child])

        point = dwell_time(chain_builder.graph(), 1)

        reward = chain_builder.reward
        assert point is not None
        assert point.included_amount == 2 * reward - 100
        assert point.dwell == pytest.approx(reward / (2 * reward - 100))

    def test_series_skips_empty_blocks(self, spend496_chain: ChainBuilder) -> None:
        """Test only blocks with dwell appear in the series."""
        series = dwell_series(spend496_chain.graph())
        assert [p.height for p in series] == [496]

    def test_series_start(self, spend496_chain: ChainBuilder) -> None:
        """Test heights below start are skipped."""
        assert dwell_series(spend496_chain.graph(), start=497) == []


class TestDwellFromFlow:
    """Tests for the flow-row dwell computation."""

    def test_matches_direct(self, spend496_chain: ChainBuilder) -> None:
        """Test the flow first moment equals the direct dwell."""
        graph = spend496_chain.graph()
        assert dwell_from_flow(flow_row(graph, 496), 496) == pytest.approx(9589 / 61)

    def test_matches_direct_with_same_block(self, chain_builder: ChainBuilder) -> None:
        """Test same-block value rescales the flow moment."""
        coinbase = chain_builder.add_block().coinbase
        parent = chain_builder.spend([(coinbase, 0)], [100, chain_builder.reward - 100])
        child = chain_builder.spend([(parent, 1)], [chain_builder.reward - 100])
        chain_builder.add_block([parent, child])
        graph = chain_builder.graph()

        direct = dwell_time(graph, 1)

        assert direct is not None
        assert dwell_from_flow(flow_row(graph, 1), 1) == pytest.approx(direct.dwell)

    def test_empty_row(self, chain_builder: ChainBuilder) -> None:
        """Test a block without flow has no dwell."""
        chain_builder.extend_to(0)
        assert dwell_from_flow(flow_row(chain_builder.graph(), 0), 0) is None


class TestDwellTrend:
    """Tests for dwell_trend."""

    def test_exact_line(self) -> None:
        """Test points on a line are fitted exactly."""
        points = [DwellPoint(h, 1.0 + 2.0 * h, 1) for h in range(5)]
        fit = dwell_trend(points)

        assert fit.slope == pytest.approx(2.0)
        assert fit.intercept == pytest.approx(1.0)
        assert fit.n_points == 5
        assert fit.at(10) == pytest.approx(21.0)

    def test_constant_dwell_is_flat(self) -> None:
        """Test a constant dwell fits a zero slope."""
        fit = dwell_trend([DwellPoint(h, 157.197, 1) for h in range(200, 500)])

        assert fit.slope == pytest.approx(0.0, abs=1e-12)
        assert fit.intercept == pytest.approx(157.197)

    def test_too_few_points(self) -> None:
        """Test a single point cannot be fitted."""
        with pytest.raises(InsufficientData):
            dwell_trend([DwellPoint(1, 5.0, 1)])

    def test_single_height(self) -> None:
        """Test points sharing one height cannot be fitted."""
        with pytest.raises(InsufficientData):
            dwell_trend([DwellPoint(3, 5.0, 1), DwellPoint(3, 6.0, 1)])

    def test_days_between_transactions(self) -> None:
        """Test dwell converts to days at 144 blocks per day."""
        fit = TrendFit(slope=0.0, intercept=864.0, n_points=2)
        assert fit.days_between_transactions(100) == pytest.approx(6.0)
        assert fit.days_between_transactions(100, blocks_per_day=288) == pytest.approx(3.0)
