"""
Pytest configuration and shared fixtures for the chainlens tests.
"""

import struct
from functools import cache
from pathlib import Path
from typing import Callable, Sequence

import pytest

from chainlens.chaingraph import ChainGraph, build_graph
from chainlens.synth import SynthResult, generate_chain, load_scenario
from chainlens.wire import (
    SATOSHIS_PER_BTC,
    ZERO_HASH,
    BlockHeader,
    BlockRecord,
    Hash256,
    MAGIC,
    TxIn,
    TxOut,
    TxRecord,
    merkle_root,
    scan_file,
)
from chainlens.wire.script import p2pk_script, p2pkh_script, push_data

SCENARIOS_DIR = Path(__file__).parent.parent / "scenarios"

GENESIS_HEADER_HEX = (
    "0100000000000000000000000000000000000000000000000000000000000000"
    "000000003ba3edfd7a7b12b27ac72c3e67768f617fc81bc3888a51323a9fb8aa"
    "4b1e5e4a29ab5f49ffff001d1dac2b7c"
)
GENESIS_COINBASE_HEX = (
    "01000000010000000000000000000000000000000000000000000000000000000000000000"
    "ffffffff4d04ffff001d0104455468652054696d65732030332f4a616e2f3230303920"
    "4368616e63656c6c6f72206f6e206272696e6b206f66207365636f6e64206261696c6f"
    "757420666f722062616e6b73ffffffff0100f2052a01000000434104678afdb0fe5548"
    "271967f1a67130b7105cd6a828e03909a67962e0ea1f61deb649f6bc3f4cef38c4f355"
    "04e51ec112de5c384df7ba0b8d578a4c702b6bf11d5fac00000000"
)
GENESIS_HASH = "000000000019d6689c085ae165831e934ff763ae46a2a6c172b3f1b60a8ce26f"
GENESIS_MERKLE = "4a5e1e4baab89f3a32518a88c31bc87f618f76673e2cc77ab2127b7afdeda33b"


class ChainBuilder:
    """
    Builds small linked chains by hand.

    Every block gets a coinbase paying ``reward`` (extranonce 1 unless given)
    followed by the transactions passed to ``add_block``.
    """

    def __init__(self, reward: int = 50 * SATOSHIS_PER_BTC) -> None:
        self.reward = reward
        self.blocks: list[BlockRecord] = []
        self._counter = 0

    def _script(self) -> bytes:
        self._counter += 1
        return p2pkh_script(self._counter.to_bytes(20, "big"))

    def coinbase(
        self, height: int, values: Sequence[int] | None = None, extranonce: bytes = b"\x01"
    ) -> TxRecord:
        script_sig = (
            push_data(b"\xff\xff\x00\x1d")
            + push_data(extranonce)
            + push_data(height.to_bytes(4, "little"))
        )
        values = [self.reward] if values is None else list(values)
        return TxRecord.build(
            [TxIn.coinbase(script_sig)], [TxOut(v, self._script()) for v in values]
        )

    def spend(
        self, sources: Sequence[tuple[TxRecord, int]], values: Sequence[int]
    ) -> TxRecord:
        return TxRecord.build(
            [TxIn(tx.txid, vout, b"", 0xFFFFFFFF) for tx, vout in sources],
            [TxOut(v, self._script()) for v in values],
        )

    def add_block(
        self,
        txs: Sequence[TxRecord] = (),
        coinbase: TxRecord | None = None,
        extranonce: bytes = b"\x01",
    ) -> BlockRecord:
        height = len(self.blocks)
        all_txs = [coinbase or self.coinbase(height, extranonce=extranonce), *txs]
        header = BlockHeader(
            version=1,
            prev_hash=self.blocks[-1].block_hash if self.blocks else ZERO_HASH,
            merkle_root=merkle_root([tx.txid for tx in all_txs]),
            timestamp=1231006505 + 600 * height,
            bits=0x1D00FFFF,
            nonce=height,
        )
        block = BlockRecord.build(header, all_txs)
        self.blocks.append(block)
        return block

    def extend_to(self, height: int) -> None:
        """Append coinbase-only blocks until ``height`` exists."""
        while len(self.blocks) <= height:
            self.add_block()

    def graph(self) -> ChainGraph:
        return build_graph(list(self.blocks))


@pytest.fixture
def chain_builder() -> ChainBuilder:
    """A fresh hand-made chain builder."""
    return ChainBuilder()


def frame(payload: bytes) -> bytes:
    return MAGIC + struct.pack("<I", len(payload)) + payload


@pytest.fixture
def genesis_payload() -> bytes:
    """Header, tx count and coinbase of the main-network genesis block."""
    return bytes.fromhex(GENESIS_HEADER_HEX) + b"\x01" + bytes.fromhex(GENESIS_COINBASE_HEX)


@pytest.fixture
def genesis_frame(genesis_payload: bytes) -> bytes:
    """The genesis block as it appears in blk00000.dat."""
    return frame(genesis_payload)


@pytest.fixture
def two_tx_block() -> BlockRecord:
    """
    A block shaped like the first block with a payment: a 134-byte coinbase
    paying a 65-byte public key and a 275-byte spend of it with two P2PK
    outputs. 490 payload bytes.
    """
    pubkey = b"\x04" + bytes(range(64))
    coinbase = TxRecord.build(
        [TxIn.coinbase(bytes.fromhex("04ffff001d0102"))],
        [TxOut(50 * SATOSHIS_PER_BTC, p2pk_script(pubkey))],
    )
    payment = TxRecord.build(
        [TxIn(coinbase.txid, 0, push_data(bytes(range(71))), 0xFFFFFFFF)],
        [
            TxOut(10 * SATOSHIS_PER_BTC, p2pk_script(b"\x04" + bytes(range(64, 128)))),
            TxOut(40 * SATOSHIS_PER_BTC, p2pk_script(pubkey)),
        ],
    )
    header = BlockHeader(
        version=1,
        prev_hash=Hash256(bytes(range(32))),
        merkle_root=merkle_root([coinbase.txid, payment.txid]),
        timestamp=1231731025,
        bits=0x1D00FFFF,
        nonce=1889418792,
    )
    return BlockRecord.build(header, [coinbase, payment])


@cache
def _shipped_result(name: str) -> SynthResult:
    return generate_chain(load_scenario(SCENARIOS_DIR / f"{name}.ini"))


@cache
def _shipped_graph(name: str) -> ChainGraph:
    files = _shipped_result(name).files
    return build_graph(
        [block for index, data in enumerate(files) for block in scan_file(data, index)]
    )


@pytest.fixture(scope="session")
def shipped_result() -> Callable[[str], SynthResult]:
    """Generate a shipped scenario once per session."""
    return _shipped_result


@pytest.fixture(scope="session")
def shipped_graph() -> Callable[[str], ChainGraph]:
    """Chain graph of a shipped scenario, built once per session."""
    return _shipped_graph


@pytest.fixture(autouse=True)
def mock_env_vars(monkeypatch: pytest.MonkeyPatch) -> None:
    """Keep the developer's environment out of the tests."""
    for name in (
        "CHAINLENS_WORKERS",
        "CHAINLENS_MIN_DEGREE",
        "CHAINLENS_MIN_COUNT",
        "CHAINLENS_MAX_GAP",
        "CHAINLENS_RESET_THRESHOLD",
    ):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("CHAINLENS_LOG", "WARNING")


def build_spend496_chain(builder: ChainBuilder) -> ChainBuilder:
    """
    Mine 1, 10 and 50 coins at heights 187, 248 and 360 and spend all three
    in one transaction at height 496.
    """
    coinbases = {}
    for height, amount in ((187, 1), (248, 10), (360, 50)):
        builder.extend_to(height - 1)
        value = amount * SATOSHIS_PER_BTC
        tx = builder.coinbase(height, [value, builder.reward - value] if amount < 50 else None)
        builder.add_block(coinbase=tx)
        coinbases[height] = tx
    builder.extend_to(495)
    spend = builder.spend(
        [(coinbases[187], 0), (coinbases[248], 0), (coinbases[360], 0)],
        [61 * SATOSHIS_PER_BTC],
    )
    builder.add_block([spend])
    return builder


@pytest.fixture
def spend496_chain(chain_builder: ChainBuilder) -> ChainBuilder:
    """A 497-block chain whose last block spends three old coinbases."""
    return build_spend496_chain(chain_builder)
