"""
Parsed wire entities: headers, transactions and blocks with provenance.

Records are plain slotted dataclasses; each knows how to serialize itself
back into the canonical legacy byte layout.
"""

import struct
from dataclasses import dataclass, field
from typing import Sequence

from chainlens.wire.hashing import ZERO_HASH, Hash256, double_sha256
from chainlens.wire.varint import encode_varbytes, encode_varint

HEADER_STRUCT = struct.Struct("<i32s32sIII")
HEADER_SIZE = HEADER_STRUCT.size  # 80

COINBASE_VOUT = 0xFFFFFFFF
SATOSHIS_PER_BTC = 100_000_000
MAX_MONEY = 21_000_000 * SATOSHIS_PER_BTC


@dataclass(slots=True)
class BlockHeader:
    """The 80-byte block header."""

    version: int
    prev_hash: Hash256
    merkle_root: Hash256
    timestamp: int
    bits: int
    nonce: int

    def serialize(self) -> bytes:
        return HEADER_STRUCT.pack(
            self.version,
            self.prev_hash,
            self.merkle_root,
            self.timestamp,
            self.bits,
            self.nonce,
        )

    @classmethod
    def deserialize(cls, data: bytes, offset: int = 0) -> "BlockHeader":
        version, prev, root, timestamp, bits, nonce = HEADER_STRUCT.unpack_from(
            data, offset
        )
        return cls(version, Hash256(prev), Hash256(root), timestamp, bits, nonce)


@dataclass(slots=True)
class TxIn:
    prev_txid: Hash256
    prev_vout: int
    script_sig: bytes
    sequence: int
    is_coinbase: bool = field(init=False)

    def __post_init__(self) -> None:
        self.is_coinbase = (
            self.prev_vout == COINBASE_VOUT and self.prev_txid == ZERO_HASH
        )

    def serialize(self) -> bytes:
        return b"".join(
            (
                self.prev_txid,
                struct.pack("<I", self.prev_vout),
                encode_varbytes(self.script_sig),
                struct.pack("<I", self.sequence),
            )
        )

    @classmethod
    def coinbase(cls, script_sig: bytes, sequence: int = 0xFFFFFFFF) -> "TxIn":
        return cls(ZERO_HASH, COINBASE_VOUT, script_sig, sequence)


@dataclass(slots=True)
class TxOut:
    value: int
    pk_script: bytes

    def serialize(self) -> bytes:
        return struct.pack("<Q", self.value) + encode_varbytes(self.pk_script)


@dataclass(slots=True)
class TxRecord:
    """
    A transaction with its derived id.

    ``byte_span`` is the (offset, length) of the serialized transaction in
    its source file; records built in memory carry (0, 0) until framed and
    re-read.
    """

    version: int
    inputs: list[TxIn]
    outputs: list[TxOut]
    locktime: int
    txid: Hash256
    byte_span: tuple[int, int] = (0, 0)

    def serialize(self) -> bytes:
        return serialize_transaction(
            self.version, self.inputs, self.outputs, self.locktime
        )

    @property
    def is_coinbase(self) -> bool:
        return len(self.inputs) == 1 and self.inputs[0].is_coinbase

    @classmethod
    def build(
        cls,
        inputs: Sequence[TxIn],
        outputs: Sequence[TxOut],
        version: int = 1,
        locktime: int = 0,
    ) -> "TxRecord":
        """Create a transaction record, deriving its txid."""
        raw = serialize_transaction(version, inputs, outputs, locktime)
        return cls(version, list(inputs), list(outputs), locktime, double_sha256(raw))


@dataclass(slots=True)
class BlockRecord:
    """
    A parsed block with provenance.

    ``height`` stays -1 until the chain graph links the block. ``size`` is
    the declared payload size from the frame.
    """

    header: BlockHeader
    txs: list[TxRecord]
    block_hash: Hash256
    file_index: int = 0
    byte_offset: int = 0
    size: int = 0
    height: int = -1
    noncanonical_varints: int = 0

    @property
    def prev_hash(self) -> Hash256:
        return self.header.prev_hash

    @property
    def coinbase(self) -> TxRecord:
        return self.txs[0]

    @classmethod
    def build(cls, header: BlockHeader, txs: Sequence[TxRecord]) -> "BlockRecord":
        """Create an in-memory block; the caller supplies a matching Merkle root."""
        block = cls(header, list(txs), block_hash(header))
        block.size = len(serialize_payload(block))
        return block


def serialize_transaction(
    version: int, inputs: Sequence[TxIn], outputs: Sequence[TxOut], locktime: int
) -> bytes:
    return b"".join(
        (
            struct.pack("<i", version),
            encode_varint(len(inputs)),
            b"".join(tx_in.serialize() for tx_in in inputs),
            encode_varint(len(outputs)),
            b"".join(tx_out.serialize() for tx_out in outputs),
            struct.pack("<I", locktime),
        )
    )


def serialize_payload(block: BlockRecord) -> bytes:
    """Header, transaction count and transactions, without framing."""
    return b"".join(
        (
            block.header.serialize(),
            encode_varint(len(block.txs)),
            b"".join(tx.serialize() for tx in block.txs),
        )
    )


def block_hash(header: BlockHeader) -> Hash256:
    return double_sha256(header.serialize())


def txid(tx: TxRecord) -> Hash256:
    return double_sha256(tx.serialize())
