"""
Bit-exact block and transaction deserialization.

Layout (all integers little-endian)::

    frame   = magic(F9 BE B4 D9) | payload_size u32 | payload
    payload = header(80) | varint tx_count | tx*
    tx      = version i32 | varint n | txin*n | varint m | txout*m | locktime u32
    txin    = prev_txid(32) | prev_vout u32 | varbytes script_sig | sequence u32
    txout   = value u64 | varbytes pk_script
"""

import logging
import struct

from chainlens.errors import BadMagic, MalformedBlock, TruncatedData
from chainlens.wire.hashing import Hash256, double_sha256, merkle_root
from chainlens.wire.records import (
    HEADER_SIZE,
    MAX_MONEY,
    BlockHeader,
    BlockRecord,
    TxIn,
    TxOut,
    TxRecord,
    serialize_payload,
)
from chainlens.wire.varint import is_canonical_varint, parse_varint

logger = logging.getLogger(__name__)

MAGIC = b"\xf9\xbe\xb4\xd9"
FRAME_SIZE = 8

_U32 = struct.Struct("<I")
_I32 = struct.Struct("<i")
_U64 = struct.Struct("<Q")
_OUTPOINT = struct.Struct("<32sI")


class Deserializer:
    """
    Reads legacy transactions from a bounded window of a buffer.

    The cursor is an absolute offset into ``binary`` so byte spans recorded
    on transactions are positions in the source file when ``binary`` is the
    whole file.
    """

    def __init__(self, binary: bytes, start: int = 0, end: int | None = None) -> None:
        self.binary = binary
        self.view = memoryview(binary)
        self.cursor = start
        self.end = len(binary) if end is None else end
        self.noncanonical = 0

    def _need(self, n: int) -> None:
        if self.cursor + n > self.end:
            raise TruncatedData(
                f"need {n} bytes at offset {self.cursor}, "
                f"{self.end - self.cursor} available"
            )

    def read_varint(self) -> int:
        cursor = self.cursor
        if cursor < self.end:
            prefix = self.binary[cursor]
            if prefix < 0xFD:
                self.cursor = cursor + 1
                return prefix
        value, consumed = parse_varint(self.binary, cursor, self.end)
        if not is_canonical_varint(value, consumed):
            self.noncanonical += 1
            logger.debug(f"Non-canonical varint {value} at offset {cursor}")
        self.cursor = cursor + consumed
        return value

    def read_nbytes(self, n: int) -> bytes:
        self._need(n)
        start = self.cursor
        self.cursor += n
        return bytes(self.binary[start : self.cursor])

    def read_varbytes(self) -> bytes:
        return self.read_nbytes(self.read_varint())

    def _read_struct(self, fmt: struct.Struct) -> int:
        self._need(fmt.size)
        (value,) = fmt.unpack_from(self.binary, self.cursor)
        self.cursor += fmt.size
        return int(value)

    def read_header(self) -> BlockHeader:
        self._need(HEADER_SIZE)
        header = BlockHeader.deserialize(self.binary, self.cursor)
        self.cursor += HEADER_SIZE
        return header

    def read_tx(self) -> TxRecord:
        """Return a deserialized transaction with its txid and byte span."""
        start = self.cursor
        version = self._read_struct(_I32)

        n_inputs = self.read_varint()
        if n_inputs == 0:
            # Also what a witness marker byte looks like
            raise MalformedBlock(f"transaction at offset {start} has no inputs")
        read_input = self._read_input
        inputs = [read_input() for _ in range(n_inputs)]

        n_outputs = self.read_varint()
        if n_outputs == 0:
            raise MalformedBlock(f"transaction at offset {start} has no outputs")
        read_output = self._read_output
        outputs = [read_output() for _ in range(n_outputs)]

        locktime = self._read_struct(_U32)
        txid = double_sha256(self.view[start : self.cursor])
        return TxRecord(
            version, inputs, outputs, locktime, txid, (start, self.cursor - start)
        )

    def _read_input(self) -> TxIn:
        data = self.binary
        self._need(_OUTPOINT.size)
        prev, vout = _OUTPOINT.unpack_from(data, self.cursor)
        self.cursor += _OUTPOINT.size
        length = self.read_varint()
        self._need(length + 4)
        pos = self.cursor
        script = data[pos : pos + length]
        (sequence,) = _U32.unpack_from(data, pos + length)
        self.cursor = pos + length + 4
        return TxIn(Hash256(prev), vout, script, sequence)

    def _read_output(self) -> TxOut:
        data = self.binary
        self._need(9)
        (value,) = _U64.unpack_from(data, self.cursor)
        if value > MAX_MONEY:
            raise MalformedBlock(
                f"output value {value} above money supply at offset {self.cursor}"
            )
        self.cursor += 8
        length = self.read_varint()
        self._need(length)
        pos = self.cursor
        self.cursor = pos + length
        return TxOut(value, data[pos : pos + length])


def parse_block(data: bytes, file_index: int = 0, offset: int = 0) -> BlockRecord:
    """
    Parse one framed block starting at ``offset``.

    Args:
        data: Buffer holding the frame (usually the whole block file)
        file_index: Index of the source file, kept as provenance
        offset: Position of the magic bytes within ``data``

    Returns:
        The block record; it consumed ``8 + record.size`` bytes

    Raises:
        BadMagic: If the frame does not start with the network magic
        TruncatedData: If the buffer ends inside the frame
        MalformedBlock: On structural violations (empty block, misplaced
            coinbase, trailing bytes, Merkle root mismatch)
    """
    if offset + FRAME_SIZE > len(data):
        raise TruncatedData(f"block frame at offset {offset} is cut short")
    magic = bytes(data[offset : offset + 4])
    if magic != MAGIC:
        raise BadMagic(f"bad magic {magic.hex()} at offset {offset}")

    (size,) = _U32.unpack_from(data, offset + 4)
    payload_start = offset + FRAME_SIZE
    payload_end = payload_start + size
    if payload_end > len(data):
        raise TruncatedData(
            f"block at offset {offset} declares {size} bytes, "
            f"{len(data) - payload_start} available"
        )

    reader = Deserializer(data, payload_start, payload_end)
    header = reader.read_header()
    tx_count = reader.read_varint()
    if tx_count == 0:
        raise MalformedBlock(f"block at offset {offset} has no transactions")
    txs = [reader.read_tx() for _ in range(tx_count)]
    if reader.cursor != payload_end:
        raise MalformedBlock(
            f"block at offset {offset} has {payload_end - reader.cursor} trailing bytes"
        )

    _check_coinbase_placement(txs, offset)
    root = merkle_root([tx.txid for tx in txs])
    if root != header.merkle_root:
        raise MalformedBlock(
            f"Merkle root mismatch at offset {offset}: "
            f"header {header.merkle_root}, computed {root}"
        )

    return BlockRecord(
        header=header,
        txs=txs,
        block_hash=double_sha256(data[payload_start : payload_start + HEADER_SIZE]),
        file_index=file_index,
        byte_offset=offset,
        size=size,
        noncanonical_varints=reader.noncanonical,
    )


def _check_coinbase_placement(txs: list[TxRecord], offset: int) -> None:
    if not txs[0].is_coinbase:
        raise MalformedBlock(f"first transaction of block at {offset} is not a coinbase")
    for position, tx in enumerate(txs[1:], start=1):
        if any(tx_in.is_coinbase for tx_in in tx.inputs):
            raise MalformedBlock(
                f"coinbase input in transaction {position} of block at {offset}"
            )


def serialize_block(block: BlockRecord) -> bytes:
    """Frame a block: magic, payload size and payload."""
    payload = serialize_payload(block)
    return MAGIC + _U32.pack(len(payload)) + payload
