"""Variable-length integer ("CompactSize") coding."""

import struct
from typing import NamedTuple

from chainlens.errors import TruncatedData

_WIDTHS = {0xFD: 2, 0xFE: 4, 0xFF: 8}


class VarInt(NamedTuple):
    value: int
    consumed: int


def parse_varint(data: bytes, offset: int = 0, end: int | None = None) -> VarInt:
    """
    Decode a varint at ``offset``.

    Non-canonical encodings (a wider class than the value needs) decode
    normally; use ``is_canonical_varint`` to detect them.

    Raises:
        TruncatedData: If the prefix or its following bytes are missing
    """
    limit = len(data) if end is None else end
    if offset >= limit:
        raise TruncatedData(f"varint prefix missing at offset {offset}")

    prefix = data[offset]
    if prefix < 0xFD:
        return VarInt(prefix, 1)

    width = _WIDTHS[prefix]
    if offset + 1 + width > limit:
        raise TruncatedData(
            f"varint at offset {offset} needs {width} more bytes, "
            f"{limit - offset - 1} available"
        )
    value = int.from_bytes(data[offset + 1 : offset + 1 + width], "little")
    return VarInt(value, 1 + width)


def encode_varint(value: int) -> bytes:
    """Encode ``value`` in the shortest class."""
    if value < 0:
        raise ValueError(f"varint cannot encode negative value {value}")
    if value < 0xFD:
        return bytes((value,))
    if value <= 0xFFFF:
        return b"\xfd" + struct.pack("<H", value)
    if value <= 0xFFFFFFFF:
        return b"\xfe" + struct.pack("<I", value)
    return b"\xff" + struct.pack("<Q", value)


def is_canonical_varint(value: int, consumed: int) -> bool:
    return consumed == len(encode_varint(value))


def encode_varbytes(data: bytes) -> bytes:
    return encode_varint(len(data)) + data
