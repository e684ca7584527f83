"""
Unit tests for varint coding.
"""

import pytest

from chainlens.errors import TruncatedData
from chainlens.wire import encode_varint, is_canonical_varint, parse_varint


class TestParseVarint:
    """Tests for parse_varint."""

    @pytest.mark.parametrize(
        "raw, value, consumed",
        [
            ("00", 0, 1),
            ("fc", 252, 1),
            ("fdfd00", 253, 3),
            ("fdffff", 0xFFFF, 3),
            ("fe00000100", 0x10000, 5),
            ("ff0000000001000000", 0x100000000, 9),
        ],
    )
    def test_each_width_class(self, raw: str, value: int, consumed: int) -> None:
        """Test every prefix class decodes value and width."""
        assert parse_varint(bytes.fromhex(raw)) == (value, consumed)

    def test_reads_at_offset(self) -> None:
        """Test decoding starts at the given offset."""
        assert parse_varint(b"\xaa\xfd\x34\x12", 1) == (0x1234, 3)

    def test_missing_prefix_raises(self) -> None:
        """Test an empty buffer raises TruncatedData."""
        with pytest.raises(TruncatedData):
            parse_varint(b"")

    def test_short_payload_raises(self) -> None:
        """Test a wide prefix without its payload raises TruncatedData."""
        with pytest.raises(TruncatedData):
            parse_varint(b"\xfe\x01\x02")

    def test_end_bound_is_respected(self) -> None:
        """Test bytes past ``end`` are not read."""
        with pytest.raises(TruncatedData):
            parse_varint(b"\xfd\x01\x02", 0, 2)

    def test_noncanonical_decodes(self) -> None:
        """Test a value in a wider class than needed still decodes."""
        value, consumed = parse_varint(bytes.fromhex("fd0500"))
        assert value == 5
        assert not is_canonical_varint(value, consumed)


class TestEncodeVarint:
    """Tests for encode_varint."""

    def test_shortest_class(self) -> None:
        """Test the boundaries pick the shortest encoding."""
        assert encode_varint(252) == b"\xfc"
        assert encode_varint(253) == b"\xfd\xfd\x00"
        assert encode_varint(0x10000) == b"\xfe\x00\x00\x01\x00"
        assert len(encode_varint(2**32)) == 9

    def test_negative_rejected(self) -> None:
        """Test negative values are refused."""
        with pytest.raises(ValueError):
            encode_varint(-1)
