"""
Unit tests for identifier hashing and Merkle roots.
"""

import pytest

from chainlens.errors import MalformedBlock
from chainlens.wire import Hash256, double_sha256, hash160, merkle_root
from tests.conftest import GENESIS_HASH, GENESIS_HEADER_HEX, GENESIS_MERKLE


class TestHash256:
    """Tests for the Hash256 identifier type."""

    def test_empty_input_digest(self) -> None:
        """Test the double SHA-256 of nothing."""
        digest = double_sha256(b"")
        assert digest.hex() == (
            "5df6e0e2761359d30a8275058e299fcc0381534545f55cf43e41983f5d4c9456"
        )
        assert str(digest) == (
            "56944c5d3f98413ef45cf54545538103cc9f298e0575820ad3591376e2e0f65d"
        )

    def test_genesis_header_hash(self) -> None:
        """Test the genesis header hashes to the well-known block hash."""
        assert str(double_sha256(bytes.fromhex(GENESIS_HEADER_HEX))) == GENESIS_HASH

    def test_display_round_trip(self) -> None:
        """Test from_display reverses str()."""
        h = Hash256.from_display(GENESIS_HASH)
        assert str(h) == GENESIS_HASH
        assert h[-1] == 0

    def test_wrong_length_rejected(self) -> None:
        """Test only 32-byte values are accepted."""
        with pytest.raises(ValueError):
            Hash256(b"\x00" * 31)

    def test_is_null(self) -> None:
        """Test the all-zero hash is null."""
        assert Hash256(bytes(32)).is_null
        assert not double_sha256(b"x").is_null


class TestHash160:
    """Tests for hash160."""

    def test_genesis_public_key(self) -> None:
        """Test the genesis coinbase key hashes to its known address hash."""
        pubkey = bytes.fromhex(
            "04678afdb0fe5548271967f1a67130b7105cd6a828e03909a67962e0ea1f61deb6"
            "49f6bc3f4cef38c4f35504e51ec112de5c384df7ba0b8d578a4c702b6bf11d5f"
        )
        assert hash160(pubkey).hex() == "62e907b15cbf27d5425399ebf6f0fb50ebb88f18"


class TestMerkleRoot:
    """Tests for merkle_root."""

    def test_single_txid_is_root(self) -> None:
        """Test a one-transaction block's root is its txid."""
        txid = Hash256.from_display(GENESIS_MERKLE)
        assert merkle_root([txid]) == txid

    def test_pair(self) -> None:
        """Test two ids hash as their concatenation."""
        a, b = double_sha256(b"a"), double_sha256(b"b")
        assert merkle_root([a, b]) == double_sha256(a + b)

    def test_odd_level_duplicates_last(self) -> None:
        """Test an odd count pairs the last id with itself."""
        a, b, c = double_sha256(b"a"), double_sha256(b"b"), double_sha256(b"c")
        expected = double_sha256(double_sha256(a + b) + double_sha256(c + c))
        assert merkle_root([a, b, c]) == expected

    def test_empty_raises(self) -> None:
        """Test an empty list is malformed."""
        with pytest.raises(MalformedBlock):
            merkle_root([])
