"""
Identifier hashing for the raw block format.

Block hashes, transaction ids and Merkle roots are never stored in the
files; they are all derived here with double SHA-256.
"""

import hashlib
from typing import Sequence

from Cryptodome.Hash import RIPEMD160

from chainlens.errors import MalformedBlock


class Hash256(bytes):
    """
    A 32-byte double-SHA256 identifier kept in internal (little-endian) order.

    ``str()`` gives the conventional display form: the byte-reversed,
    lowercase hex string.
    """

    __slots__ = ()

    def __new__(cls, value: bytes) -> "Hash256":
        if len(value) != 32:
            raise ValueError(f"Hash256 needs 32 bytes, got {len(value)}")
        return super().__new__(cls, value)

    def __str__(self) -> str:
        return self[::-1].hex()

    def __repr__(self) -> str:
        return f"Hash256({self})"

    @classmethod
    def from_display(cls, text: str) -> "Hash256":
        """Parse the byte-reversed hex display form."""
        return cls(bytes.fromhex(text)[::-1])

    @property
    def is_null(self) -> bool:
        return not any(self)


ZERO_HASH = Hash256(bytes(32))


def sha256(data: bytes) -> bytes:
    return hashlib.sha256(data).digest()


def double_sha256(data: bytes) -> Hash256:
    """SHA-256 of SHA-256, as used for every identifier on the chain."""
    return Hash256(hashlib.sha256(hashlib.sha256(data).digest()).digest())


def _ripemd160(data: bytes) -> bytes:
    try:
        h = hashlib.new("ripemd160")
    except ValueError:
        # OpenSSL 3 builds may ship without the legacy provider
        return RIPEMD160.new(data).digest()
    h.update(data)
    return h.digest()


def hash160(data: bytes) -> bytes:
    """RIPEMD-160 of SHA-256; turns a public key into its 20-byte address hash."""
    return _ripemd160(sha256(data))


def merkle_root(txids: Sequence[bytes]) -> Hash256:
    """
    Compute the Merkle root of an ordered list of transaction ids.

    Args:
        txids: Transaction ids in internal byte order, in block order

    Returns:
        The root hash; a single id is its own root

    Raises:
        MalformedBlock: If the list is empty
    """
    if not txids:
        raise MalformedBlock("Merkle root of an empty transaction list")

    level = [bytes(txid) for txid in txids]
    while len(level) > 1:
        # Odd levels pair their last element with itself
        if len(level) % 2:
            level.append(level[-1])
        level = [
            double_sha256(level[i] + level[i + 1]) for i in range(0, len(level), 2)
        ]
    return Hash256(level[0])
