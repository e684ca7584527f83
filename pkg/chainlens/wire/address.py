"""
Address derivation from output scripts and base58check coding.

Address identity is template-derived: a (version byte, 20-byte hash) pair
whose base58check string is the human-readable form.
"""

from dataclasses import dataclass
from enum import StrEnum
from typing import NamedTuple

import base58

from chainlens.errors import InvalidAddress
from chainlens.wire.hashing import hash160
from chainlens.wire.script import (
    OP_CHECKSIG,
    OP_DUP,
    OP_EQUAL,
    OP_EQUALVERIFY,
    OP_HASH160,
)

P2PKH_VERSION = 0x00
P2SH_VERSION = 0x05


class AddressKind(StrEnum):
    P2PKH = "P2PKH"
    P2PK = "P2PK-derived"
    P2SH = "P2SH"
    UNKNOWN = "unknown"


class AddressKey(NamedTuple):
    """Compact address identity used by indexes: version byte + hash."""

    version: int
    hash20: bytes

    def encode(self) -> str:
        return base58check_encode(self.version, self.hash20)


@dataclass(frozen=True, slots=True)
class BtcAddress:
    encoded: str
    kind: AddressKind


def base58check_encode(version: int, payload: bytes) -> str:
    """
    Encode a version byte and 20-byte payload as base58check.

    Raises:
        InvalidAddress: If the payload is not 20 bytes or version not a byte
    """
    if len(payload) != 20 or not 0 <= version <= 0xFF:
        raise InvalidAddress(
            f"need version byte and 20-byte payload, got {version}/{len(payload)}"
        )
    return str(base58.b58encode_check(bytes((version,)) + payload).decode("ascii"))


def base58check_decode(text: str) -> tuple[int, bytes]:
    """
    Decode a base58check address into (version, payload).

    Raises:
        InvalidAddress: On a character outside the alphabet, a bad checksum
            or a payload that is not 21 bytes
    """
    try:
        raw = base58.b58decode_check(text)
    except ValueError as e:
        raise InvalidAddress(f"{text!r}: {e}") from e
    if len(raw) != 21:
        raise InvalidAddress(f"{text!r}: decoded to {len(raw)} bytes, expected 21")
    return raw[0], bytes(raw[1:])


def match_template(pk_script: bytes) -> tuple[AddressKind, AddressKey] | None:
    """Match the standard templates without base58 encoding anything."""
    n = len(pk_script)
    if (
        n == 25
        and pk_script[0] == OP_DUP
        and pk_script[1] == OP_HASH160
        and pk_script[2] == 20
        and pk_script[23] == OP_EQUALVERIFY
        and pk_script[24] == OP_CHECKSIG
    ):
        return AddressKind.P2PKH, AddressKey(P2PKH_VERSION, bytes(pk_script[3:23]))
    if (
        n == 23
        and pk_script[0] == OP_HASH160
        and pk_script[1] == 20
        and pk_script[22] == OP_EQUAL
    ):
        return AddressKind.P2SH, AddressKey(P2SH_VERSION, bytes(pk_script[2:22]))
    if (n == 35 or n == 67) and pk_script[0] == n - 2 and pk_script[-1] == OP_CHECKSIG:
        pubkey = bytes(pk_script[1:-1])
        return AddressKind.P2PK, AddressKey(P2PKH_VERSION, hash160(pubkey))
    return None


def extract_addresses(pk_script: bytes) -> list[BtcAddress]:
    """
    Derive the addresses a pkScript pays to.

    Unknown templates are data, not errors: they produce an empty list.
    """
    matched = match_template(pk_script)
    if matched is None:
        return []
    kind, key = matched
    return [BtcAddress(key.encode(), kind)]
