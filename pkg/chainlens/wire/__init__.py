"""Raw block-file format: framing, records, hashing and addresses."""

from chainlens.wire.address import (
    AddressKey,
    AddressKind,
    BtcAddress,
    base58check_decode,
    base58check_encode,
    extract_addresses,
    match_template,
)
from chainlens.wire.blockfile import list_block_files, scan_file, scan_path
from chainlens.wire.codec import MAGIC, parse_block, serialize_block
from chainlens.wire.hashing import (
    ZERO_HASH,
    Hash256,
    double_sha256,
    hash160,
    merkle_root,
)
from chainlens.wire.records import (
    SATOSHIS_PER_BTC,
    BlockHeader,
    BlockRecord,
    TxIn,
    TxOut,
    TxRecord,
    block_hash,
    serialize_payload,
    txid,
)
from chainlens.wire.script import iter_pushes
from chainlens.wire.varint import encode_varint, is_canonical_varint, parse_varint

__all__ = [
    "MAGIC",
    "SATOSHIS_PER_BTC",
    "ZERO_HASH",
    "AddressKey",
    "AddressKind",
    "BlockHeader",
    "BlockRecord",
    "BtcAddress",
    "Hash256",
    "TxIn",
    "TxOut",
    "TxRecord",
    "base58check_decode",
    "base58check_encode",
    "block_hash",
    "double_sha256",
    "encode_varint",
    "extract_addresses",
    "hash160",
    "is_canonical_varint",
    "iter_pushes",
    "list_block_files",
    "match_template",
    "merkle_root",
    "parse_block",
    "parse_varint",
    "scan_file",
    "scan_path",
    "serialize_block",
    "serialize_payload",
    "txid",
]
