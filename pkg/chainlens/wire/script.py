"""Script templates and push-sequence parsing. Scripts are never executed."""

from typing import Iterator

OP_0 = 0x00
OP_PUSHDATA1 = 0x4C
OP_PUSHDATA2 = 0x4D
OP_PUSHDATA4 = 0x4E
OP_RETURN = 0x6A
OP_DUP = 0x76
OP_EQUAL = 0x87
OP_EQUALVERIFY = 0x88
OP_HASH160 = 0xA9
OP_CHECKSIG = 0xAC

_PUSHDATA_WIDTHS = {OP_PUSHDATA1: 1, OP_PUSHDATA2: 2, OP_PUSHDATA4: 4}


def iter_pushes(script: bytes) -> Iterator[bytes]:
    """
    Yield the data of each leading push operation.

    Iteration stops at the first non-push opcode or at a push that runs
    past the end of the script.
    """
    i, n = 0, len(script)
    while i < n:
        op = script[i]
        i += 1
        if op < OP_PUSHDATA1:
            size = op
        elif op in _PUSHDATA_WIDTHS:
            width = _PUSHDATA_WIDTHS[op]
            if i + width > n:
                return
            size = int.from_bytes(script[i : i + width], "little")
            i += width
        else:
            return
        if i + size > n:
            return
        yield script[i : i + size]
        i += size


def push_data(data: bytes) -> bytes:
    """Minimal direct push for payloads under 76 bytes."""
    if len(data) >= OP_PUSHDATA1:
        return bytes((OP_PUSHDATA1, len(data))) + data
    return bytes((len(data),)) + data


def p2pkh_script(hash20: bytes) -> bytes:
    return bytes((OP_DUP, OP_HASH160, 20)) + hash20 + bytes((OP_EQUALVERIFY, OP_CHECKSIG))


def p2sh_script(hash20: bytes) -> bytes:
    return bytes((OP_HASH160, 20)) + hash20 + bytes((OP_EQUAL,))


def p2pk_script(pubkey: bytes) -> bytes:
    return bytes((len(pubkey),)) + pubkey + bytes((OP_CHECKSIG,))
