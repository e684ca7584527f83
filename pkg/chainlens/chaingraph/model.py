"""
The full-fidelity chain graph: blocks, transactions, inputs, outputs and
addresses, linked by spend edges.

A ``ChainGraph`` is built once by ``build_graph`` and treated as read-only
afterwards; any number of analyses may traverse it concurrently.
"""

from dataclasses import dataclass, field
from typing import NamedTuple

from chainlens.errors import BadHeight, InvalidAddress
from chainlens.wire import (
    AddressKey,
    BlockRecord,
    Hash256,
    base58check_decode,
    match_template,
)


class Outpoint(NamedTuple):
    txid: Hash256
    vout: int

    def __str__(self) -> str:
        return f"{self.txid}:{self.vout}"


class TxLocation(NamedTuple):
    height: int
    position: int


class SpendLink(NamedTuple):
    """An input resolved to the output it spends."""

    spender_txid: Hash256
    input_index: int
    source: Outpoint
    source_height: int
    amount: int
    spender_height: int


@dataclass(slots=True)
class OutputEntry:
    value: int
    pk_script: bytes
    height: int
    position: int
    coinbase: bool
    spent_by: SpendLink | None = None


InputKey = tuple[Hash256, int]


@dataclass
class ChainGraph:
    """
    Height-ordered chain with outpoint resolution and address incidence.

    Attributes:
        blocks: Blocks in height order; ``blocks[h].height == h``
        tx_index: txid -> (height, position in block)
        outpoint_index: Outpoint -> output entry with its spending link
        address_index: address key -> outpoints paying that address
        spend_links: (spender txid, input index) -> resolved link
        dangling_inputs: inputs whose source lies outside the ingested range
        conflicts: second spends of an already-spent output
        timestamps: header timestamp per height
    """

    blocks: list[BlockRecord] = field(default_factory=list)
    tx_index: dict[Hash256, TxLocation] = field(default_factory=dict)
    outpoint_index: dict[Outpoint, OutputEntry] = field(default_factory=dict)
    address_index: dict[AddressKey, list[Outpoint]] = field(default_factory=dict)
    spend_links: dict[InputKey, SpendLink] = field(default_factory=dict)
    dangling_inputs: list[InputKey] = field(default_factory=list)
    conflicts: list[SpendLink] = field(default_factory=list)
    timestamps: list[int] = field(default_factory=list)

    @property
    def max_height(self) -> int:
        return len(self.blocks) - 1

    def block_at(self, height: int) -> BlockRecord:
        """
        Return the block at ``height``.

        Raises:
            BadHeight: If the height is outside 0..max_height
        """
        if not 0 <= height < len(self.blocks):
            raise BadHeight(f"height {height} outside 0..{self.max_height}")
        return self.blocks[height]

    def heights(self, start: int = 0) -> range:
        return range(max(start, 0), len(self.blocks))

    def outpoints_for_address(self, encoded: str) -> list[Outpoint]:
        """Outputs paying a base58check address (empty for unknown ones)."""
        try:
            version, payload = base58check_decode(encoded)
        except InvalidAddress:
            return []
        return list(self.address_index.get(AddressKey(version, payload), []))

    def address_of(self, outpoint: Outpoint) -> str | None:
        """Base58check address an output pays, or None for non-standard scripts."""
        entry = self.outpoint_index.get(outpoint)
        if entry is None:
            return None
        matched = match_template(entry.pk_script)
        return matched[1].encode() if matched else None
