"""
Graph construction: chain linkage, outpoint resolution and address incidence.

Records may arrive in any file order; linkage is recovered from each
header's ``prev_hash`` so the built graph does not depend on that order.
"""

import logging
from typing import Iterable

from chainlens.chaingraph.model import (
    ChainGraph,
    OutputEntry,
    Outpoint,
    SpendLink,
    TxLocation,
)
from chainlens.errors import DuplicateBlock, ForkDetected, OrphanBlock
from chainlens.wire import AddressKey, BlockRecord, Hash256, match_template

logger = logging.getLogger(__name__)


def build_graph(
    records: Iterable[BlockRecord], max_height: int | None = None
) -> ChainGraph:
    """
    Link blocks into a single chain and index every transaction and output.

    Args:
        records: Parsed blocks in any order
        max_height: Blocks above this height are ignored

    Returns:
        The built graph; block records get their ``height`` assigned

    Raises:
        DuplicateBlock: If a block hash occurs twice
        ForkDetected: If a block has two children
        OrphanBlock: If a block's parent is missing
    """
    chain = _link_chain(records)
    if max_height is not None:
        chain = chain[: max_height + 1]

    graph = ChainGraph()
    script_keys: dict[bytes, AddressKey | None] = {}

    for height, block in enumerate(chain):
        block.height = height
        graph.blocks.append(block)
        graph.timestamps.append(block.header.timestamp)

        for position, tx in enumerate(block.txs):
            if tx.txid in graph.tx_index:
                logger.warning(
                    f"Duplicate txid {tx.txid} at height {height}; "
                    f"later outputs replace earlier ones"
                )
            graph.tx_index[tx.txid] = TxLocation(height, position)

            for input_index, tx_in in enumerate(tx.inputs):
                if tx_in.is_coinbase:
                    continue
                source = Outpoint(tx_in.prev_txid, tx_in.prev_vout)
                entry = graph.outpoint_index.get(source)
                if entry is None:
                    logger.debug(f"Dangling input {tx.txid}:{input_index} -> {source}")
                    graph.dangling_inputs.append((tx.txid, input_index))
                    continue
                link = SpendLink(
                    tx.txid, input_index, source, entry.height, entry.value, height
                )
                if entry.spent_by is not None:
                    logger.warning(
                        f"Double spend of {source} by {tx.txid}:{input_index} "
                        f"at height {height}"
                    )
                    graph.conflicts.append(link)
                    continue
                entry.spent_by = link
                graph.spend_links[(tx.txid, input_index)] = link

            coinbase = position == 0
            for vout, tx_out in enumerate(tx.outputs):
                outpoint = Outpoint(tx.txid, vout)
                graph.outpoint_index[outpoint] = OutputEntry(
                    tx_out.value, tx_out.pk_script, height, position, coinbase
                )
                script = tx_out.pk_script
                try:
                    key = script_keys[script]
                except KeyError:
                    matched = match_template(script)
                    key = script_keys[script] = matched[1] if matched else None
                if key is not None:
                    outpoints = graph.address_index.get(key)
                    if outpoints is None:
                        graph.address_index[key] = [outpoint]
                    else:
                        outpoints.append(outpoint)

    logger.info(
        f"Built graph: {len(graph.blocks)} blocks, {len(graph.tx_index)} txs, "
        f"{len(graph.spend_links)} spend links, "
        f"{len(graph.dangling_inputs)} dangling inputs"
    )
    return graph


def _link_chain(records: Iterable[BlockRecord]) -> list[BlockRecord]:
    by_hash: dict[Hash256, BlockRecord] = {}
    for record in records:
        if record.block_hash in by_hash:
            raise DuplicateBlock(
                f"block {record.block_hash} seen twice "
                f"(file {record.file_index} offset {record.byte_offset})"
            )
        by_hash[record.block_hash] = record

    if not by_hash:
        return []

    children: dict[Hash256, BlockRecord] = {}
    roots: list[BlockRecord] = []
    for record in by_hash.values():
        parent = record.prev_hash
        if parent not in by_hash:
            roots.append(record)
            continue
        if parent in children:
            raise ForkDetected(
                f"block {parent} has two children: "
                f"{children[parent].block_hash} and {record.block_hash}"
            )
        children[parent] = record

    # Prefer a true genesis (null parent), else the first block on disk
    roots.sort(
        key=lambda r: (not r.prev_hash.is_null, r.file_index, r.byte_offset)
    )
    if len(roots) > 1:
        orphan = roots[1]
        raise OrphanBlock(
            f"block {orphan.block_hash} (file {orphan.file_index} offset "
            f"{orphan.byte_offset}) has missing parent {orphan.prev_hash}"
        )

    chain = [roots[0]]
    while chain[-1].block_hash in children:
        chain.append(children[chain[-1].block_hash])

    if len(chain) != len(by_hash):
        raise OrphanBlock(
            f"{len(by_hash) - len(chain)} blocks are not reachable from "
            f"{chain[0].block_hash}"
        )
    return chain
