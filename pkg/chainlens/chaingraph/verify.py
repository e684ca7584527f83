"""
Independent re-check of the chain graph invariants.

Verification walks the raw records again instead of trusting the indexes
built alongside them, and reports problems rather than raising.
"""

from dataclasses import dataclass, field
from enum import StrEnum

from chainlens.chaingraph.model import ChainGraph, InputKey, Outpoint
from chainlens.wire import merkle_root


class ViolationKind(StrEnum):
    BROKEN_LINKAGE = "BrokenLinkage"
    MERKLE_MISMATCH = "MerkleMismatch"
    COINBASE_PLACEMENT = "CoinbasePlacement"
    UNRESOLVED = "Unresolved"
    DOUBLE_SPEND = "DoubleSpend"
    BACKWARD_SPEND = "BackwardSpend"
    VALUE_NOT_CONSERVED = "ValueNotConserved"


@dataclass(frozen=True, slots=True)
class Violation:
    kind: ViolationKind
    height: int
    detail: str

    def __str__(self) -> str:
        return f"{self.kind} at height {self.height}: {self.detail}"


@dataclass
class VerifyReport:
    violations: list[Violation] = field(default_factory=list)
    fees: dict[int, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def total_fees(self) -> int:
        return sum(self.fees.values())

    def count(self, kind: ViolationKind) -> int:
        return sum(1 for v in self.violations if v.kind == kind)


def verify_graph(graph: ChainGraph) -> VerifyReport:
    """
    Re-check linkage, block structure, spend resolution and value
    conservation.

    Returns:
        A report listing every violation found plus per-height fee totals
        (sum of inputs minus sum of outputs over non-coinbase transactions
        whose inputs all resolve)
    """
    report = VerifyReport()
    add = report.violations.append
    dangling: set[InputKey] = set(graph.dangling_inputs)
    conflicting: set[InputKey] = {
        (link.spender_txid, link.input_index) for link in graph.conflicts
    }
    first_spender: dict[Outpoint, InputKey] = {}

    for height, block in enumerate(graph.blocks):
        if block.height != height:
            add(Violation(ViolationKind.BROKEN_LINKAGE, height, f"recorded height {block.height}"))
        if height and block.prev_hash != graph.blocks[height - 1].block_hash:
            add(
                Violation(
                    ViolationKind.BROKEN_LINKAGE,
                    height,
                    f"prev_hash {block.prev_hash} does not match block {height - 1}",
                )
            )
        if merkle_root([tx.txid for tx in block.txs]) != block.header.merkle_root:
            add(Violation(ViolationKind.MERKLE_MISMATCH, height, str(block.block_hash)))
        if not block.txs[0].is_coinbase or any(
            tx_in.is_coinbase for tx in block.txs[1:] for tx_in in tx.inputs
        ):
            add(
                Violation(
                    ViolationKind.COINBASE_PLACEMENT, height, str(block.block_hash)
                )
            )

        block_fees = 0
        for position, tx in enumerate(block.txs):
            if tx.is_coinbase:
                continue
            value_in = 0
            complete = True
            for input_index, tx_in in enumerate(tx.inputs):
                key = (tx.txid, input_index)
                source = Outpoint(tx_in.prev_txid, tx_in.prev_vout)

                if source in first_spender:
                    add(
                        Violation(
                            ViolationKind.DOUBLE_SPEND,
                            height,
                            f"{source} spent by {first_spender[source][0]} "
                            f"and {tx.txid}",
                        )
                    )
                else:
                    first_spender[source] = key

                link = graph.spend_links.get(key)
                if link is None and key not in dangling and key not in conflicting:
                    add(
                        Violation(
                            ViolationKind.UNRESOLVED, height, f"{tx.txid}:{input_index}"
                        )
                    )
                if link is not None:
                    location = graph.tx_index.get(source.txid)
                    if location is None or (location.height, location.position) >= (
                        height,
                        position,
                    ):
                        add(
                            Violation(
                                ViolationKind.BACKWARD_SPEND,
                                height,
                                f"{tx.txid}:{input_index} -> {source}",
                            )
                        )

                entry = graph.outpoint_index.get(source)
                if entry is None:
                    complete = False
                else:
                    value_in += entry.value

            if not complete:
                continue
            value_out = sum(tx_out.value for tx_out in tx.outputs)
            if value_in < value_out:
                add(
                    Violation(
                        ViolationKind.VALUE_NOT_CONSERVED,
                        height,
                        f"{tx.txid} spends {value_in} into {value_out}",
                    )
                )
            else:
                block_fees += value_in - value_out
        report.fees[height] = block_fees

    return report
