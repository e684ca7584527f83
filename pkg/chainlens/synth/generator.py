"""
Deterministic synthetic chain generator.

Blocks are bit-valid legacy blocks (correct framing, txids and Merkle
roots) paying synthetic P2PKH hashes. Proof of work is not met and no
script is ever signed. All randomness comes from one ``random.Random``
seeded by the scenario, so the same scenario always yields the same bytes.
"""

import logging
import math
import random
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

from chainlens.errors import InfeasibleScenario
from chainlens.synth.manifest import (
    BlockLedger,
    BlockTruth,
    EpisodeTruth,
    GroundTruthManifest,
    StatsTruth,
)
from chainlens.synth.scenario import (
    COINBASE_MATURITY,
    MinerSpec,
    PatternKind,
    PatternSpec,
    PlantSpec,
    ScenarioSpec,
    SweepSpec,
)
from chainlens.wire import (
    ZERO_HASH,
    BlockHeader,
    BlockRecord,
    Hash256,
    TxIn,
    TxOut,
    TxRecord,
    merkle_root,
    serialize_block,
)
from chainlens.wire.codec import FRAME_SIZE
from chainlens.wire.script import p2pkh_script, push_data

logger = logging.getLogger(__name__)

DUST = 546
# Outputs below this never re-enter the general spend pool
POOL_FLOOR = 100_000
BLOCK_BITS = 0x1D00FFFF
BLOCK_INTERVAL = 600
MAX_JITTER = 120
SEQUENCE_FINAL = 0xFFFFFFFF


@dataclass(slots=True)
class _Coin:
    txid: Hash256
    vout: int
    value: int
    height: int
    coinbase: bool = False


class _Pool:
    """Spendable outputs with O(1) random removal."""

    def __init__(self, rng: random.Random) -> None:
        self._rng = rng
        self._coins: list[_Coin] = []

    def __len__(self) -> int:
        return len(self._coins)

    def add(self, coin: _Coin) -> None:
        self._coins.append(coin)

    def _pop(self, index: int) -> _Coin:
        coins = self._coins
        coins[index], coins[-1] = coins[-1], coins[index]
        return coins.pop()

    def take(self) -> _Coin | None:
        if not self._coins:
            return None
        return self._pop(self._rng.randrange(len(self._coins)))

    def take_at_least(self, value: int) -> _Coin | None:
        n = len(self._coins)
        if n == 0:
            return None
        start = self._rng.randrange(n)
        for step in range(n):
            index = (start + step) % n
            if self._coins[index].value >= value:
                return self._pop(index)
        return None


@dataclass
class SynthResult:
    """Generated block files, the blocks they hold and the ground truth."""

    files: list[bytes]
    manifest: GroundTruthManifest
    blocks: list[BlockRecord] = field(default_factory=list)

    @property
    def file_names(self) -> list[str]:
        return [f"blk{index:05d}.dat" for index in range(len(self.files))]


class ChainGenerator:
    """Builds one scenario block by block; use ``generate_chain``."""

    def __init__(self, spec: ScenarioSpec) -> None:
        self.spec = spec
        self.rng = random.Random(spec.seed)
        self.height = 0
        self.ledger = BlockLedger(0)

        self.pool = _Pool(self.rng)
        self.immature: deque[_Coin] = deque()
        self.fresh: list[_Coin] = []
        self.dust: deque[_Coin] = deque()
        self.fresh_dust: list[_Coin] = []
        self.spam_change: dict[str, _Coin] = {}
        self.hold_ledgers: dict[str, dict[int, list[_Coin]]] = {
            p.name: {} for p in spec.patterns if p.hold is not None
        }

        self.claims: dict[int, list[tuple[str, int]]] = {}
        self.plant_coins: dict[str, list[_Coin]] = {}
        self.plants_at: dict[int, list[PlantSpec]] = {}
        for plant in spec.plants:
            self.plants_at.setdefault(plant.height, []).append(plant)
            self.plant_coins[plant.name] = []
            for item in plant.inputs:
                self.claims.setdefault(item.source_height, []).append(
                    (plant.name, item.amount)
                )

        self.sweep_of: dict[int, str] = {}
        self.sweep_coins: dict[str, list[_Coin]] = {}
        self.sweeps_at: dict[int, list[SweepSpec]] = {}
        for sweep in spec.sweeps:
            self.sweeps_at.setdefault(sweep.height, []).append(sweep)
            self.sweep_coins[sweep.name] = []
            for h in range(sweep.first, sweep.last + 1):
                self.sweep_of[h] = sweep.name

        self.truths: list[BlockTruth] = []
        self.addresses: set[bytes] = set()

    def run(self) -> SynthResult:
        self._check_maturity()
        blocks: list[BlockRecord] = []
        prev_hash = ZERO_HASH
        for height in range(self.spec.n_blocks):
            block = self._make_block(height, prev_hash)
            blocks.append(block)
            prev_hash = block.block_hash

        files = self._pack(blocks)
        manifest = GroundTruthManifest(
            scenario=self.spec.name,
            seed=self.spec.seed,
            blocks=self.truths,
            episodes=self._planted_episodes(),
            stats=StatsTruth(
                blocks=len(blocks),
                transactions=sum(t.tx_count for t in self.truths),
                inputs=sum(t.input_count for t in self.truths),
                outputs=sum(t.output_count for t in self.truths),
                addresses=len(self.addresses),
                raw_bytes=sum(FRAME_SIZE + t.size for t in self.truths),
            ),
            planted_dwell_slopes={
                p.name: p.drift for p in self.spec.patterns if p.hold is not None
            },
        )
        result = SynthResult(files=files, manifest=manifest, blocks=blocks)
        manifest.files = result.file_names
        return result

    def _check_maturity(self) -> None:
        for plant in self.spec.plants:
            for item in plant.inputs:
                if plant.height - item.source_height < COINBASE_MATURITY:
                    raise InfeasibleScenario(
                        f"plant {plant.name} spends the coinbase of block "
                        f"{item.source_height} at {plant.height}, before "
                        f"{COINBASE_MATURITY} confirmations"
                    )
        for sweep in self.spec.sweeps:
            if sweep.height - sweep.last < COINBASE_MATURITY:
                raise InfeasibleScenario(
                    f"sweep {sweep.name} spends the coinbase of block {sweep.last} "
                    f"at {sweep.height}, before {COINBASE_MATURITY} confirmations"
                )

    def _make_block(self, height: int, prev_hash: Hash256) -> BlockRecord:
        self.height = height
        self.ledger = BlockLedger(height)
        self._release_matured()

        txs: list[TxRecord] = []
        for plant in self.plants_at.get(height, []):
            txs.append(self._plant_tx(plant))
        for sweep in self.sweeps_at.get(height, []):
            txs.append(self._sweep_tx(sweep))
        for pattern in self.spec.patterns:
            if pattern.start <= height <= pattern.end:
                txs.extend(self._run_pattern(pattern))
            if height == pattern.end and pattern.name in self.spam_change:
                self._keep([self.spam_change.pop(pattern.name)])

        miner_index = self._pick_miner()
        miner = self.spec.miners[miner_index]
        if miner.randomize:
            extranonce = self.rng.getrandbits(32)
            extranonce_bytes = extranonce.to_bytes(4, "little")
        else:
            extranonce = miner.extranonce(height)
            width = max(1, (extranonce.bit_length() + 7) // 8)
            extranonce_bytes = extranonce.to_bytes(width, "little")
        txs.insert(0, self._coinbase_tx(extranonce_bytes))

        timestamp = max(
            self.spec.start_time
            + BLOCK_INTERVAL * height
            + self.rng.randint(-MAX_JITTER, MAX_JITTER),
            0,
        )
        header = BlockHeader(
            version=1,
            prev_hash=prev_hash,
            merkle_root=merkle_root([tx.txid for tx in txs]),
            timestamp=timestamp,
            bits=BLOCK_BITS,
            nonce=self.rng.getrandbits(32),
        )
        block = BlockRecord.build(header, txs)
        block.height = height

        for coin in self.fresh:
            self.pool.add(coin)
        self.fresh.clear()
        self.dust.extend(self.fresh_dust)
        self.fresh_dust.clear()

        self.truths.append(self.ledger.truth(block.size, miner_index, extranonce))
        return block

    def _release_matured(self) -> None:
        while (
            self.immature
            and self.immature[0].height <= self.height - COINBASE_MATURITY
        ):
            coin = self.immature.popleft()
            if coin.value >= POOL_FLOOR:
                self.pool.add(coin)

    def _pick_miner(self) -> int:
        miners: list[MinerSpec] = self.spec.miners
        if len(miners) == 1:
            return 0
        return self.rng.choices(range(len(miners)), weights=[m.weight for m in miners])[0]

    def _script(self) -> bytes:
        hash20 = self.rng.randbytes(20)
        self.addresses.add(hash20)
        return p2pkh_script(hash20)

    def _signature(self) -> bytes:
        return push_data(self.rng.randbytes(72)) + push_data(
            b"\x02" + self.rng.randbytes(32)
        )

    def _coinbase_tx(self, extranonce_bytes: bytes) -> TxRecord:
        height = self.height
        value = self.spec.reward(height) + self.ledger.fees
        claims = self.claims.get(height, [])
        claimed = sum(amount for _, amount in claims)
        if claimed > value:
            raise InfeasibleScenario(
                f"plants claim {claimed} sat from block {height}, "
                f"whose coinbase pays {value}"
            )
        remainder = value - claimed
        values = [amount for _, amount in claims]
        if remainder or not claims:
            values.append(remainder)

        script_sig = b"".join(
            (
                push_data(BLOCK_BITS.to_bytes(4, "little")),
                push_data(extranonce_bytes),
                push_data(height.to_bytes(4, "little")),
            )
        )
        tx = TxRecord.build(
            [TxIn.coinbase(script_sig)], [TxOut(v, self._script()) for v in values]
        )
        self.ledger.record_tx(1, len(values))

        coins = [_Coin(tx.txid, vout, v, height, True) for vout, v in enumerate(values)]
        for (plant_name, _), coin in zip(claims, coins):
            self.plant_coins[plant_name].append(coin)
        if len(coins) > len(claims):
            rest = coins[-1]
            sweep = self.sweep_of.get(height)
            if sweep is not None:
                self.sweep_coins[sweep].append(rest)
            else:
                self.immature.append(rest)
        return tx

    def _transact(
        self, inputs: list[_Coin], values: list[int]
    ) -> tuple[TxRecord, list[_Coin]]:
        height = self.height
        tx = TxRecord.build(
            [
                TxIn(coin.txid, coin.vout, self._signature(), SEQUENCE_FINAL)
                for coin in inputs
            ],
            [TxOut(value, self._script()) for value in values],
        )
        self.ledger.record_tx(
            len(inputs), len(values), sum(c.value for c in inputs) - sum(values)
        )
        for coin in inputs:
            self.ledger.record_spend(coin.height, coin.value)
            if coin.coinbase:
                truth = self.truths[coin.height]
                if truth.coinbase_spend_height is None:
                    truth.coinbase_spend_height = height
        return tx, [_Coin(tx.txid, vout, v, height) for vout, v in enumerate(values)]

    def _keep(self, coins: list[_Coin]) -> None:
        self.fresh.extend(coin for coin in coins if coin.value >= POOL_FLOOR)

    def _draw(self, pattern: PatternSpec, min_value: int = 0) -> _Coin:
        coin = self.pool.take_at_least(min_value) if min_value else self.pool.take()
        if coin is None:
            wanted = f" worth {min_value} sat" if min_value else ""
            raise InfeasibleScenario(
                f"pattern {pattern.name} at height {self.height}: "
                f"no spendable output{wanted} ({len(self.pool)} in pool)"
            )
        return coin

    def _fee(self, n_inputs: int, n_outputs: int) -> int:
        return self.spec.fees.fee(n_inputs, n_outputs)

    def _payable(self, name: str, inputs: list[_Coin], n_outputs: int) -> int:
        total = sum(c.value for c in inputs) - self._fee(len(inputs), n_outputs)
        if total < DUST * n_outputs:
            raise InfeasibleScenario(
                f"{name} at height {self.height}: {len(inputs)} inputs cannot pay "
                f"{n_outputs} outputs after fees"
            )
        return total

    @staticmethod
    def _split(total: int, parts: int) -> list[int]:
        share = total // parts
        values = [share] * parts
        values[0] += total - share * parts
        return values

    def _plant_tx(self, plant: PlantSpec) -> TxRecord:
        inputs = self.plant_coins.pop(plant.name)
        tx, outs = self._transact(inputs, [self._payable(f"plant {plant.name}", inputs, 1)])
        self._keep(outs)
        return tx

    def _sweep_tx(self, sweep: SweepSpec) -> TxRecord:
        inputs = self.sweep_coins.pop(sweep.name)
        if not inputs:
            raise InfeasibleScenario(f"sweep {sweep.name}: no coinbase value to sweep")
        tx, outs = self._transact(inputs, [self._payable(f"sweep {sweep.name}", inputs, 1)])
        self._keep(outs)
        return tx

    def _run_pattern(self, pattern: PatternSpec) -> list[TxRecord]:
        if pattern.kind == PatternKind.CHURN:
            if pattern.hold is not None:
                return self._held_churn(pattern)
            return self._churn(pattern)
        handlers = {
            PatternKind.DISTRIBUTE: self._distribute,
            PatternKind.CONSOLIDATE: self._consolidate,
            PatternKind.SPAM_OUT: self._spam_out,
            PatternKind.SPAM_IN: self._spam_in,
        }
        handler = handlers[pattern.kind]
        return [handler(pattern) for _ in range(pattern.txs_per_block)]

    def _churn(self, pattern: PatternSpec) -> list[TxRecord]:
        txs = []
        for _ in range(pattern.txs_per_block):
            inputs = []
            for _ in range(pattern.degree):
                if (
                    self.fresh
                    and pattern.same_block
                    and self.rng.random() < pattern.same_block
                ):
                    inputs.append(self.fresh.pop(self.rng.randrange(len(self.fresh))))
                else:
                    inputs.append(self._draw(pattern))
            total = self._payable(f"pattern {pattern.name}", inputs, 2)
            payment = min(max(int(total * self.rng.uniform(0.1, 0.9)), DUST), total - DUST)
            tx, outs = self._transact(inputs, [payment, total - payment])
            self._keep(outs)
            txs.append(tx)
        return txs

    def _hold_target(self, pattern: PatternSpec, height: int) -> int:
        """Height at which outputs created at ``height`` are spent again."""
        assert pattern.hold is not None
        ideal = (height + pattern.hold - pattern.drift * pattern.start) / (
            1.0 - pattern.drift
        )
        return max(height + 1, math.floor(ideal + 0.5))

    def _held_churn(self, pattern: PatternSpec) -> list[TxRecord]:
        assert pattern.hold is not None
        ledger = self.hold_ledgers[pattern.name]
        height = self.height
        due = ledger.pop(height, [])
        if height < pattern.start + pattern.hold:
            groups = [
                [self._draw(pattern) for _ in range(pattern.degree)]
                for _ in range(pattern.txs_per_block)
            ]
        else:
            groups = [
                due[i : i + pattern.degree] for i in range(0, len(due), pattern.degree)
            ]

        target = self._hold_target(pattern, height)
        txs = []
        for inputs in groups:
            total = self._payable(f"pattern {pattern.name}", inputs, len(inputs))
            tx, outs = self._transact(inputs, self._split(total, len(inputs)))
            if target <= pattern.end:
                ledger.setdefault(target, []).extend(outs)
            else:
                self._keep(outs)
            txs.append(tx)
        return txs

    def _distribute(self, pattern: PatternSpec) -> TxRecord:
        fee = self._fee(1, pattern.degree)
        coin = self._draw(pattern, pattern.degree * POOL_FLOOR + fee)
        tx, outs = self._transact([coin], self._split(coin.value - fee, pattern.degree))
        self._keep(outs)
        return tx

    def _consolidate(self, pattern: PatternSpec) -> TxRecord:
        inputs = [self._draw(pattern) for _ in range(pattern.degree)]
        tx, outs = self._transact(
            inputs, [self._payable(f"pattern {pattern.name}", inputs, 1)]
        )
        self._keep(outs)
        return tx

    def _spam_out(self, pattern: PatternSpec) -> TxRecord:
        """One input fanned out to ``degree - 1`` dust outputs plus change."""
        n_dust = pattern.degree - 1
        fee = self._fee(1, pattern.degree)
        need = n_dust * DUST + fee + DUST
        change = self.spam_change.pop(pattern.name, None)
        if change is None or change.value < need:
            if change is not None:
                self._keep([change])
            change = self._draw(pattern, need)
        tx, outs = self._transact(
            [change], [DUST] * n_dust + [change.value - n_dust * DUST - fee]
        )
        self.fresh_dust.extend(outs[:-1])
        self.spam_change[pattern.name] = outs[-1]
        return tx

    def _spam_in(self, pattern: PatternSpec) -> TxRecord:
        """``degree`` inputs, mostly earlier dust, gathered into one output."""
        inputs = [self._draw(pattern)]
        while len(inputs) < pattern.degree:
            inputs.append(self.dust.popleft() if self.dust else self._draw(pattern))
        tx, outs = self._transact(
            inputs, [self._payable(f"pattern {pattern.name}", inputs, 1)]
        )
        self._keep(outs)
        return tx

    def _planted_episodes(self) -> list[EpisodeTruth]:
        episodes = [
            EpisodeTruth(
                direction="out" if p.kind == PatternKind.SPAM_OUT else "in",
                signature_degree=p.degree,
                start_height=p.start,
                end_height=p.end,
                tx_count=p.txs_per_block * (p.end - p.start + 1),
            )
            for p in self.spec.patterns
            if p.kind in (PatternKind.SPAM_OUT, PatternKind.SPAM_IN)
            and p.txs_per_block > 0
        ]
        episodes.sort(key=lambda e: (e.start_height, e.direction, e.signature_degree))
        return episodes

    def _pack(self, blocks: list[BlockRecord]) -> list[bytes]:
        """Frame blocks into files of at most ``max_file_bytes`` each."""
        limit = self.spec.max_file_bytes
        files: list[bytes] = []
        chunks: list[bytes] = []
        size = 0
        for block in blocks:
            frame = serialize_block(block)
            if chunks and size + len(frame) > limit:
                files.append(b"".join(chunks))
                chunks, size = [], 0
            if len(frame) > limit:
                logger.warning(
                    f"Block {block.height} is {len(frame)} bytes, "
                    f"over the {limit}-byte file limit"
                )
            block.file_index = len(files)
            block.byte_offset = size
            chunks.append(frame)
            size += len(frame)
        if chunks:
            files.append(b"".join(chunks))
        return files


def generate_chain(spec: ScenarioSpec) -> SynthResult:
    """
    Generate the blocks of a scenario and their ground-truth manifest.

    Raises:
        InfeasibleScenario: If a pattern, plant or sweep needs funds that do
            not exist or would spend a coinbase before it matures
    """
    result = ChainGenerator(spec).run()
    logger.info(
        f"Generated scenario {spec.name}: {spec.n_blocks} blocks, "
        f"{result.manifest.stats.transactions} txs in {len(result.files)} files"
    )
    return result


def write_chain(result: SynthResult, out_dir: str | Path) -> list[Path]:
    """Write ``blk00000.dat``... and ``manifest.json`` into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, data in zip(result.file_names, result.files):
        path = out / name
        path.write_bytes(data)
        paths.append(path)
    manifest_path = out / "manifest.json"
    manifest_path.write_text(result.manifest.model_dump_json(indent=2), encoding="utf-8")
    paths.append(manifest_path)
    logger.info(f"Wrote {len(result.files)} block files and manifest to {out}")
    return paths
