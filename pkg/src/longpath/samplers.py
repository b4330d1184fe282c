"""Uniform edge samplers for insertion-only and insertion-deletion streams.

Insertion-only streams go through reservoir sampling. Insertion-deletion
streams feed a bank of independent l0 sketches (geometric levels with a
1-sparse recovery test per level) plus a sparse-recovery table that returns
the whole support when it is small.
"""

import hashlib
import heapq
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Tuple

import numpy as np

from .constants import (
    DEFAULT_DELTA,
    FINGERPRINT_PRIME,
    HASH_DEGREE,
    HASH_PRIME,
    RECOVERY_HASHES,
    RECOVERY_SLACK,
    SEED_L0_BANK,
    SEED_RESERVOIR,
    SEED_SPARSE_RECOVERY,
    TURNSTILE_BANK_FACTOR,
)
from .exceptions import StreamError
from .graph_core import Edge
from .settings import derive_rng, derive_seed, logger
from .stream_model import EventStream, StreamEvent


@dataclass(frozen=True)
class SampleF:
    """Distinct sampled edges together with the requested sample size."""

    n: int
    directed: bool
    edges: FrozenSet[Edge]
    target: int
    stored: int = 0

    @property
    def achieved(self) -> int:
        return len(self.edges)


def edge_key(edge: Edge, n: int) -> int:
    return edge[0] * n + edge[1]


def key_edge(key: int, n: int) -> Edge:
    return (key // n, key % n)


# ── Reservoir ──


class ReservoirState:
    """Bottom-k reservoir over the distinct edges of an insertion-only stream.

    Every edge gets a keyed-hash priority and the k smallest priorities are
    kept. A repeated insert hashes to the same priority, so F is a uniform
    k-subset of the distinct edges seen so far (all of them when there are at
    most k).
    """

    def __init__(self, n: int, directed: bool, k: int, seed: int) -> None:
        """Initialize an empty reservoir of capacity k."""
        if k < 0:
            raise ValueError(f"sample size must be non-negative, got {k}")
        self.n = n
        self.directed = directed
        self.k = k
        self.reservoir: Dict[Edge, int] = {}
        self.seen = 0
        self._heap: List[Tuple[int, Edge]] = []
        self._key = derive_seed(seed, SEED_RESERVOIR).to_bytes(8, "little")

    def priority(self, edge: Edge) -> int:
        digest = hashlib.blake2b(f"{edge[0]} {edge[1]}".encode("ascii"), digest_size=8, key=self._key).digest()
        return int.from_bytes(digest, "little")

    def update(self, event: StreamEvent) -> None:
        if event.sign < 0:
            raise StreamError(
                f"deletion at event {self.seen}: reservoir sampling needs an insertion-only stream", self.seen
            )
        edge = event.edge(self.directed)
        self.seen += 1
        if self.k == 0 or edge in self.reservoir:
            return
        rank = self.priority(edge)
        if len(self.reservoir) < self.k:
            self.reservoir[edge] = rank
            heapq.heappush(self._heap, (-rank, edge))
        elif rank < -self._heap[0][0]:
            # an evicted edge never returns: its rank exceeds every kept rank
            _, evicted = heapq.heapreplace(self._heap, (-rank, edge))
            del self.reservoir[evicted]
            self.reservoir[edge] = rank

    @property
    def stored(self) -> int:
        return len(self.reservoir)

    def sample(self) -> SampleF:
        return SampleF(self.n, self.directed, frozenset(self.reservoir), self.k, stored=self.stored)


def reservoir_sample(stream: EventStream, k: int, seed: int) -> SampleF:
    """Uniform k-subset of the distinct edges of an insertion-only stream; every edge when m <= k."""
    state = ReservoirState(stream.n, stream.directed, k, seed)
    for event in stream.events:
        state.update(event)
    return state.sample()


# ── l0 sketches ──


class QueryStatus(str, Enum):
    EDGE = "edge"
    EMPTY = "empty-support"
    FAIL = "fail"


@dataclass(frozen=True)
class L0Result:
    status: QueryStatus
    edge: Optional[Edge] = None


def recover_cell(count: int, idsum: int, fingerprint: int, r: int, max_items: int) -> Optional[int]:
    """1-sparse test: return the unique key of a cell, or None when the cell is not 1-sparse."""
    if count <= 0 or idsum % count:
        return None
    key = idsum // count
    if not 0 <= key < max_items:
        return None
    if fingerprint != (count * pow(r, key, FINGERPRINT_PRIME)) % FINGERPRINT_PRIME:
        return None
    return key


class L0SketchBank:
    """K independent l0 sketches over the edge keys of an n-vertex graph.

    Each sketch holds ``rows`` independent repetitions, each repetition
    ``levels`` cells. An edge lands at exactly one level per repetition
    (P[level >= j] = 2^-j); ``cumulative_cells`` exposes the usual view in
    which an update touches its level and every coarser one. Cells are linear
    in the updates, so two banks built with the same seed add cell-wise.
    """

    def __init__(
        self, n: int, directed: bool, sketches: int, delta: float = DEFAULT_DELTA, seed: int = 0
    ) -> None:
        """Initialize zeroed cells and draw the level hashes and fingerprint base."""
        if sketches < 1:
            raise ValueError(f"sketch bank needs at least one sketch, got {sketches}")
        if not 0 < delta < 1:
            raise ValueError(f"failure probability must lie in (0, 1), got {delta}")
        self.n = n
        self.directed = directed
        self.delta = delta
        self.seed = seed
        self.max_items = max(n * n, 2)
        if self.max_items >= HASH_PRIME:
            raise ValueError(f"edge key space {self.max_items} exceeds the hash field {HASH_PRIME}")
        self.sketches = sketches
        self.rows = max(1, math.ceil(math.log2(1 / delta)))
        self.levels = math.ceil(math.log2(self.max_items)) + 1

        rng = derive_rng(seed, SEED_L0_BANK)
        self.coefficients = rng.integers(
            1, HASH_PRIME, size=(HASH_DEGREE, sketches, self.rows), dtype=np.uint64
        )
        self.r = int(rng.integers(2, FINGERPRINT_PRIME - 1))

        shape = (sketches, self.rows, self.levels)
        self.count = np.zeros(shape, dtype=np.int64)
        self.idsum = np.zeros(shape, dtype=np.int64)
        self.fingerprint = np.zeros(shape, dtype=np.uint64)
        self._sketch_index = np.arange(sketches)[:, None]
        self._row_index = np.arange(self.rows)[None, :]

    def _levels_of(self, key: int) -> np.ndarray:
        x = np.uint64(key)
        acc = self.coefficients[0].copy()
        for coefficient in self.coefficients[1:]:
            acc = (acc * x + coefficient) % np.uint64(HASH_PRIME)
        ratio = HASH_PRIME / (acc.astype(np.float64) + 1.0)
        return np.clip(np.floor(np.log2(ratio)), 0, self.levels - 1).astype(np.int64)

    def update_key(self, key: int, sign: int) -> None:
        level = self._levels_of(key)
        cells = (self._sketch_index, self._row_index, level)
        self.count[cells] += sign
        self.idsum[cells] += sign * key
        term = np.uint64(pow(self.r, key, FINGERPRINT_PRIME))
        p = np.uint64(FINGERPRINT_PRIME)
        if sign > 0:
            self.fingerprint[cells] = (self.fingerprint[cells] + term) % p
        else:
            self.fingerprint[cells] = (self.fingerprint[cells] + (p - term)) % p

    def update(self, event: StreamEvent) -> None:
        self.update_key(edge_key(event.edge(self.directed), self.n), event.sign)

    def cumulative_cells(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(count, idsum, fingerprint) where level j aggregates every item at level >= j."""
        count = np.flip(np.cumsum(np.flip(self.count, -1), -1), -1)
        idsum = np.flip(np.cumsum(np.flip(self.idsum, -1), -1), -1)
        fingerprint = self.fingerprint.copy()
        p = np.uint64(FINGERPRINT_PRIME)
        for level in range(self.levels - 2, -1, -1):
            fingerprint[..., level] = (fingerprint[..., level] + fingerprint[..., level + 1]) % p
        return count, idsum, fingerprint

    def is_zero(self, sketch: int) -> bool:
        return not (
            self.count[sketch].any() or self.idsum[sketch].any() or self.fingerprint[sketch].any()
        )

    def query(self, sketch: int) -> L0Result:
        """Sample from one sketch: the deepest occupied level of the first 1-sparse repetition."""
        if self.is_zero(sketch):
            return L0Result(QueryStatus.EMPTY)
        occupied = self.count[sketch] != 0
        for row in range(self.rows):
            if not occupied[row].any():
                continue
            level = self.levels - 1 - int(np.argmax(occupied[row][::-1]))
            key = recover_cell(
                int(self.count[sketch, row, level]),
                int(self.idsum[sketch, row, level]),
                int(self.fingerprint[sketch, row, level]),
                self.r,
                self.max_items,
            )
            if key is not None:
                return L0Result(QueryStatus.EDGE, key_edge(key, self.n))
        return L0Result(QueryStatus.FAIL)

    def query_all(self) -> List[L0Result]:
        return [self.query(sketch) for sketch in range(self.sketches)]

    def _check_compatible(self, other: "L0SketchBank") -> None:
        if (self.n, self.directed, self.sketches, self.delta, self.seed) != (
            other.n,
            other.directed,
            other.sketches,
            other.delta,
            other.seed,
        ):
            raise ValueError("only sketch banks built with identical parameters and seed can be combined")

    def __add__(self, other: "L0SketchBank") -> "L0SketchBank":
        self._check_compatible(other)
        combined = L0SketchBank(self.n, self.directed, self.sketches, self.delta, self.seed)
        combined.count = self.count + other.count
        combined.idsum = self.idsum + other.idsum
        combined.fingerprint = (self.fingerprint + other.fingerprint) % np.uint64(FINGERPRINT_PRIME)
        return combined

    def cells_equal(self, other: "L0SketchBank") -> bool:
        return (
            np.array_equal(self.count, other.count)
            and np.array_equal(self.idsum, other.idsum)
            and np.array_equal(self.fingerprint, other.fingerprint)
        )


class L0Sketch(L0SketchBank):
    """A single l0 sketch."""

    def __init__(self, n: int, directed: bool, delta: float = DEFAULT_DELTA, seed: int = 0) -> None:
        """Initialize a bank of one."""
        super().__init__(n, directed, 1, delta, seed)

    def __add__(self, other: "L0SketchBank") -> "L0Sketch":
        self._check_compatible(other)
        combined = L0Sketch(self.n, self.directed, self.delta, self.seed)
        combined.count = self.count + other.count
        combined.idsum = self.idsum + other.idsum
        combined.fingerprint = (self.fingerprint + other.fingerprint) % np.uint64(FINGERPRINT_PRIME)
        return combined


def l0_update(sketch: L0SketchBank, event: StreamEvent) -> L0SketchBank:
    sketch.update(event)
    return sketch


def l0_query(sketch: L0SketchBank, index: int = 0) -> L0Result:
    return sketch.query(index)


# ── Sparse recovery ──


class SparseRecovery:
    """Invertible lookup table recovering every (key, multiplicity) of a sparse vector."""

    def __init__(self, n: int, directed: bool, capacity: int, seed: int = 0) -> None:
        """Initialize partitioned cells sized for ``capacity`` distinct keys."""
        if capacity < 0:
            raise ValueError(f"capacity must be non-negative, got {capacity}")
        self.n = n
        self.directed = directed
        self.capacity = capacity
        self.max_items = max(n * n, 2)
        self.width = max(math.ceil(RECOVERY_SLACK * capacity / RECOVERY_HASHES), 4)
        cells = RECOVERY_HASHES * self.width

        rng = derive_rng(seed, SEED_SPARSE_RECOVERY)
        self.position_hashes = [
            (int(rng.integers(1, HASH_PRIME)), int(rng.integers(0, HASH_PRIME))) for _ in range(RECOVERY_HASHES)
        ]
        self.check_hash = (int(rng.integers(1, HASH_PRIME)), int(rng.integers(0, HASH_PRIME)))
        self.count = np.zeros(cells, dtype=np.int64)
        self.keysum = np.zeros(cells, dtype=np.int64)
        self.hashsum = np.zeros(cells, dtype=np.int64)

    def _positions(self, key: int) -> List[int]:
        return [
            i * self.width + ((a * key + b) % HASH_PRIME) % self.width
            for i, (a, b) in enumerate(self.position_hashes)
        ]

    def _check(self, key: int) -> int:
        a, b = self.check_hash
        return (a * key + b) % HASH_PRIME

    def update_key(self, key: int, sign: int) -> None:
        positions = self._positions(key)
        self.count[positions] += sign
        self.keysum[positions] += sign * key
        self.hashsum[positions] += sign * self._check(key)

    def update(self, event: StreamEvent) -> None:
        self.update_key(edge_key(event.edge(self.directed), self.n), event.sign)

    def _pure(self, cell: int, count: np.ndarray, keysum: np.ndarray, hashsum: np.ndarray) -> Optional[int]:
        c = int(count[cell])
        if c <= 0 or int(keysum[cell]) % c:
            return None
        key = int(keysum[cell]) // c
        if not 0 <= key < self.max_items or int(hashsum[cell]) != c * self._check(key):
            return None
        return key

    def decode(self) -> Optional[Dict[Edge, int]]:
        """Peel pure cells; returns the full support with multiplicities, or None when peeling stalls."""
        count, keysum, hashsum = self.count.copy(), self.keysum.copy(), self.hashsum.copy()
        recovered: Dict[int, int] = {}
        pending = list(range(len(count)))
        while pending:
            cell = pending.pop()
            key = self._pure(cell, count, keysum, hashsum)
            if key is None:
                continue
            c = int(count[cell])
            recovered[key] = recovered.get(key, 0) + c
            positions = self._positions(key)
            count[positions] -= c
            keysum[positions] -= c * key
            hashsum[positions] -= c * self._check(key)
            pending.extend(positions)
        if count.any() or keysum.any() or hashsum.any():
            return None
        return {key_edge(key, self.n): c for key, c in recovered.items() if c}


# ── Turnstile sampling ──


@dataclass
class TurnstileSampler:
    """One-pass state of the insertion-deletion sampler."""

    n: int
    directed: bool
    k: int
    seed: int
    delta: float = DEFAULT_DELTA
    bank: L0SketchBank = field(init=False)
    recovery: SparseRecovery = field(init=False)

    def __post_init__(self) -> None:
        self.bank = L0SketchBank(self.n, self.directed, max(TURNSTILE_BANK_FACTOR * self.k, 1), self.delta, self.seed)
        self.recovery = SparseRecovery(self.n, self.directed, self.k, self.seed)

    def update(self, event: StreamEvent) -> None:
        self.bank.update(event)
        self.recovery.update(event)

    @property
    def stored_cells(self) -> int:
        return self.bank.count.size + self.recovery.count.size

    def sample(self) -> SampleF:
        support = self.recovery.decode()
        if support is not None and len(support) <= self.k:
            return SampleF(self.n, self.directed, frozenset(support), self.k, stored=self.stored_cells)

        chosen: List[Edge] = []
        seen = set()
        failures = 0
        for result in self.bank.query_all():
            if result.status is QueryStatus.FAIL:
                failures += 1
                continue
            if result.status is QueryStatus.EDGE and result.edge not in seen:
                seen.add(result.edge)
                chosen.append(result.edge)
                if len(chosen) == self.k:
                    break
        if len(chosen) < self.k:
            logger.warning(
                "turnstile sampler achieved %d of %d edges (%d sketch failures)", len(chosen), self.k, failures
            )
        return SampleF(self.n, self.directed, frozenset(chosen), self.k, stored=self.stored_cells)


def sample_support_turnstile(stream: EventStream, k: int, seed: int, delta: float = DEFAULT_DELTA) -> SampleF:
    """min(k, |support|) distinct edges of the final support in one pass."""
    sampler = TurnstileSampler(stream.n, stream.directed, k, seed, delta)
    for event in stream.events:
        sampler.update(event)
    return sampler.sample()
