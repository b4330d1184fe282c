"""Directed hard instances: the single-matching distribution and its RS-graph direct sum.

Single-matching layout for size r: a_i = i, b1_i = r + i, b2_i = 2r + i.
Coin 0 routes Alice's edge a_i -> b1_i, coin 1 routes it to b2_i. Bob's two
return matchings send b1_j and b2_j to a_sigma(j).

RS layout for side size n: A = [0, n), B1 = [n, 2n), B2 = [2n, 3n); the RS
vertex b in [n, 2n) has copies b (B1) and b + n (B2).
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..constants import SEED_GENERATOR
from ..exceptions import InstanceError, Violation
from ..graph_core import EMPTY_PATH, Edge, Graph, PathWitness, build_graph, contract_pairs, validate_path
from ..settings import derive_rng
from ..stream_model import EventStream, insert
from .permutations import Permutation, check_permutation, cycles, longest_cycle, random_permutation
from .rs_graphs import RSGraph


@dataclass(frozen=True)
class SLPInstance:
    r: int
    seed: int
    coins: Tuple[int, ...]
    sigma: Permutation
    graph: Graph
    stream: EventStream
    alice: Tuple[Edge, ...]
    bob_b1: Tuple[Edge, ...]
    bob_b2: Tuple[Edge, ...]
    witness: PathWitness


def _cycle_witness(
    sigma: Permutation, a: Sequence[int], real: Sequence[int], twin: Sequence[int]
) -> PathWitness:
    """Twin source of the cycle's last index, then a/b pairs around the longest cycle of sigma."""
    cycle = max(cycles(sigma), key=len)
    vertices = [twin[cycle[-1]]]
    for i in cycle:
        vertices.extend((a[i], real[i]))
    return PathWitness(tuple(vertices))


def gen_slp(
    r: int, seed: int, sigma: Optional[Sequence[int]] = None, coins: Optional[Sequence[int]] = None
) -> SLPInstance:
    """Sample the single-matching distribution; sigma and coins may be fixed by the caller."""
    if r < 1:
        raise InstanceError(f"r must be at least 1, got {r}")
    rng = derive_rng(seed, SEED_GENERATOR)
    drawn_coins = tuple(int(x) for x in rng.integers(0, 2, size=r))
    drawn_sigma = random_permutation(r, rng)
    coins = tuple(int(x) for x in coins) if coins is not None else drawn_coins
    sigma = check_permutation(sigma) if sigma is not None else drawn_sigma
    if len(coins) != r or len(sigma) != r or any(x not in (0, 1) for x in coins):
        raise InstanceError(f"coins and sigma must have length {r} with binary coins")

    a = list(range(r))
    b1 = [r + i for i in range(r)]
    b2 = [2 * r + i for i in range(r)]
    real = [b1[i] if coins[i] == 0 else b2[i] for i in range(r)]
    twin = [b2[i] if coins[i] == 0 else b1[i] for i in range(r)]

    alice = tuple((a[i], real[i]) for i in range(r))
    bob_b1 = tuple((b1[j], a[sigma[j]]) for j in range(r))
    bob_b2 = tuple((b2[j], a[sigma[j]]) for j in range(r))
    edges = alice + bob_b1 + bob_b2
    graph = build_graph(3 * r, edges, directed=True)
    stream = EventStream(3 * r, True, tuple(insert(u, v) for u, v in edges))
    witness = _cycle_witness(sigma, a, real, twin)
    return SLPInstance(r, seed, coins, sigma, graph, stream, alice, bob_b1, bob_b2, witness)


def contract_slp(inst: SLPInstance) -> Graph:
    """Merge every twin pair b1_i, b2_i."""
    return contract_pairs(inst.graph, [(inst.r + i, 2 * inst.r + i) for i in range(inst.r)])


def slp_exact_lp(inst: SLPInstance) -> int:
    """Longest path of the contracted graph: 2 * lc(sigma) - 1."""
    return 2 * longest_cycle(inst.sigma) - 1


def slp_source_lp(inst: SLPInstance) -> int:
    """Longest path of the uncontracted graph: the twin source adds one edge."""
    return 2 * longest_cycle(inst.sigma)


# ── RS direct sum ──


@dataclass(frozen=True)
class DLPInstance:
    n: int
    seed: int
    rs: RSGraph
    coins: Tuple[Tuple[int, ...], ...]
    J: int
    rho: Permutation
    graph: Graph
    stream: EventStream
    matchings: Tuple[Tuple[Edge, ...], ...]
    bob_b1: Tuple[Edge, ...]
    bob_b2: Tuple[Edge, ...]
    witness: PathWitness

    @property
    def planted(self) -> frozenset:
        """M_J together with both copies of N_J."""
        return frozenset(self.matchings[self.J - 1] + self.bob_b1 + self.bob_b2)


def _build_dlp(
    rs: RSGraph, seed: int, coins: Sequence[Sequence[int]], J: int, rho: Permutation
) -> DLPInstance:
    n = rs.n
    matchings: List[Tuple[Edge, ...]] = []
    for matching, flips in zip(rs.matchings, coins):
        matchings.append(tuple((a, b if flip == 0 else b + n) for (a, b), flip in zip(matching, flips)))

    special = rs.matchings[J - 1]
    a = [edge[0] for edge in special]
    b1 = [edge[1] for edge in special]
    b2 = [edge[1] + n for edge in special]
    bob_b1 = tuple((b1[j], a[rho[j]]) for j in range(len(special)))
    bob_b2 = tuple((b2[j], a[rho[j]]) for j in range(len(special)))

    alice = [edge for matching in matchings for edge in matching]
    edges = alice + list(bob_b1) + list(bob_b2)
    graph = build_graph(3 * n, edges, directed=True)
    stream = EventStream(3 * n, True, tuple(insert(u, v) for u, v in edges))

    flips = coins[J - 1]
    real = [b1[j] if flips[j] == 0 else b2[j] for j in range(len(special))]
    twin = [b2[j] if flips[j] == 0 else b1[j] for j in range(len(special))]
    witness = _cycle_witness(rho, a, real, twin)
    return DLPInstance(
        n, seed, rs, tuple(tuple(c) for c in coins), J, rho, graph, stream, tuple(matchings), bob_b1, bob_b2, witness
    )


def _draw_dlp(rs: RSGraph, rng: np.random.Generator) -> Tuple[List[Tuple[int, ...]], int, Permutation]:
    if rs.t == 0 or rs.r == 0:
        raise InstanceError("the RS graph needs at least one non-empty matching")
    coins = [tuple(int(x) for x in rng.integers(0, 2, size=len(matching))) for matching in rs.matchings]
    J = int(rng.integers(1, rs.t + 1))
    rho = random_permutation(rs.r, rng)
    return coins, J, rho


def gen_dlp(rs: RSGraph, seed: int) -> DLPInstance:
    """Split every RS edge by a coin, pick J, and add two copies of a random matching on V(M_J)."""
    coins, J, rho = _draw_dlp(rs, derive_rng(seed, SEED_GENERATOR))
    return _build_dlp(rs, seed, coins, J, rho)


def embed_slp_in_dlp(rs: RSGraph, slp: SLPInstance, seed: int) -> DLPInstance:
    """Draw the RS instance around a uniform J and plant the given single-matching instance at M_J."""
    if slp.r != rs.r:
        raise InstanceError(f"matching size {rs.r} differs from the instance size {slp.r}")
    coins, J, _ = _draw_dlp(rs, derive_rng(seed, SEED_GENERATOR))
    coins[J - 1] = slp.coins
    return _build_dlp(rs, seed, coins, J, slp.sigma)


def _check_path(g: Graph, q: PathWitness) -> None:
    violation = validate_path(g, q)
    if violation:
        raise ValueError(f"not a path of the instance ({violation.kind} at {violation.position}): {violation.detail}")


def verify_trimmed_path(inst: DLPInstance, q: PathWitness) -> Optional[Violation]:
    """Q minus its first and last edge uses only M_J and the two copies of N_J."""
    if q.length < 2:
        raise ValueError(f"trimming needs a path of length at least 2, got {q.length}")
    _check_path(inst.graph, q)
    planted = inst.planted
    for position, edge in enumerate(q.edge_pairs()[1:-1], start=1):
        if edge not in planted:
            return Violation("outside-planted", position, f"edge {edge} is not in M_J or N_J")
    return None


def project_to_slp(inst: DLPInstance, q: PathWitness) -> PathWitness:
    """Longest contiguous piece of Q made of M_J and N_J edges."""
    if not q.vertices:
        return EMPTY_PATH
    _check_path(inst.graph, q)
    planted = inst.planted
    best = (0, 0)
    start = 0
    for index, edge in enumerate(q.edge_pairs()):
        if edge not in planted:
            start = index + 1
            continue
        if index + 1 - start > best[1] - best[0]:
            best = (start, index + 1)
    return PathWitness(q.vertices[best[0]: best[1] + 1])
