"""Undirected reduction from Index on an RS graph (insertion-only streams).

Layout for RS side size n: A = [0, n), B1 = [n, 2n), B2 = [2n, 3n), and the
subdivision (hoop) vertices of the gateway path from 3n upwards. Bits, rows
and columns are 0-based internally; J, i* and j* are 1-based with
(i* - 1) * r + j* = J.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from ..constants import DEFAULT_SUBDIVISION, EXACT_BUDGET, SEED_GENERATOR
from ..exceptions import BudgetExceededError, InstanceError
from ..graph_core import Edge, Graph, PathWitness, build_graph, canonical_edge, induced_subgraph
from ..pathfinder import exact_longest_path, greedy_extend
from ..settings import derive_rng, logger
from ..stream_model import EventStream, insert
from .permutations import Permutation, check_permutation, inverse, random_permutation
from .rs_graphs import RSGraph

Y_CONVENTIONS = ("pi", "pi-inverse")


@dataclass(frozen=True)
class UndirReductionInstance:
    rs: RSGraph
    X: Tuple[int, ...]
    J: int
    ell: int
    seed: int
    pi: Permutation
    Y: Tuple[int, ...]
    rho: Permutation
    graph: Graph
    stream: EventStream
    alice: Tuple[Tuple[Edge, ...], ...]
    bob_b1: Tuple[Edge, ...]
    bob_b2: Tuple[Edge, ...]
    gateway: PathWitness
    fan: Tuple[Edge, ...]
    witness: PathWitness
    longest_planted: int

    @property
    def n(self) -> int:
        return self.rs.n

    @property
    def r(self) -> int:
        return self.rs.r

    @property
    def i_star(self) -> int:
        return (self.J - 1) // self.r + 1

    @property
    def j_star(self) -> int:
        return (self.J - 1) % self.r + 1

    @property
    def special_pair(self) -> Edge:
        """RS edge e_{i*, pi^-1(j*)} as (a, b) with b in [n, 2n)."""
        return self.rs.matchings[self.i_star - 1][inverse(self.pi)[self.j_star - 1]]

    @property
    def special_edge(self) -> Edge:
        """Alice's copy of the special RS edge in the final graph."""
        return self.alice[self.i_star - 1][inverse(self.pi)[self.j_star - 1]]

    @property
    def planted_matching(self) -> Tuple[Edge, ...]:
        return self.alice[self.i_star - 1]

    def witness_bound(self) -> int:
        """(3(n - r) - 1) * ell + 1 + |R| for the planted longest path R."""
        return (3 * (self.n - self.r) - 1) * self.ell + 1 + self.longest_planted


def _longest_planted_path(vertex_count: int, edges: Sequence[Edge], budget: int) -> PathWitness:
    planted = build_graph(vertex_count, edges)
    touched = sorted({v for edge in edges for v in edge})
    local = induced_subgraph(planted, touched)
    try:
        path = exact_longest_path(local, budget)
    except BudgetExceededError as e:
        logger.warning("planted longest path search stopped (%s), using greedy paths", e)
        path = max((greedy_extend(local, start=v) for v in range(local.n)), key=lambda p: p.length)
    return PathWitness(tuple(local.labels[v] for v in path.vertices))


def gen_undirected_reduction(
    rs: RSGraph,
    X: Sequence[int],
    J: int,
    ell: int = DEFAULT_SUBDIVISION,
    seed: int = 0,
    budget: int = EXACT_BUDGET,
    rho: Optional[Sequence[int]] = None,
) -> UndirReductionInstance:
    """Alice splits the RS edges by (X xor Y); Bob adds the gateway path, the fan and two copies of N."""
    n, r, t = rs.n, rs.r, rs.t
    if ell < 4:
        raise InstanceError(f"subdivision length must be at least 4, got {ell}")
    if len(X) != r * t or any(x not in (0, 1) for x in X):
        raise InstanceError(f"X must be a bit vector of length r*t = {r * t}")
    if not 1 <= J <= r * t:
        raise InstanceError(f"J must lie in [1, {r * t}], got {J}")
    if n <= r:
        raise InstanceError(f"the gateway path needs n > r, got n={n}, r={r}")

    rng = derive_rng(seed, SEED_GENERATOR)
    pi = random_permutation(r, rng)
    Y = tuple(int(y) for y in rng.integers(0, 2, size=r * t))
    drawn_rho = random_permutation(r, rng)
    rho = check_permutation(rho) if rho is not None else drawn_rho
    if len(rho) != r:
        raise InstanceError(f"N must match {r} vertices, got a permutation of {len(rho)}")

    alice: List[Tuple[Edge, ...]] = []
    for i, matching in enumerate(rs.matchings):
        routed = []
        for j, (a, b) in enumerate(matching):
            bit = X[i * r + pi[j]] ^ Y[i * r + pi[j]]
            routed.append((a, b if bit == 0 else b + n))
        alice.append(tuple(routed))

    i_star = (J - 1) // r
    special = rs.matchings[i_star]
    a_prime = [a for a, _ in special]
    b1_prime = [b for _, b in special]
    b2_prime = [b + n for _, b in special]
    planted_vertices = set(a_prime) | set(b1_prime) | set(b2_prime)

    order = (
        sorted(set(range(n)) - set(a_prime))
        + sorted(set(range(n, 2 * n)) - set(b1_prime))
        + sorted(set(range(2 * n, 3 * n)) - set(b2_prime))
    )
    gateway = [order[0]]
    next_id = 3 * n
    for v in order[1:]:
        gateway.extend(range(next_id, next_id + ell - 1))
        next_id += ell - 1
        gateway.append(v)
    gateway_path = PathWitness(tuple(gateway))
    fan = tuple((gateway[-1], v) for v in sorted(planted_vertices))

    bob_b1 = tuple(canonical_edge(a_prime[rho[j]], b1_prime[j], False) for j in range(r))
    bob_b2 = tuple(canonical_edge(a_prime[rho[j]], b2_prime[j], False) for j in range(r))

    alice_edges = [edge for matching in alice for edge in matching]
    bob_edges = gateway_path.edge_pairs() + list(fan) + list(bob_b1) + list(bob_b2)
    graph = build_graph(next_id, alice_edges + bob_edges)
    stream = EventStream(next_id, False, tuple(insert(u, v) for u, v in alice_edges + bob_edges))

    planted = _longest_planted_path(next_id, list(alice[i_star]) + list(bob_b1) + list(bob_b2), budget)
    witness = PathWitness(gateway_path.vertices + planted.vertices)
    return UndirReductionInstance(
        rs, tuple(X), J, ell, seed, pi, Y, rho, graph, stream, tuple(alice), bob_b1, bob_b2,
        gateway_path, fan, witness, planted.length,
    )


def y_position(inst: UndirReductionInstance, convention: str = "pi") -> int:
    """0-based position of the Y bit the decoder reads."""
    if convention == "pi":
        return inst.J - 1
    if convention == "pi-inverse":
        return (inst.i_star - 1) * inst.r + inverse(inst.pi)[inst.j_star - 1]
    raise ValueError(f"Unsupported Y index convention: {convention}")


def decode_undirected(inst: UndirReductionInstance, q: PathWitness, convention: str = "pi") -> Optional[int]:
    """Bob's output: Z xor Y when Q holds the special edge, None (fail) otherwise.

    When Bob's own matching joins the same pair, both copies exist and the
    copy in Q carries no information, so the decoder fails.
    """
    a, b = inst.special_pair
    if canonical_edge(a, b, False) in inst.bob_b1:
        return None
    in_b1 = canonical_edge(a, b, False)
    in_b2 = canonical_edge(a, b + inst.n, False)
    edges = set(q.edges_in(inst.graph))
    if in_b1 in edges and in_b2 not in edges:
        z = 0
    elif in_b2 in edges and in_b1 not in edges:
        z = 1
    else:
        return None
    return z ^ inst.Y[y_position(inst, convention)]
