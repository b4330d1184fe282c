"""Undirected reduction from Augmented-Index for insertion-deletion streams.

Layout for side size n: a^p = p, b1^p = n + p, b2^p = 2n + p. Matrix cell
(i, j) (0-based) belongs to the pair a^{pi1(i)}, b^{pi2(j)}; Alice routes it to
B1 when Y[i][j] = 0 and to B2 otherwise. J, i* and j* are 1-based with
(i* - 1) * sqrt(N) + j* = J.
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..constants import SEED_GENERATOR
from ..exceptions import InstanceError, Violation
from ..graph_core import Edge, Graph, PathWitness, build_graph, canonical_edge
from ..settings import derive_rng
from ..stream_model import EventStream, apply_stream, delete, insert
from .permutations import Permutation, random_permutation

Matrix = Tuple[Tuple[int, ...], ...]
Cell = Tuple[int, int]


@dataclass(frozen=True)
class InsDelReductionInstance:
    n: int
    X: Tuple[int, ...]
    J: int
    seed: int
    pi1: Permutation
    pi2: Permutation
    Y_prime: Matrix
    Z: Matrix
    Y: Matrix
    stream: EventStream
    graph: Graph
    deleted: Tuple[Edge, ...]
    inserted: Tuple[Edge, ...]
    bob_cells: Tuple[Cell, ...]
    M: Tuple[Edge, ...]
    N1: Tuple[Edge, ...]
    N2: Tuple[Edge, ...]
    witness: PathWitness

    @property
    def side(self) -> int:
        return math.isqrt(len(self.X))

    @property
    def i_star(self) -> int:
        return (self.J - 1) // self.side + 1

    @property
    def j_star(self) -> int:
        return (self.J - 1) % self.side + 1

    def a(self, i: int) -> int:
        return self.pi1[i]

    def b(self, copy: int, j: int) -> int:
        """Copy 0 lies in B1, copy 1 in B2."""
        return (1 + copy) * self.n + self.pi2[j]

    @property
    def special_edges(self) -> Tuple[Edge, Edge]:
        """The B1 and B2 copies of the pair at (i*, j*)."""
        i, j = self.i_star - 1, self.j_star - 1
        return (
            canonical_edge(self.a(i), self.b(0, j), False),
            canonical_edge(self.a(i), self.b(1, j), False),
        )


def _on_diagonals(i: int, j: int, i_star: int, j_star: int) -> bool:
    return i - i_star == j - j_star or i - i_star - 1 == j - j_star


def gen_insdel_reduction(X: Sequence[int], n: int, J: int, seed: int = 0) -> InsDelReductionInstance:
    """Alice inserts one edge per cell; Bob deletes over I and inserts the second copy on the lower diagonal."""
    side = math.isqrt(len(X))
    if side < 1 or side * side != len(X):
        raise InstanceError(f"|X| must be a positive perfect square, got {len(X)}")
    if any(x not in (0, 1) for x in X):
        raise InstanceError("X must be a bit vector")
    if side > n:
        raise InstanceError(f"the embedded {side}x{side} block does not fit into n={n}")
    if not 1 <= J <= len(X):
        raise InstanceError(f"J must lie in [1, {len(X)}], got {J}")

    rng = derive_rng(seed, SEED_GENERATOR)
    pi1 = random_permutation(n, rng)
    pi2 = random_permutation(n, rng)
    z = rng.integers(0, 2, size=(n, n))
    y_prime = rng.integers(0, 2, size=(n, n))
    y_prime[:side, :side] = np.asarray(X, dtype=y_prime.dtype).reshape(side, side)
    y = y_prime ^ z

    def edge(i: int, j: int, copy: int) -> Edge:
        return canonical_edge(pi1[i], (1 + copy) * n + pi2[j], False)

    i_star, j_star = (J - 1) // side, (J - 1) % side
    alice = [edge(i, j, int(y[i, j])) for i in range(n) for j in range(n)]

    deleted: List[Edge] = []
    deleted_cells: List[Cell] = []
    for i in range(i_star, n):
        for j in range(j_star, n):
            if not _on_diagonals(i, j, i_star, j_star):
                deleted.append(edge(i, j, int(y[i, j])))
                deleted_cells.append((i, j))

    lower = [(i_star + 1 + k, j_star + k) for k in range(n) if i_star + 1 + k < n and j_star + k < n]
    upper = [(i_star + k, j_star + k) for k in range(n) if i_star + k < n and j_star + k < n]
    inserted = [edge(i, j, 1 - int(y[i, j])) for i, j in lower]

    events = (
        tuple(insert(u, v) for u, v in alice)
        + tuple(delete(u, v) for u, v in deleted)
        + tuple(insert(u, v) for u, v in inserted)
    )
    stream = EventStream(3 * n, False, events)

    M = tuple(edge(i, j, int(y[i, j])) for i, j in upper)
    N1 = tuple(edge(i, j, 0) for i, j in lower)
    N2 = tuple(edge(i, j, 1) for i, j in lower)

    i, j = i_star, j_star
    vertices = [pi1[i]]
    while j < n:
        vertices.append((1 + int(y[i, j])) * n + pi2[j])
        if i + 1 >= n:
            break
        vertices.append(pi1[i + 1])
        i += 1
        j += 1

    def as_matrix(values: np.ndarray) -> Matrix:
        return tuple(tuple(int(x) for x in row) for row in values)

    return InsDelReductionInstance(
        n=n,
        X=tuple(int(x) for x in X),
        J=J,
        seed=seed,
        pi1=pi1,
        pi2=pi2,
        Y_prime=as_matrix(y_prime),
        Z=as_matrix(z),
        Y=as_matrix(y),
        stream=stream,
        graph=apply_stream(stream),
        deleted=tuple(deleted),
        inserted=tuple(inserted),
        bob_cells=tuple(deleted_cells) + tuple(lower),
        M=M,
        N1=N1,
        N2=N2,
        witness=PathWitness(tuple(vertices)),
    )


def intended_graph(inst: InsDelReductionInstance) -> Graph:
    """Alice's edges minus the deletions plus the inserted copies, built without replaying the stream."""
    n = inst.n
    alice = {
        canonical_edge(inst.a(i), inst.b(inst.Y[i][j], j), False) for i in range(n) for j in range(n)
    }
    return build_graph(3 * n, (alice - set(inst.deleted)) | set(inst.inserted))


def decode_insdel(inst: InsDelReductionInstance, q: PathWitness) -> Optional[int]:
    """Z at (i*, j*) for the B1 copy, 1 - Z for the B2 copy, None (fail) otherwise."""
    in_b1, in_b2 = inst.special_edges
    edges = set(q.edges_in(inst.graph))
    z = inst.Z[inst.i_star - 1][inst.j_star - 1]
    if in_b1 in edges:
        return z
    if in_b2 in edges:
        return 1 - z
    return None


def bob_knowledge_violations(inst: InsDelReductionInstance) -> List[Violation]:
    """Bob events that depend on a bit of X at or before position J."""
    side = inst.side
    violations = []
    for position, (i, j) in enumerate(inst.bob_cells):
        if i < side and j < side and i * side + j + 1 <= inst.J:
            violations.append(Violation("unknown-bit", position, f"cell ({i}, {j}) reads X[{i * side + j + 1}]"))
    return violations
