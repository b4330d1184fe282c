"""Exhaustive structural checks on tiny generated instances."""

from dataclasses import dataclass
from typing import Iterable, Optional

from ..constants import ENUMERATION_VERTEX_LIMIT, REDUCTION_ENUMERATION_LIMIT
from ..graph_core import Edge, Graph, PathWitness, enumerate_simple_paths, induced_subgraph
from .directed import DLPInstance, verify_trimmed_path
from .insdel import InsDelReductionInstance
from .undirected import UndirReductionInstance


@dataclass(frozen=True)
class LemmaCheck:
    paths: int
    counterexample: Optional[PathWitness] = None

    @property
    def holds(self) -> bool:
        return self.counterexample is None


def edges_shared(g: Graph, q: PathWitness, edges: Iterable[Edge]) -> int:
    """|Q ∩ E'| for an edge set E' stored in g's canonical form."""
    wanted = set(edges)
    return sum(1 for edge in q.edges_in(g) if edge in wanted)


def check_trimmed_paths(inst: DLPInstance, max_vertices: int = ENUMERATION_VERTEX_LIMIT) -> LemmaCheck:
    checked = 0
    for q in enumerate_simple_paths(inst.graph, max_vertices):
        if q.length < 2:
            continue
        checked += 1
        if verify_trimmed_path(inst, q) is not None:
            return LemmaCheck(checked, q)
    return LemmaCheck(checked)


def undirected_path_bound(inst: UndirReductionInstance, q: PathWitness) -> int:
    """3(n - r) * ell + 2|Q ∩ M_i*| + 2 * ell."""
    shared = edges_shared(inst.graph, q, inst.planted_matching)
    return 3 * (inst.n - inst.r) * inst.ell + 2 * shared + 2 * inst.ell


def check_undirected_bound(
    inst: UndirReductionInstance, max_vertices: int = REDUCTION_ENUMERATION_LIMIT
) -> LemmaCheck:
    checked = 0
    for q in enumerate_simple_paths(inst.graph, max_vertices):
        checked += 1
        if q.length > undirected_path_bound(inst, q):
            return LemmaCheck(checked, q)
    return LemmaCheck(checked)


def insdel_path_bound(inst: InsDelReductionInstance, q: PathWitness) -> int:
    """6 sqrt(N) + 4 + 2|M ∩ Q|."""
    return 6 * inst.side + 4 + 2 * edges_shared(inst.graph, q, inst.M)


def check_insdel_bound(
    inst: InsDelReductionInstance, max_vertices: int = ENUMERATION_VERTEX_LIMIT
) -> LemmaCheck:
    checked = 0
    for q in enumerate_simple_paths(inst.graph, max_vertices):
        checked += 1
        if q.length > insdel_path_bound(inst, q):
            return LemmaCheck(checked, q)
    return LemmaCheck(checked)


def insdel_induced_edges_match(inst: InsDelReductionInstance) -> bool:
    """G[V(M) ∪ V(N1) ∪ V(N2)] has exactly the edges M ∪ N1 ∪ N2."""
    planted = set(inst.M) | set(inst.N1) | set(inst.N2)
    vertices = {v for edge in planted for v in edge}
    induced = induced_subgraph(inst.graph, vertices)
    found = {
        (min(induced.labels[u], induced.labels[v]), max(induced.labels[u], induced.labels[v]))
        for u, v in induced.edges
    }
    return found == planted
