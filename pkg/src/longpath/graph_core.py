"""Graph representation, path validation, contraction and induced subgraphs."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from .constants import ENUMERATION_VERTEX_LIMIT
from .exceptions import GraphError, InstanceError, Violation

Edge = Tuple[int, int]


def canonical_edge(u: int, v: int, directed: bool) -> Edge:
    """Return the stored form of an edge: ordered when directed, (min, max) otherwise."""
    if directed or u < v:
        return (u, v)
    return (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on the dense vertex ids 0..n-1.

    ``adjacency`` lists out-neighbors when directed; ``in_adjacency`` equals
    ``adjacency`` for undirected graphs. ``labels`` maps each id to the id it
    had in the graph it was derived from (identity for built graphs).
    """

    n: int
    directed: bool
    edges: FrozenSet[Edge]
    adjacency: Tuple[Tuple[int, ...], ...]
    in_adjacency: Tuple[Tuple[int, ...], ...]
    labels: Tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return canonical_edge(u, v, self.directed) in self.edges

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adjacency[v]

    def out_degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def in_degree(self, v: int) -> int:
        return len(self.in_adjacency[v])

    def degree(self, v: int) -> int:
        """Total degree; in + out for directed graphs."""
        if self.directed:
            return len(self.adjacency[v]) + len(self.in_adjacency[v])
        return len(self.adjacency[v])

    def average_degree(self) -> Fraction:
        if self.n == 0:
            return Fraction(0)
        return Fraction(2 * self.m, self.n)

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)


@dataclass(frozen=True)
class PathWitness:
    """Ordered vertex sequence claimed to be a simple path."""

    vertices: Tuple[int, ...]

    @property
    def length(self) -> int:
        return max(len(self.vertices) - 1, 0)

    def edge_pairs(self) -> List[Edge]:
        return list(zip(self.vertices, self.vertices[1:]))

    def edges_in(self, g: Graph) -> List[Edge]:
        """Path edges in the graph's stored (canonical) form."""
        return [canonical_edge(u, v, g.directed) for u, v in self.edge_pairs()]

    def reversed(self) -> "PathWitness":
        return PathWitness(tuple(reversed(self.vertices)))


EMPTY_PATH = PathWitness(())


def build_graph(
    n: int, edges: Iterable[Sequence[int]], directed: bool = False, labels: Optional[Sequence[int]] = None
) -> Graph:
    """Build a deduplicated graph, rejecting out-of-range endpoints and self-loops."""
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    stored = set()
    for edge in edges:
        u, v = int(edge[0]), int(edge[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside [0, {n})", (u, v))
        if u == v:
            raise GraphError(f"self-loop at vertex {u}", (u, v))
        stored.add(canonical_edge(u, v, directed))

    out_lists: List[List[int]] = [[] for _ in range(n)]
    in_lists: List[List[int]] = [[] for _ in range(n)] if directed else out_lists
    for u, v in stored:
        out_lists[u].append(v)
        in_lists[v].append(u)
    adjacency = tuple(tuple(sorted(neighbors)) for neighbors in out_lists)
    in_adjacency = tuple(tuple(sorted(neighbors)) for neighbors in in_lists) if directed else adjacency

    return Graph(
        n=n,
        directed=directed,
        edges=frozenset(stored),
        adjacency=adjacency,
        in_adjacency=in_adjacency,
        labels=tuple(labels) if labels is not None else tuple(range(n)),
    )


def degree_stats(g: Graph) -> Tuple[int, Fraction]:
    """Return (minimum degree, average degree d = 2m/n)."""
    if g.n == 0:
        return 0, Fraction(0)
    return min(g.degree(v) for v in range(g.n)), g.average_degree()


def validate_path(g: Graph, p: PathWitness) -> Optional[Violation]:
    """Return None for a simple path of g, else the first violation along it."""
    seen = set()
    for position, v in enumerate(p.vertices):
        if not 0 <= v < g.n:
            return Violation("out-of-range", position, f"vertex {v} not in [0, {g.n})")
        if v in seen:
            return Violation("repeated-vertex", position, f"vertex {v} visited twice")
        seen.add(v)
        if position == 0:
            continue
        u = p.vertices[position - 1]
        if g.has_edge(u, v):
            continue
        if g.directed and g.has_edge(v, u):
            return Violation("wrong-direction", position, f"edge ({v}, {u}) traversed against its direction")
        return Violation("missing-edge", position, f"no edge between {u} and {v}")
    return None


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Return G[S] relabeled to 0..|S|-1 in ascending id order; labels keep the mapping."""
    kept = sorted(set(vertices))
    position: Dict[int, int] = {v: i for i, v in enumerate(kept)}
    edges = [
        (position[u], position[v]) for u, v in g.edges if u in position and v in position
    ]
    return build_graph(len(kept), edges, g.directed, labels=[g.labels[v] for v in kept])


def contract_pairs(g: Graph, pairs: Sequence[Tuple[int, int]]) -> Graph:
    """Merge each vertex pair into one vertex and collapse parallel edges.

    The merged vertex takes the place of the smaller id; the remaining ids are
    compacted in ascending order. Direction is preserved; an edge joining the
    two members of a pair disappears.
    """
    representative: Dict[int, int] = {}
    for x, y in pairs:
        if x == y:
            raise GraphError(f"pair ({x}, {y}) contracts a vertex with itself", (x, y))
        for v in (x, y):
            if v in representative:
                raise GraphError(f"vertex {v} appears in more than one pair", (x, y))
            if not 0 <= v < g.n:
                raise GraphError(f"vertex {v} not in [0, {g.n})", (x, y))
        low, high = min(x, y), max(x, y)
        representative[low] = low
        representative[high] = low

    new_id: Dict[int, int] = {}
    labels: List[int] = []
    for v in range(g.n):
        if representative.get(v, v) != v:
            continue
        new_id[v] = len(labels)
        labels.append(g.labels[v])

    def image(v: int) -> int:
        return new_id[representative.get(v, v)]

    edges = {(image(u), image(v)) for u, v in g.edges if image(u) != image(v)}
    return build_graph(len(labels), edges, g.directed, labels=labels)


def edge_subgraph(g: Graph, edges: Iterable[Edge]) -> Graph:
    """Graph on the same vertex set keeping only the given edges."""
    return build_graph(g.n, edges, g.directed, labels=g.labels)


def enumerate_simple_paths(g: Graph, max_vertices: int = ENUMERATION_VERTEX_LIMIT) -> Iterator[PathWitness]:
    """Yield every simple path with at least one edge (both orientations when undirected).

    Exhaustive oracle for the tiny-instance lemma checks; refuses graphs above
    ``max_vertices`` vertices.
    """
    if g.n > max_vertices:
        raise InstanceError(f"enumeration limited to {max_vertices} vertices, graph has {g.n}")

    def extend(path: List[int], on_path: set) -> Iterator[PathWitness]:
        for w in g.adjacency[path[-1]]:
            if w in on_path:
                continue
            path.append(w)
            on_path.add(w)
            yield PathWitness(tuple(path))
            yield from extend(path, on_path)
            on_path.remove(w)
            path.pop()

    for start in range(g.n):
        yield from extend([start], {start})
