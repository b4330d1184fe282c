"""Bipartite graphs partitioned into induced matchings (RS graphs).

Side A is [0, n) and side B is [n, 2n); every edge is stored as (a, b) with a < n <= b.
"""

from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx

from ..constants import GRAPH_HEADER, MATCHING_MARKER, RS_SEARCH_VERTEX_LIMIT
from ..exceptions import FormatError, InstanceError, Violation
from ..file_operations import parse_header, parse_pair
from ..graph_core import Edge, Graph, build_graph, canonical_edge, induced_subgraph

Matching = Tuple[Edge, ...]


@dataclass(frozen=True)
class RSGraph:
    n: int
    graph: Graph
    matchings: Tuple[Matching, ...]

    @property
    def t(self) -> int:
        return len(self.matchings)

    @property
    def r(self) -> int:
        return len(self.matchings[0]) if self.matchings else 0


def _vertices(matching: Sequence[Edge]) -> List[int]:
    return [v for edge in matching for v in edge]


def verify_rs_decomposition(g: Graph, matchings: Sequence[Sequence[Edge]]) -> Optional[Violation]:
    """None when the matchings partition E(g) into induced matchings of one size.

    The violation position is the index of the first failing matching.
    """
    undirected = nx.Graph()
    undirected.add_nodes_from(range(g.n))
    undirected.add_edges_from(g.edges)
    if g.directed or not nx.is_bipartite(undirected):
        return Violation("not-bipartite", 0, "an RS graph is an undirected bipartite graph")
    owner: Dict[Edge, int] = {}
    for index, matching in enumerate(matchings):
        for u, v in matching:
            edge = canonical_edge(u, v, False)
            if edge not in g.edges:
                return Violation("not-an-edge", index, f"{edge} is not an edge of the graph")
            if edge in owner:
                return Violation("overlap", index, f"{edge} already belongs to matching {owner[edge]}")
            owner[edge] = index
    uncovered = sorted(g.edges - owner.keys())
    if uncovered:
        return Violation("uncovered", len(matchings), f"edge {uncovered[0]} is in no matching")

    # the common size; ties go to the earliest matching
    expected = Counter(len(matching) for matching in matchings).most_common(1)[0][0] if matchings else 0
    for index, matching in enumerate(matchings):
        vertices = _vertices(matching)
        if len(set(vertices)) != len(vertices):
            return Violation("not-a-matching", index, "two edges share an endpoint")
        if len(matching) != expected:
            return Violation("unequal-size", index, f"size {len(matching)} differs from {expected}")
        induced = induced_subgraph(g, vertices)
        if induced.m != len(matching):
            return Violation("not-induced", index, f"G[V(M)] has {induced.m} edges, the matching has {len(matching)}")
    return None


def make_rs(n: int, matchings: Sequence[Sequence[Edge]]) -> RSGraph:
    """Build and verify an RS graph on sides [0, n) and [n, 2n)."""
    for matching in matchings:
        for a, b in matching:
            if not (0 <= a < n <= b < 2 * n):
                raise InstanceError(f"edge ({a}, {b}) does not join A=[0,{n}) to B=[{n},{2 * n})")
    ordered = tuple(tuple(sorted(canonical_edge(u, v, False) for u, v in matching)) for matching in matchings)
    graph = build_graph(2 * n, [edge for matching in ordered for edge in matching])
    violation = verify_rs_decomposition(graph, ordered)
    if violation:
        raise InstanceError(f"invalid RS decomposition ({violation.kind}): {violation.detail}")
    return RSGraph(n, graph, ordered)


def rs_from_matching(n: int, matching: Sequence[Edge]) -> RSGraph:
    """The t = 1 family: a single matching is always induced in itself."""
    return make_rs(n, [matching])


def rs_from_blocks(r: int, t: int, spare: int = 0) -> RSGraph:
    """A matching of r*t edges split into t consecutive blocks, plus ``spare`` unmatched vertices per side."""
    if r < 1 or t < 1 or spare < 0:
        raise InstanceError(f"block sizes need r, t >= 1 and spare >= 0, got r={r}, t={t}, spare={spare}")
    n = r * t + spare
    return make_rs(n, [[(i * r + j, n + i * r + j) for j in range(r)] for i in range(t)])


def find_rs_decomposition(g: Graph, t: int) -> Optional[List[Matching]]:
    """Search for a partition of E(g) into t induced matchings of equal size."""
    if g.n > RS_SEARCH_VERTEX_LIMIT:
        raise InstanceError(f"decomposition search limited to {RS_SEARCH_VERTEX_LIMIT} vertices, graph has {g.n}")
    if t < 1 or g.m % t:
        return None
    size = g.m // t
    edges = g.sorted_edges()
    groups: List[List[Edge]] = [[] for _ in range(t)]

    def fits(edge: Edge, group: List[Edge]) -> bool:
        a, b = edge
        for x, y in group:
            if len({a, b, x, y}) < 4:
                return False
            if g.has_edge(a, y) or g.has_edge(x, b) or g.has_edge(a, x) or g.has_edge(b, y):
                return False
        return True

    def place(index: int) -> bool:
        if index == len(edges):
            return True
        opened = False
        for group in groups:
            if not group:
                # empty groups are interchangeable
                if opened:
                    continue
                opened = True
            if len(group) < size and fits(edges[index], group):
                group.append(edges[index])
                if place(index + 1):
                    return True
                group.pop()
        return False

    if not place(0):
        return None
    return [tuple(group) for group in groups]


# ── File format ──


def format_rs(rs: RSGraph) -> str:
    lines = [f"{GRAPH_HEADER} directed=0 n={2 * rs.n}"]
    for index, matching in enumerate(rs.matchings, start=1):
        lines.append(f"{MATCHING_MARKER} {index}")
        lines.extend(f"{a} {b}" for a, b in matching)
    return "\n".join(lines) + "\n"


def parse_rs_matchings(text: str) -> Tuple[int, List[List[Edge]]]:
    """(n, matchings) as written, without checking the decomposition."""
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty RS file", 1)
    directed, vertices = parse_header(lines[0], GRAPH_HEADER)
    if directed or vertices % 2:
        raise FormatError("an RS file describes an undirected graph on 2n vertices", 1)
    matchings: List[List[Edge]] = []
    for line_number, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        if line.startswith(MATCHING_MARKER):
            label = line[len(MATCHING_MARKER):].strip()
            if label != str(len(matchings) + 1):
                raise FormatError(f"expected '{MATCHING_MARKER} {len(matchings) + 1}', got {line.strip()!r}", line_number)
            matchings.append([])
            continue
        if not matchings:
            raise FormatError(f"edge before the first '{MATCHING_MARKER}' marker", line_number)
        matchings[-1].append(parse_pair(line.split(), line_number))
    return vertices // 2, matchings


def parse_rs(text: str) -> RSGraph:
    return make_rs(*parse_rs_matchings(text))


def read_rs(path: Union[str, Path]) -> RSGraph:
    return parse_rs(Path(path).read_text(encoding="ascii"))


def write_rs(path: Union[str, Path], rs: RSGraph) -> None:
    Path(path).write_text(format_rs(rs), encoding="ascii")
