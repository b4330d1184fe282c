"""Core peeling, greedy extension, the exact longest-path oracle and sample extraction."""

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Iterable, List, Optional, Tuple, Union

from .constants import CORE_VERIFY_RESTARTS, DP_VERTEX_LIMIT, EXACT_BUDGET, SEED_PATHFINDER, WARM_START_WALKS
from .exceptions import BudgetExceededError, GraphError
from .graph_core import EMPTY_PATH, Edge, Graph, PathWitness, build_graph
from .samplers import SampleF
from .settings import derive_rng, logger

MODES = ("exact", "core-verify", "heuristic")


@dataclass(frozen=True)
class CoreResult:
    vertices: FrozenSet[int]
    threshold: Fraction
    removal_order: Tuple[int, ...]


def peel_core(g: Graph) -> CoreResult:
    """Remove vertices of current degree <= d/2 (d of the input graph) until none is left.

    Removal follows ascending current degree, then vertex id. Directed graphs
    peel on total degree.
    """
    if g.m == 0:
        raise GraphError("peeling needs a graph with at least one edge")
    threshold = g.average_degree() / 2
    degree = [g.degree(v) for v in range(g.n)]
    heap = [(degree[v], v) for v in range(g.n)]
    heapq.heapify(heap)
    removed = [False] * g.n
    order: List[int] = []

    while heap:
        current, v = heapq.heappop(heap)
        if removed[v] or current != degree[v]:
            continue
        if current > threshold:
            break
        removed[v] = True
        order.append(v)
        neighbors = g.adjacency[v] + g.in_adjacency[v] if g.directed else g.adjacency[v]
        for w in neighbors:
            if not removed[w]:
                degree[w] -= 1
                heapq.heappush(heap, (degree[w], w))

    core = frozenset(v for v in range(g.n) if not removed[v])
    logger.debug("peeled %d of %d vertices at threshold %s", len(order), g.n, threshold)
    return CoreResult(core, threshold, tuple(order))


def _walk(h: Graph, start: int, visited_cap: Optional[int] = None) -> PathWitness:
    path = [start]
    visited = {start}
    while visited_cap is None or len(path) < visited_cap:
        step = next((w for w in h.adjacency[path[-1]] if w not in visited), None)
        if step is None:
            break
        path.append(step)
        visited.add(step)
    return PathWitness(tuple(path))


def greedy_extend(
    g: Graph,
    allowed: Optional[Union[Graph, Iterable[Edge]]] = None,
    start: int = 0,
    visited_cap: Optional[int] = None,
) -> PathWitness:
    """Walk from start to the lowest-id unvisited neighbor until stuck.

    ``allowed`` restricts the walk to a subset of g's edges; out-neighbors are
    used for directed graphs. ``visited_cap`` bounds the number of vertices.
    """
    if not 0 <= start < g.n:
        raise GraphError(f"start vertex {start} not in [0, {g.n})")
    if allowed is None:
        h = g
    elif isinstance(allowed, Graph):
        h = allowed
    else:
        h = build_graph(g.n, allowed, g.directed, labels=g.labels)
    return _walk(h, start, visited_cap)


# ── Exact oracle ──


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _bitmask_longest_path(g: Graph, budget: int) -> PathWitness:
    out_mask = [sum(1 << w for w in g.adjacency[v]) for v in range(g.n)]
    in_mask = [sum(1 << w for w in g.in_adjacency[v]) for v in range(g.n)]
    reach = [0] * (1 << g.n)
    for v in range(g.n):
        reach[1 << v] = 1 << v

    expansions = 0
    best_mask, best_size = 1, 1
    for mask in range(1, 1 << g.n):
        ends = reach[mask]
        if not ends:
            continue
        size = bin(mask).count("1")
        if size > best_size:
            best_mask, best_size = mask, size
        for v in _bits(ends):
            expansions += 1
            if expansions > budget:
                raise BudgetExceededError(expansions)
            for w in _bits(out_mask[v] & ~mask):
                reach[mask | (1 << w)] |= 1 << w

    mask = best_mask
    end = next(iter(_bits(reach[mask])))
    backwards = [end]
    while mask != 1 << end:
        mask ^= 1 << end
        end = next(iter(_bits(reach[mask] & in_mask[end])))
        backwards.append(end)
    return PathWitness(tuple(reversed(backwards)))


def _reachable_count(g: Graph, source: int, blocked: List[bool]) -> int:
    seen = {source}
    frontier = [source]
    while frontier:
        v = frontier.pop()
        for w in g.adjacency[v]:
            if not blocked[w] and w not in seen:
                seen.add(w)
                frontier.append(w)
    return len(seen) - 1


def _largest_component(g: Graph) -> int:
    """Vertex count of the largest (weakly) connected component."""
    seen = [False] * g.n
    largest = 0
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        frontier = [root]
        size = 0
        while frontier:
            v = frontier.pop()
            size += 1
            for w in (g.adjacency[v] + g.in_adjacency[v]) if g.directed else g.adjacency[v]:
                if not seen[w]:
                    seen[w] = True
                    frontier.append(w)
        largest = max(largest, size)
    return largest


def _warnsdorff_order(g: Graph, v: int, on_path: List[bool]) -> List[int]:
    """Unvisited out-neighbors of v, fewest onward moves first."""

    def onward(w: int) -> int:
        return sum(1 for x in g.adjacency[w] if not on_path[x])

    return sorted((w for w in g.adjacency[v] if not on_path[w]), key=lambda w: (onward(w), w))


def _warm_start(g: Graph, starts: List[int], on_path: List[bool]) -> List[int]:
    best: List[int] = []
    for start in starts:
        path = [start]
        on_path[start] = True
        while True:
            options = _warnsdorff_order(g, path[-1], on_path)
            if not options:
                break
            path.append(options[0])
            on_path[options[0]] = True
        for v in path:
            on_path[v] = False
        if len(path) > len(best):
            best = path
    return best


def _branch_and_bound(g: Graph, budget: int, warm_starts: int = WARM_START_WALKS) -> PathWitness:
    """DFS over simple paths, children in Warnsdorff order, pruned by reachability.

    The incumbent starts from greedy Warnsdorff walks; the search stops as soon
    as it spans the largest component.
    """
    on_path = [False] * g.n
    ceiling = _largest_component(g) - 1
    # low-degree starts first
    starts = sorted(range(g.n), key=lambda v: (g.degree(v), v))
    best = _warm_start(g, starts[:warm_starts], on_path)
    if len(best) - 1 == ceiling:
        logger.debug("warm start spans the largest component (%d edges)", ceiling)
        return PathWitness(tuple(best))

    expansions = 0
    for start in starts:
        path = [start]
        on_path[start] = True
        stack = [iter(_warnsdorff_order(g, start, on_path))]
        while stack:
            w = next((x for x in stack[-1] if not on_path[x]), None)
            if w is None:
                stack.pop()
                on_path[path.pop()] = False
                continue
            expansions += 1
            if expansions > budget:
                raise BudgetExceededError(expansions)
            path.append(w)
            on_path[w] = True
            if len(path) > len(best):
                best = list(path)
                if len(best) - 1 == ceiling:
                    return PathWitness(tuple(best))
            if len(path) - 1 + _reachable_count(g, w, on_path) <= len(best) - 1:
                on_path[path.pop()] = False
                continue
            stack.append(iter(_warnsdorff_order(g, w, on_path)))
    return PathWitness(tuple(best))


def exact_longest_path(g: Graph, budget: int = EXACT_BUDGET) -> PathWitness:
    """A true longest simple path: bitmask DP up to 20 vertices, pruned DFS above.

    Raises BudgetExceededError once more than ``budget`` expansions were made.
    """
    if g.n == 0:
        return EMPTY_PATH
    if g.m == 0:
        return PathWitness((0,))
    if g.n <= DP_VERTEX_LIMIT:
        return _bitmask_longest_path(g, budget)
    return _branch_and_bound(g, budget)


# ── Extraction from a sample ──


def _best(paths: Iterable[PathWitness]) -> PathWitness:
    best = EMPTY_PATH
    for path in paths:
        if path.length > best.length or not best.vertices:
            best = path
    return best


def _heuristic(h: Graph, starts: List[int]) -> PathWitness:
    candidates = []
    for start in starts:
        path = _walk(h, start)
        candidates.append(path)
        if not h.directed and path.length:
            candidates.append(_walk(h, path.vertices[-1]))
    return _best(candidates)


def extract_path_from_sample(
    sample: SampleF,
    mode: str = "exact",
    oracle_graph: Optional[Graph] = None,
    seed: int = 0,
    restarts: int = CORE_VERIFY_RESTARTS,
    budget: int = EXACT_BUDGET,
) -> PathWitness:
    """Longest path of G[F] found by the chosen mode."""
    if mode not in MODES:
        raise ValueError(f"Unsupported extraction mode: {mode}")
    h = build_graph(sample.n, sample.edges, sample.directed)
    if h.n == 0:
        return EMPTY_PATH
    rng = derive_rng(seed, SEED_PATHFINDER)

    if mode == "exact":
        return exact_longest_path(h, budget)

    if mode == "core-verify":
        if oracle_graph is None:
            raise ValueError("core-verify mode requires the oracle graph")
        core_set = peel_core(oracle_graph).vertices
        core = sorted(core_set)
        kept = [(u, v) for u, v in sample.edges if u in core_set and v in core_set]
        restricted = build_graph(sample.n, kept, sample.directed)
        picks = rng.choice(len(core), size=min(restarts, len(core)), replace=False)
        return _best(_walk(restricted, core[int(i)]) for i in picks)

    touched = sorted({v for edge in sample.edges for v in edge}) or list(range(h.n))
    picks = rng.choice(len(touched), size=min(restarts, len(touched)), replace=False)
    return _heuristic(h, [touched[int(i)] for i in picks])


def approximation_ratio(lp: int, path: PathWitness) -> float:
    """Empirical alpha = lp / |path|; infinite for an empty path when lp > 0."""
    if path.length == 0:
        return 1.0 if lp == 0 else float("inf")
    return lp / path.length
