"""Random input families for the experiments."""

from typing import List

import networkx as nx
import numpy as np

from .constants import SEED_GRAPH_FAMILY, SEED_STREAM_ORDER
from .exceptions import InstanceError
from .graph_core import Edge, Graph, build_graph
from .settings import derive_rng, derive_seed
from .stream_model import EventStream, StreamEvent, delete, insert


def _from_networkx(graph: nx.Graph, n: int) -> Graph:
    return build_graph(n, graph.edges())


def gnp_graph(n: int, d: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p) with p = d / (n - 1)."""
    if n < 2:
        raise InstanceError(f"G(n, p) needs n >= 2, got {n}")
    p = min(1.0, d / (n - 1))
    return _from_networkx(nx.fast_gnp_random_graph(n, p, seed=derive_seed(seed, SEED_GRAPH_FAMILY) % 2**32), n)


def regular_graph(n: int, d: int, seed: int) -> Graph:
    if (n * d) % 2 or d >= n:
        raise InstanceError(f"no {d}-regular graph on {n} vertices")
    return _from_networkx(nx.random_regular_graph(d, n, seed=derive_seed(seed, SEED_GRAPH_FAMILY) % 2**32), n)


def planted_path_graph(n: int, extra_edges: int, seed: int) -> Graph:
    """A Hamiltonian path on a random vertex order plus ``extra_edges`` random chords; lp = n - 1."""
    if n < 2:
        raise InstanceError(f"a planted path needs n >= 2, got {n}")
    rng = derive_rng(seed, SEED_GRAPH_FAMILY)
    order = [int(v) for v in rng.permutation(n)]
    edges = {tuple(sorted(pair)) for pair in zip(order, order[1:])}
    missing = n * (n - 1) // 2 - len(edges)
    target = len(edges) + min(extra_edges, missing)
    while len(edges) < target:
        u, v = (int(x) for x in rng.choice(n, size=2, replace=False))
        edges.add((min(u, v), max(u, v)))
    return build_graph(n, edges)


def turnstile_stream(g: Graph, decoy_fraction: float, seed: int) -> EventStream:
    """Random-order stream of g's edges plus decoy non-edges that are inserted and later deleted.

    The number of decoys is ``decoy_fraction * m`` (capped by the number of
    non-edges); the final graph of the stream is g.
    """
    rng = derive_rng(seed, SEED_STREAM_ORDER)
    wanted = int(round(decoy_fraction * g.m))
    decoys: set = set()
    capacity = g.n * (g.n - 1) // (1 if g.directed else 2) - g.m
    wanted = min(wanted, capacity)
    while len(decoys) < wanted:
        u, v = (int(x) for x in rng.choice(g.n, size=2, replace=False))
        edge: Edge = (u, v) if g.directed else (min(u, v), max(u, v))
        if edge not in g.edges:
            decoys.add(edge)

    events: List[StreamEvent] = []
    keys: List[float] = []
    for u, v in g.sorted_edges():
        events.append(insert(u, v))
        keys.append(float(rng.random()))
    for u, v in sorted(decoys):
        start = float(rng.random())
        events.append(insert(u, v))
        keys.append(start)
        events.append(delete(u, v))
        keys.append(start + float(rng.random()) * (1.0 - start))
    order = np.argsort(np.asarray(keys), kind="stable")
    return EventStream(g.n, g.directed, tuple(events[i] for i in order))
