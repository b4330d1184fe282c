"""Edge streams for the insertion-only and insertion-deletion models."""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Iterator, Optional, Tuple

from .constants import MULTIPLICITY_EXPONENT, SEED_STREAM_ORDER
from .exceptions import StreamError, Violation
from .graph_core import Edge, Graph, build_graph, canonical_edge
from .settings import derive_rng


class EventKind(str, Enum):
    INSERT = "+"
    DELETE = "-"


@dataclass(frozen=True)
class StreamEvent:
    """One edge insertion or deletion; (u, v) is tail -> head when directed."""

    kind: EventKind
    u: int
    v: int

    @property
    def sign(self) -> int:
        return 1 if self.kind is EventKind.INSERT else -1

    def edge(self, directed: bool) -> Edge:
        return canonical_edge(self.u, self.v, directed)


def insert(u: int, v: int) -> StreamEvent:
    return StreamEvent(EventKind.INSERT, u, v)


def delete(u: int, v: int) -> StreamEvent:
    return StreamEvent(EventKind.DELETE, u, v)


@dataclass(frozen=True)
class EventStream:
    """Ordered events over the vertex set [0, n)."""

    n: int
    directed: bool
    events: Tuple[StreamEvent, ...]

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[StreamEvent]:
        return iter(self.events)

    @property
    def is_insertion_only(self) -> bool:
        return all(event.kind is EventKind.INSERT for event in self.events)

    def extended(self, events: Iterable[StreamEvent]) -> "EventStream":
        return EventStream(self.n, self.directed, self.events + tuple(events))


def graph_to_stream(g: Graph, order: str = "natural", seed: Optional[int] = None) -> EventStream:
    """One insert per edge, in sorted order or in a seeded uniformly random order."""
    edges = g.sorted_edges()
    if order == "random":
        if seed is None:
            raise ValueError("random order requires a seed")
        permutation = derive_rng(seed, SEED_STREAM_ORDER).permutation(len(edges))
        edges = [edges[i] for i in permutation]
    elif order != "natural":
        raise ValueError(f"Unsupported stream order: {order}")
    return EventStream(g.n, g.directed, tuple(insert(u, v) for u, v in edges))


def _check_event(s: EventStream, index: int, event: StreamEvent) -> Optional[Violation]:
    if not (0 <= event.u < s.n and 0 <= event.v < s.n):
        return Violation("invalid-edge", index, f"edge ({event.u}, {event.v}) outside [0, {s.n})")
    if event.u == event.v:
        return Violation("invalid-edge", index, f"self-loop at vertex {event.u}")
    return None


def validate_stream(s: EventStream, c: int = MULTIPLICITY_EXPONENT) -> Optional[Violation]:
    """Check every prefix: multiplicities stay in [0, n^c]. Returns the first violation."""
    bound = s.n**c
    multiplicity: Dict[Edge, int] = {}
    for index, event in enumerate(s.events):
        violation = _check_event(s, index, event)
        if violation:
            return violation
        edge = event.edge(s.directed)
        count = multiplicity.get(edge, 0) + event.sign
        if count < 0:
            return Violation("negative-multiplicity", index, f"edge {edge} deleted before insertion")
        if count > bound:
            return Violation("multiplicity-bound", index, f"edge {edge} multiplicity {count} exceeds n^{c} = {bound}")
        multiplicity[edge] = count
    return None


def net_multiplicities(s: EventStream) -> Dict[Edge, int]:
    """Final multiplicity of every edge with a positive count."""
    multiplicity: Dict[Edge, int] = {}
    for index, event in enumerate(s.events):
        violation = _check_event(s, index, event)
        if violation:
            raise StreamError(violation.detail, index)
        edge = event.edge(s.directed)
        count = multiplicity.get(edge, 0) + event.sign
        if count < 0:
            raise StreamError(f"edge {edge} deleted before insertion at event {index}", index)
        multiplicity[edge] = count
    return {edge: count for edge, count in multiplicity.items() if count > 0}


def apply_stream(s: EventStream) -> Graph:
    """Graph of the edges whose final multiplicity is at least one."""
    return build_graph(s.n, net_multiplicities(s).keys(), s.directed)
