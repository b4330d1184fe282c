"""Text formats for graphs, paths and event streams."""

import json
import re
from pathlib import Path
from typing import Any, Dict, Iterable, List, Tuple, Union

from .constants import GRAPH_HEADER, STREAM_HEADER
from .exceptions import FormatError
from .graph_core import Graph, PathWitness, build_graph
from .stream_model import EventKind, EventStream, StreamEvent

PathLike = Union[str, Path]

_HEADER = re.compile(r"^(# \w+) directed=([01]) n=(\d+)$")


def parse_header(line: str, expected: str, line_number: int = 1) -> Tuple[bool, int]:
    """Parse ``<expected> directed=<0|1> n=<n>`` into (directed, n)."""
    match = _HEADER.match(line.strip())
    if not match or match.group(1) != expected:
        raise FormatError(f"expected header '{expected} directed=<0|1> n=<n>', got {line.strip()!r}", line_number)
    return match.group(2) == "1", int(match.group(3))


def parse_pair(fields: List[str], line_number: int) -> Tuple[int, int]:
    if len(fields) != 2:
        raise FormatError(f"expected two vertex ids, got {' '.join(fields)!r}", line_number)
    try:
        return int(fields[0]), int(fields[1])
    except ValueError:
        raise FormatError(f"vertex ids must be integers, got {' '.join(fields)!r}", line_number)


def format_graph(g: Graph) -> str:
    lines = [f"{GRAPH_HEADER} directed={int(g.directed)} n={g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty graph file", 1)
    directed, n = parse_header(lines[0], GRAPH_HEADER)
    edges = []
    for line_number, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        edges.append(parse_pair(line.split(), line_number))
    return build_graph(n, edges, directed)


def format_stream(s: EventStream) -> str:
    lines = [f"{STREAM_HEADER} directed={int(s.directed)} n={s.n}"]
    lines.extend(f"{event.kind.value} {event.u} {event.v}" for event in s.events)
    return "\n".join(lines) + "\n"


def parse_stream(text: str) -> EventStream:
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty stream file", 1)
    directed, n = parse_header(lines[0], STREAM_HEADER)
    events = []
    for line_number, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        fields = line.split()
        if fields[0] not in (EventKind.INSERT.value, EventKind.DELETE.value):
            raise FormatError(f"event must start with '+' or '-', got {line.strip()!r}", line_number)
        u, v = parse_pair(fields[1:], line_number)
        events.append(StreamEvent(EventKind(fields[0]), u, v))
    return EventStream(n, directed, tuple(events))


def format_path(p: PathWitness) -> str:
    return " ".join(str(v) for v in p.vertices) + "\n"


def parse_path(text: str) -> PathWitness:
    fields = text.split()
    try:
        return PathWitness(tuple(int(field) for field in fields))
    except ValueError:
        raise FormatError(f"path must list integer vertex ids, got {text.strip()!r}", 1)


def read_graph(path: PathLike) -> Graph:
    return parse_graph(Path(path).read_text(encoding="ascii"))


def write_graph(path: PathLike, g: Graph) -> None:
    Path(path).write_text(format_graph(g), encoding="ascii")


def read_stream(path: PathLike) -> EventStream:
    return parse_stream(Path(path).read_text(encoding="ascii"))


def write_stream(path: PathLike, s: EventStream) -> None:
    Path(path).write_text(format_stream(s), encoding="ascii")


def read_path(path: PathLike) -> PathWitness:
    return parse_path(Path(path).read_text(encoding="ascii"))


def write_path(path: PathLike, p: PathWitness) -> None:
    Path(path).write_text(format_path(p), encoding="ascii")


def write_edges(path: PathLike, n: int, directed: bool, edges: Iterable[Tuple[int, int]]) -> None:
    """Write an edge set (e.g. a sample F) in the graph format."""
    write_graph(path, build_graph(n, edges, directed))


def write_json(path: PathLike, document: Dict[str, Any]) -> None:
    Path(path).write_text(json.dumps(document, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def read_json(path: PathLike) -> Dict[str, Any]:
    return json.loads(Path(path).read_text(encoding="utf-8"))
