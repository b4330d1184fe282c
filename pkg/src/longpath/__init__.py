"""
Streaming longest-path approximation
One-pass edge sampling with core peeling, an exact oracle, and generators for the hard instances
"""

from .graph_core import Graph, PathWitness, build_graph, validate_path
from .pathfinder import exact_longest_path, extract_path_from_sample
from .processor import RunReport, StreamRunner, hybrid_run, run_semi_streaming
from .stream_model import EventStream, apply_stream, graph_to_stream

__all__ = [
    "EventStream",
    "Graph",
    "PathWitness",
    "RunReport",
    "StreamRunner",
    "apply_stream",
    "build_graph",
    "exact_longest_path",
    "extract_path_from_sample",
    "graph_to_stream",
    "hybrid_run",
    "run_semi_streaming",
    "validate_path",
]
