"""Unit tests for stream_model."""

import pytest

from ..exceptions import StreamError
from ..graph_core import build_graph
from ..stream_model import (
    EventStream,
    apply_stream,
    delete,
    graph_to_stream,
    insert,
    net_multiplicities,
    validate_stream,
)

# ── graph_to_stream ──────────────────────────────────────────────────────────

def test_graph_to_stream_natural_order_is_sorted() -> None:
    """Natural order emits one insert per edge in sorted order."""
    g = build_graph(4, [(2, 3), (0, 1), (1, 2)])

    stream = graph_to_stream(g)

    assert [(e.u, e.v) for e in stream] == [(0, 1), (1, 2), (2, 3)]
    assert stream.is_insertion_only


def test_graph_to_stream_random_order_is_seeded() -> None:
    """The same seed gives the same permutation; the edge set never changes."""
    g = build_graph(30, [(i, i + 1) for i in range(29)])

    first = graph_to_stream(g, "random", seed=5)
    second = graph_to_stream(g, "random", seed=5)

    assert first == second
    assert apply_stream(first).edges == g.edges


def test_graph_to_stream_random_order_needs_seed() -> None:
    """Random order without a seed is rejected."""
    with pytest.raises(ValueError):
        graph_to_stream(build_graph(2, [(0, 1)]), "random")


# ── validate_stream ──────────────────────────────────────────────────────────

def test_validate_stream_accepts_insert_then_delete() -> None:
    """Multiplicities that never go negative are valid."""
    stream = EventStream(3, False, (insert(0, 1), insert(1, 2), delete(1, 0)))

    assert validate_stream(stream) is None


def test_validate_stream_reports_negative_prefix() -> None:
    """A deletion before the insertion is reported at its index."""
    stream = EventStream(3, False, (insert(0, 1), delete(1, 2), insert(1, 2)))

    violation = validate_stream(stream)

    assert violation.kind == "negative-multiplicity"
    assert violation.position == 1


def test_validate_stream_reports_multiplicity_bound() -> None:
    """Counts above n^c are rejected."""
    stream = EventStream(2, False, tuple(insert(0, 1) for _ in range(5)))

    violation = validate_stream(stream, c=2)

    assert violation.kind == "multiplicity-bound"
    assert violation.position == 4


def test_validate_stream_reports_invalid_edge() -> None:
    """Self-loops and out-of-range endpoints are invalid events."""
    assert validate_stream(EventStream(3, False, (insert(1, 1),))).kind == "invalid-edge"
    assert validate_stream(EventStream(3, False, (insert(0, 3),))).kind == "invalid-edge"


# ── apply_stream ─────────────────────────────────────────────────────────────

def test_apply_stream_keeps_positive_multiplicities() -> None:
    """Inserted-then-deleted edges vanish; repeated inserts count once as an edge."""
    stream = EventStream(
        4, False, (insert(0, 1), insert(0, 1), insert(2, 3), delete(3, 2), insert(1, 2), delete(0, 1))
    )

    assert net_multiplicities(stream) == {(0, 1): 1, (1, 2): 1}
    assert apply_stream(stream).edges == frozenset({(0, 1), (1, 2)})


def test_apply_stream_directed_orientations_are_distinct() -> None:
    """(u, v) and (v, u) are different directed edges."""
    stream = EventStream(2, True, (insert(0, 1), insert(1, 0), delete(0, 1)))

    assert apply_stream(stream).edges == frozenset({(1, 0)})


def test_net_multiplicities_raises_on_negative_prefix() -> None:
    """Consuming an invalid stream raises StreamError with the event index."""
    stream = EventStream(3, False, (delete(0, 1),))

    with pytest.raises(StreamError) as info:
        net_multiplicities(stream)
    assert info.value.index == 0
