"""Unit tests for hard_instances.undirected."""

import pytest

from ..exceptions import InstanceError
from ..graph_core import PathWitness, canonical_edge, validate_path
from ..hard_instances.rs_graphs import rs_from_blocks, rs_from_matching
from ..hard_instances.undirected import decode_undirected, gen_undirected_reduction, y_position
from ..pathfinder import exact_longest_path

# ── Helpers ──────────────────────────────────────────────────────────────────

SMALL_RS = rs_from_matching(3, [(0, 3), (1, 4)])
TRANSPOSITION = (1, 0)


def _special_path(inst) -> PathWitness:
    return PathWitness(inst.special_edge)


# ── Generation ───────────────────────────────────────────────────────────────

def test_small_instance_witness_has_length_13() -> None:
    """rs(3, 2, 1), ell = 4 and N the transposition give |R| = 4 and a 13-edge witness."""
    inst = gen_undirected_reduction(SMALL_RS, [0, 1], J=1, ell=4, seed=0, rho=TRANSPOSITION)

    assert inst.longest_planted == 4
    assert inst.witness.length == 13
    assert inst.witness_bound() == 13
    assert validate_path(inst.graph, inst.witness) is None
    assert inst.graph.n == 15


def test_witness_is_a_longest_path_of_the_small_instance() -> None:
    """No path of the 15-vertex instance beats the witness."""
    inst = gen_undirected_reduction(SMALL_RS, [1, 1], J=2, ell=4, seed=3, rho=TRANSPOSITION)

    assert exact_longest_path(inst.graph).length == inst.witness.length


def test_gateway_path_is_subdivided() -> None:
    """Consecutive gateway vertices are joined by ell-edge subdivided paths."""
    inst = gen_undirected_reduction(SMALL_RS, [0, 0], J=1, ell=5, seed=1)

    assert inst.gateway.length == (3 * (3 - 2) - 1) * 5
    assert inst.gateway.vertices[::5] == (2, 5, 8)
    assert all(v >= 9 for i, v in enumerate(inst.gateway.vertices) if i % 5)


def test_alice_edges_route_by_x_xor_y() -> None:
    """Alice's copy of each RS edge lands in B1 for bit 0 and in B2 for bit 1."""
    X = [1, 0]
    inst = gen_undirected_reduction(SMALL_RS, X, J=1, seed=2)

    for j, (a, b) in enumerate(SMALL_RS.matchings[0]):
        bit = X[inst.pi[j]] ^ inst.Y[inst.pi[j]]
        expected = canonical_edge(a, b if bit == 0 else b + 3, False)
        assert expected in inst.graph.edges


def test_stream_is_insertion_only_alice_first() -> None:
    """Alice's r*t edges open the stream."""
    inst = gen_undirected_reduction(SMALL_RS, [0, 1], J=1, seed=4)

    first = {canonical_edge(e.u, e.v, False) for e in inst.stream.events[:2]}

    assert inst.stream.is_insertion_only
    assert first == set(inst.alice[0])


def test_generator_preconditions() -> None:
    """Short subdivisions, bad X, bad J and n <= r are rejected."""
    with pytest.raises(InstanceError):
        gen_undirected_reduction(SMALL_RS, [0, 1], J=1, ell=3)
    with pytest.raises(InstanceError):
        gen_undirected_reduction(SMALL_RS, [0, 1, 1], J=1)
    with pytest.raises(InstanceError):
        gen_undirected_reduction(SMALL_RS, [0, 1], J=3)
    with pytest.raises(InstanceError):
        gen_undirected_reduction(rs_from_blocks(2, 1), [0, 1], J=1)


# ── Decoding ─────────────────────────────────────────────────────────────────

def test_decoder_recovers_x_from_special_edge() -> None:
    """A path holding Alice's special edge decodes to X[J] under the pi convention."""
    for J in (1, 2):
        for X in ([0, 0], [0, 1], [1, 0], [1, 1]):
            inst = gen_undirected_reduction(SMALL_RS, X, J=J, seed=J * 10 + X[0] * 2 + X[1], rho=TRANSPOSITION)

            assert decode_undirected(inst, _special_path(inst)) == X[J - 1]


def test_decoder_fails_without_special_edge() -> None:
    """A path avoiding the special pair gives no answer."""
    inst = gen_undirected_reduction(SMALL_RS, [1, 0], J=1, seed=5, rho=TRANSPOSITION)

    assert decode_undirected(inst, inst.gateway) is None


def test_decoder_fails_when_bob_matches_the_special_pair() -> None:
    """With N the identity both copies of the special pair exist and the decoder fails."""
    inst = gen_undirected_reduction(SMALL_RS, [1, 0], J=1, seed=5, rho=(0, 1))

    assert decode_undirected(inst, _special_path(inst)) is None


def test_y_position_conventions() -> None:
    """The pi convention reads Y at J; unknown conventions are rejected."""
    inst = gen_undirected_reduction(SMALL_RS, [1, 0], J=2, seed=6)

    assert y_position(inst, "pi") == 1
    with pytest.raises(ValueError):
        y_position(inst, "sigma")
