import networkx as nx
import pytest
from pydantic import ValidationError

from hatgraphs.core.elements import ElementSet
from hatgraphs.core.graphs import Graph, materialize_coset_graph
from hatgraphs.exceptions import IndexOverCapError, PreconditionError
from tests.helpers import cycle_graph, perm


def test_from_edges_collapses_repeats():
    graph = Graph.from_edges(3, [(0, 1), (1, 0), (1, 2)])
    assert graph.adjacency == ((1,), (0, 2), (1,))
    assert graph.edges() == [(0, 1), (1, 2)]
    assert len(graph.arcs()) == 4
    assert graph.edge_count == 2
    assert graph.valency is None
    assert graph.is_connected


def test_rejects_loops_and_asymmetric_rows():
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(1, 1)])
    with pytest.raises(ValidationError):
        Graph(vertex_count=2, adjacency=((1,), ()))
    with pytest.raises(ValidationError):
        Graph(vertex_count=2, adjacency=((1, 1), (0,)))


def test_networkx_conversion(petersen):
    assert petersen.vertex_count == 10
    assert petersen.valency == 3
    back = petersen.to_networkx()
    assert nx.is_isomorphic(back, nx.petersen_graph())


def test_disconnected():
    graph = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert not graph.is_connected


def test_is_automorphism():
    hexagon = cycle_graph(6)
    rotation = perm("(1 2 3 4 5 6)", 6)
    assert hexagon.is_automorphism(rotation)
    assert not hexagon.is_automorphism(perm("(1 2)", 6))
    assert not hexagon.is_automorphism(perm("(1 2)", 5))


def test_coset_graph_of_s3_is_a_triangle(s3):
    subgroup = ElementSet.from_generators([perm("(1 2)", 3)])
    coset = materialize_coset_graph(s3, subgroup, perm("(1 2 3)", 3))
    assert coset.graph.vertex_count == 3
    assert coset.graph.valency == 2
    assert coset.double_cosets_equal
    assert coset.intersection_index == 2
    assert coset.expected_valency == 2
    assert coset.labels[0].is_identity()
    assert all(coset.graph.is_automorphism(g) for g in coset.action.generators)


def test_coset_graph_preconditions(s3):
    subgroup = ElementSet.from_generators([perm("(1 2)", 3)])
    with pytest.raises(PreconditionError):
        materialize_coset_graph(s3, subgroup, perm("(1 2)", 3))
    with pytest.raises(PreconditionError):
        materialize_coset_graph(s3.subgroup([perm("(1 2 3)", 3)]), ElementSet([perm("()", 3)], 3), perm("(1 2)", 3))
    with pytest.raises(IndexOverCapError):
        materialize_coset_graph(s3, subgroup, perm("(1 2 3)", 3), max_vertices=2)
