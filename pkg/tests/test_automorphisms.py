import random

import networkx as nx
import pytest
from networkx.algorithms.isomorphism import GraphMatcher

from hatgraphs.core.automorphisms import graph_automorphism_group, refine, target_cell
from hatgraphs.core.graphs import Graph
from hatgraphs.exceptions import BudgetExceededError
from tests.helpers import cycle_graph


def brute_force_order(graph: Graph) -> int:
    g = graph.to_networkx()
    return sum(1 for _ in GraphMatcher(g, g).isomorphisms_iter())


@pytest.mark.parametrize(
    "graph, order",
    [
        (cycle_graph(4), 8),
        (cycle_graph(7), 14),
        (Graph.from_networkx(nx.complete_graph(4)), 24),
        (Graph.from_networkx(nx.petersen_graph()), 120),
        (Graph.from_networkx(nx.hypercube_graph(3)), 48),
        (Graph.from_networkx(nx.complete_bipartite_graph(3, 3)), 72),
        (Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)]), 2),
    ],
)
def test_known_orders(graph, order):
    group = graph_automorphism_group(graph)
    assert group.order() == order
    assert all(graph.is_automorphism(g) for g in group.generators)


def test_empty_and_edgeless_graphs():
    assert graph_automorphism_group(Graph(vertex_count=0, adjacency=())).order() == 1
    assert graph_automorphism_group(Graph.from_edges(4, [])).order() == 24


def test_refinement_separates_degrees():
    path = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    colours, trace = refine(path, (0, 0, 0, 0))
    assert colours[0] == colours[3] != colours[1] == colours[2]
    assert trace[0] == (2, 2)
    assert target_cell(colours) in ([0, 3], [1, 2])
    assert target_cell((0, 1, 2)) is None


def test_budgets(petersen):
    with pytest.raises(BudgetExceededError):
        graph_automorphism_group(petersen, budget=5)
    with pytest.raises(BudgetExceededError):
        graph_automorphism_group(petersen, node_budget=1)


@pytest.mark.parametrize("seed", range(60))
def test_matches_brute_force_on_random_graphs(seed):
    rng = random.Random(seed)
    graph = Graph.from_networkx(nx.gnp_random_graph(rng.randint(3, 7), 0.5, seed=seed))
    assert graph_automorphism_group(graph).order() == brute_force_order(graph)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(500))
def test_matches_brute_force_on_larger_random_graphs(seed):
    rng = random.Random(seed)
    graph = Graph.from_networkx(nx.gnp_random_graph(rng.randint(8, 10), rng.choice([0.3, 0.5, 0.7]), seed=seed))
    assert graph_automorphism_group(graph).order() == brute_force_order(graph)
