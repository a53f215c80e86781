import networkx as nx
import pytest

from hatgraphs.core.graphs import Graph
from hatgraphs.core.groups import PermutationGroup
from hatgraphs.core.permutations import Permutation
from hatgraphs.core.quotients import classify_basic, normal_quotient, reduce_to_basic, transitivity_report
from hatgraphs.exceptions import PreconditionError
from tests.helpers import cycle_graph, dihedral_on_cycle, involutive_multipliers, metacyclic_cayley, rotation_power


@pytest.fixture
def k44_half_arc() -> tuple[Graph, PermutationGroup]:
    """Cay(Z8, {1, 3, 5, 7}) = K_{4,4} with Z8 and the multiplication by 3."""
    graph = Graph.from_edges(8, [(i, (i + s) % 8) for i in range(8) for s in (1, 3)])
    group = PermutationGroup([Permutation([(i + 1) % 8 for i in range(8)]), Permutation([3 * i % 8 for i in range(8)])])
    return graph, group


def test_full_automorphism_group_of_petersen(petersen):
    report = transitivity_report(petersen)
    assert report.group_used == "full_automorphism_group"
    assert report.group_order == 120
    assert report.arc_transitive
    assert not report.hat
    assert report.stabilizer_order == 12


def test_rotations_of_a_cycle_are_half_arc_transitive():
    report = transitivity_report(cycle_graph(6), rotation_power(6, 1), strict=True)
    assert report.vertex_transitive and report.edge_transitive
    assert report.hat
    assert report.arc_orbit_sizes == [6, 6]
    assert report.stabilizer_order == 1
    assert report.stabilizer_concentric is None


def test_tetravalent_half_arc_transitive_action(k44_half_arc):
    graph, group = k44_half_arc
    report = transitivity_report(graph, group, strict=True)
    assert graph.valency == 4
    assert report.group_order == 16
    assert report.hat
    assert report.arc_orbit_sizes == [16, 16]
    assert report.stabilizer_order == 2
    assert report.stabilizer_concentric
    assert report.stabilizer_elementary_abelian


SOLVABLE_HALF_ARC = involutive_multipliers(64)


def test_enough_solvable_half_arc_transitive_actions():
    assert len(SOLVABLE_HALF_ARC) >= 50


@pytest.mark.parametrize(("n", "k"), SOLVABLE_HALF_ARC)
def test_solvable_stabilizers_are_elementary_abelian(n, k):
    graph, group = metacyclic_cayley(n, k)
    # strict: a stabilizer that is not elementary abelian raises
    report = transitivity_report(graph, group, strict=True)
    assert graph.valency == 4
    assert report.hat
    assert report.group_order == 2 * n
    assert report.stabilizer_elementary_abelian
    assert report.stabilizer_concentric
    assert group.is_solvable()


def test_group_must_act_on_the_graph():
    with pytest.raises(PreconditionError):
        transitivity_report(cycle_graph(6), PermutationGroup([Permutation([1, 0, 2, 3, 4, 5])]))
    with pytest.raises(PreconditionError):
        transitivity_report(cycle_graph(6), rotation_power(5, 1))


def test_hexagon_modulo_antipodal_map_is_a_triangle():
    quotient = normal_quotient(cycle_graph(6), dihedral_on_cycle(6), rotation_power(6, 3))
    result = quotient.result
    assert result.quotient_vertices == 3
    assert result.orbit_partition == [[1, 4], [2, 5], [3, 6]]
    assert result.quotient_valency == 2
    assert result.is_normal_cover
    assert result.n_semiregular
    assert not result.degenerate
    assert nx.is_isomorphic(quotient.graph.to_networkx(), nx.cycle_graph(3))
    assert quotient.orbit_of == [0, 1, 2, 0, 1, 2]


def test_transitive_normal_subgroup_is_degenerate():
    result = normal_quotient(cycle_graph(6), dihedral_on_cycle(6), rotation_power(6, 1)).result
    assert result.quotient_vertices == 1
    assert result.quotient_valency == 0
    assert result.degenerate
    assert not result.is_normal_cover


def test_quotient_preconditions():
    reflection = PermutationGroup([Permutation([(-i) % 6 for i in range(6)])])
    with pytest.raises(PreconditionError):
        normal_quotient(cycle_graph(6), dihedral_on_cycle(6), reflection)
    two_triangles = Graph.from_networkx(nx.disjoint_union(nx.cycle_graph(3), nx.cycle_graph(3)))
    rotations = PermutationGroup([Permutation([1, 2, 0, 4, 5, 3])])
    with pytest.raises(PreconditionError):
        normal_quotient(two_triangles, rotations, rotations)


def test_half_arc_quotient_drops_valency(k44_half_arc):
    graph, group = k44_half_arc
    result = normal_quotient(graph, group, rotation_power(8, 4), strict=True).result
    assert result.quotient_vertices == 4
    assert result.quotient_valency == 2
    assert not result.is_normal_cover
    assert result.g_solvable
    assert not result.solvable_lemma_applies


def test_quasiprimitive(k4):
    report = classify_basic(k4, PermutationGroup.symmetric(4))
    assert report.outcome == "quasiprimitive"
    assert [n.order for n in report.normal_subgroups] == [4]


def test_bi_quasiprimitive_square():
    report = classify_basic(cycle_graph(4), dihedral_on_cycle(4))
    assert report.outcome == "bi_quasiprimitive"
    assert report.aut_clause.status == "verified"


def test_cycle_type():
    report = classify_basic(cycle_graph(10), dihedral_on_cycle(10))
    assert report.outcome == "cycle_type"
    assert report.cycle_length == 5
    assert report.witness.order == 2


def test_not_basic(k44_half_arc):
    graph, group = k44_half_arc
    report = classify_basic(graph, group, candidates=[rotation_power(8, 4)])
    assert report.relative_to_supplied_list
    assert report.outcome == "cycle_type"
    assert report.cycle_length == 4
    assert report.socle_check is None

    cube = Graph.from_networkx(nx.hypercube_graph(3))
    antipodal = Permutation([7 - i for i in range(8)])
    aut = PermutationGroup([*_cube_generators(), antipodal])
    report = classify_basic(cube, aut, candidates=[PermutationGroup([antipodal])])
    assert report.outcome == "not_basic"
    assert report.witness.quotient_valency == 3


def _cube_generators() -> list[Permutation]:
    # vertices of Q3 as 3-bit strings, ordered as networkx sorts the tuples
    flips = [Permutation([v ^ bit for v in range(8)]) for bit in (1, 2, 4)]
    swap = Permutation([((v & 1) << 1) | ((v & 2) >> 1) | (v & 4) for v in range(8)])
    return [*flips, swap]


def test_reduce_hexagon():
    reduction = reduce_to_basic(cycle_graph(6), dihedral_on_cycle(6))
    assert reduction.report.n_order == 2
    assert reduction.report.quotient_vertices == 3
    assert reduction.report.quotient_valency == 2
    assert reduction.report.induced_group_order == 6
    assert reduction.report.kernel_semiregular
    assert reduction.quotient.vertex_count == 3


def test_basic_half_arc_action_reduces_to_itself(k44_half_arc):
    graph, group = k44_half_arc
    reduction = reduce_to_basic(graph, group, strict=True)
    assert reduction.report.n_order == 1
    assert reduction.report.quotient_vertices == 8
    assert reduction.report.quotient_valency == 4
    assert reduction.report.quotient_hat
    assert reduction.report.induced_group_order == 16
