"""
Simple undirected graphs and coset graphs.

Vertices are 0-based internally; files and reports use 1-based numbering.
"""
from __future__ import annotations

from collections.abc import Iterable
from functools import cached_property

import networkx as nx
import structlog
from pydantic import BaseModel, ConfigDict, model_validator

from hatgraphs.config import settings
from hatgraphs.core.elements import ElementSet, coset_key, double_cosets_equal, index_of_self_intersection, right_coset_action
from hatgraphs.core.groups import PermutationGroup
from hatgraphs.core.permutations import Permutation
from hatgraphs.exceptions import FalsificationError, PreconditionError

logger = structlog.get_logger(__name__)


class Graph(BaseModel):
    model_config = ConfigDict(frozen=True)

    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]

    @model_validator(mode="after")
    def _check_simple(self) -> Graph:
        if len(self.adjacency) != self.vertex_count:
            raise ValueError(f"{len(self.adjacency)} adjacency rows for {self.vertex_count} vertices")
        for v, row in enumerate(self.adjacency):
            if list(row) != sorted(set(row)):
                raise ValueError(f"neighbours of vertex {v + 1} are not sorted and distinct")
            for u in row:
                if not 0 <= u < self.vertex_count:
                    raise ValueError(f"vertex {v + 1} has out-of-range neighbour {u + 1}")
                if u == v:
                    raise ValueError(f"loop at vertex {v + 1}")
                if v not in self.adjacency[u]:
                    raise ValueError(f"edge {v + 1}-{u + 1} is not symmetric")
        return self

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]]) -> Graph:
        """Build from 0-based edges; repeated edges collapse."""
        rows: list[set[int]] = [set() for _ in range(vertex_count)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u + 1}")
            rows[u].add(v)
            rows[v].add(u)
        return cls(vertex_count=vertex_count, adjacency=tuple(tuple(sorted(row)) for row in rows))

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> Graph:
        nodes = sorted(graph.nodes)
        index = {node: i for i, node in enumerate(nodes)}
        return cls.from_edges(len(nodes), ((index[u], index[v]) for u, v in graph.edges))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.vertex_count))
        graph.add_edges_from(self.edges())
        return graph

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, row in enumerate(self.adjacency) for v in row if u < v]

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u, row in enumerate(self.adjacency) for v in row]

    @property
    def edge_count(self) -> int:
        return sum(len(row) for row in self.adjacency) // 2

    @property
    def valency(self) -> int | None:
        degrees = {len(row) for row in self.adjacency}
        return degrees.pop() if len(degrees) == 1 else None

    @property
    def is_connected(self) -> bool:
        return self.vertex_count > 0 and nx.is_connected(self.to_networkx())

    def is_automorphism(self, perm: Permutation) -> bool:
        if perm.degree != self.vertex_count:
            return False
        images = perm.images
        return all(
            sorted(images[u] for u in row) == list(self.adjacency[images[v]]) for v, row in enumerate(self.adjacency)
        )


class CosetGraph(BaseModel):
    """Cos(G, H, H{g, g^-1}H) with its coset transversal and the induced action of G."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    graph: Graph
    subgroup: ElementSet
    labels: tuple[Permutation, ...]
    action: PermutationGroup
    double_cosets_equal: bool
    intersection_index: int

    @property
    def expected_valency(self) -> int:
        return self.intersection_index * (1 if self.double_cosets_equal else 2)

    @cached_property
    def numbering(self) -> dict[Permutation, int]:
        return {coset_key(self.subgroup, x): i for i, x in enumerate(self.labels)}

    def induced(self, x: Permutation) -> Permutation:
        """The permutation Hy -> Hyx of the vertices."""
        numbering = self.numbering
        return Permutation([numbering[coset_key(self.subgroup, y * x)] for y in self.labels])

    def induced_group(self, group: PermutationGroup) -> PermutationGroup:
        """Image of a subgroup of G in the coset action; the order is carried over, so the action must be faithful."""
        return PermutationGroup([self.induced(g) for g in group.generators], self.graph.vertex_count, known_order=group.order())


def materialize_coset_graph(
    group: PermutationGroup, subgroup: ElementSet, g: Permutation, max_vertices: int | None = None
) -> CosetGraph:
    """Vertices are the right cosets Hx, discovered breadth-first from H.

    The neighbours of Hx are the cosets H g h x and H g^-1 h x for h in H.
    """
    if g in subgroup:
        raise PreconditionError("g lies in H; the coset graph would have loops")
    if not group.contains(g):
        raise PreconditionError("g does not lie in G")
    if not subgroup.is_subset(group):
        raise PreconditionError("H is not a subgroup of G")
    max_vertices = max_vertices if max_vertices is not None else settings.MAX_VERTICES
    representatives, actions = right_coset_action(subgroup, group, max_vertices)
    numbering = {coset_key(subgroup, x): i for i, x in enumerate(representatives)}

    g_inv = g.inverse()
    ordered = subgroup.ordered()
    rows: list[set[int]] = []
    for x in representatives:
        rows.append({numbering[coset_key(subgroup, d * h * x)] for d in (g, g_inv) for h in ordered})
    graph = Graph(vertex_count=len(representatives), adjacency=tuple(tuple(sorted(row)) for row in rows))

    coset_graph = CosetGraph(
        graph=graph,
        subgroup=subgroup,
        labels=tuple(representatives),
        action=PermutationGroup(actions, len(representatives)),
        double_cosets_equal=double_cosets_equal(subgroup, g),
        intersection_index=index_of_self_intersection(subgroup, g),
    )
    valency = graph.valency
    logger.info("coset_graph_built", vertices=graph.vertex_count, valency=valency, edges=graph.edge_count)
    if valency != coset_graph.expected_valency:
        logger.critical("coset_valency_mismatch", valency=valency, expected=coset_graph.expected_valency)
        raise FalsificationError("valency_formula", f"valency {valency}, formula {coset_graph.expected_valency}")
    return coset_graph
