"""
Automorphism groups of small graphs by individualization and refinement.

Colours are refined until equitable: a vertex's new colour is its old colour
with the sorted colours of its neighbours, renumbered in sorted order. The
first path down the search tree fixes a base; at each level every vertex of
the target cell not already in the orbit of the generators found so far is
tried as an image of the base point. The group order is the product of the
orbit lengths along the base.
"""
from __future__ import annotations

from collections import Counter

import structlog

from hatgraphs.config import settings
from hatgraphs.core.graphs import Graph
from hatgraphs.core.groups import PermutationGroup
from hatgraphs.core.permutations import Permutation
from hatgraphs.exceptions import BudgetExceededError

logger = structlog.get_logger(__name__)

Colouring = tuple[int, ...]


def refine(graph: Graph, colours: Colouring) -> tuple[Colouring, tuple[tuple[int, ...], ...]]:
    """Equitable refinement of ``colours`` with the trace of cell sizes per round."""
    cells = len(set(colours))
    trace = []
    while True:
        tokens = [(colours[v], tuple(sorted(colours[u] for u in row))) for v, row in enumerate(graph.adjacency)]
        ranking = {token: i for i, token in enumerate(sorted(set(tokens)))}
        colours = tuple(ranking[token] for token in tokens)
        sizes = Counter(colours)
        trace.append(tuple(sizes[c] for c in range(len(ranking))))
        if len(ranking) == cells:
            return colours, tuple(trace)
        cells = len(ranking)


def individualize(graph: Graph, colours: Colouring, v: int) -> tuple[Colouring, tuple[tuple[int, ...], ...]]:
    return refine(graph, tuple(2 * c + (u == v) for u, c in enumerate(colours)))


def target_cell(colours: Colouring) -> list[int] | None:
    """The smallest non-singleton cell, ties broken by colour; None when discrete."""
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colours):
        cells.setdefault(c, []).append(v)
    candidates = [(len(members), c) for c, members in cells.items() if len(members) > 1]
    if not candidates:
        return None
    return cells[min(candidates)[1]]


class _Search:
    def __init__(self, graph: Graph, budget: int):
        self.graph = graph
        self.budget = budget
        self.nodes = 0

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceededError(f"automorphism search exceeded {self.budget} nodes")

    def leaf(self, left: Colouring, right: Colouring) -> Permutation | None:
        where = {c: v for v, c in enumerate(right)}
        perm = Permutation([where[c] for c in left])
        return perm if self.graph.is_automorphism(perm) else None

    def extend(self, left: Colouring, right: Colouring) -> Permutation | None:
        self._tick()
        cell = target_cell(left)
        if cell is None:
            return self.leaf(left, right)
        v = cell[0]
        colour = left[v]
        left_next, left_trace = individualize(self.graph, left, v)
        for w in (u for u, c in enumerate(right) if c == colour):
            right_next, right_trace = individualize(self.graph, right, w)
            if right_trace != left_trace:
                continue
            found = self.extend(left_next, right_next)
            if found is not None:
                return found
        return None


def _orbit(point: int, generators: list[Permutation]) -> set[int]:
    seen = {point}
    frontier = [point]
    for p in frontier:
        for g in generators:
            q = g.images[p]
            if q not in seen:
                seen.add(q)
                frontier.append(q)
    return seen


def graph_automorphism_group(
    graph: Graph, budget: int | None = None, node_budget: int | None = None
) -> PermutationGroup:
    """Aut(graph) acting on the 0-based vertices, every generator checked against the adjacency."""
    budget = budget if budget is not None else settings.MAX_VERTICES
    node_budget = node_budget if node_budget is not None else settings.AUTOMORPHISM_NODE_BUDGET
    n = graph.vertex_count
    if n > budget:
        logger.warning("automorphism_budget_refused", vertices=n, budget=budget)
        raise BudgetExceededError(f"{n} vertices exceeds the budget of {budget}")
    if n == 0:
        return PermutationGroup.trivial(1)

    search = _Search(graph, node_budget)
    colours, _ = refine(graph, (0,) * n)
    path = []
    while (cell := target_cell(colours)) is not None:
        path.append((colours, cell))
        colours, _ = individualize(graph, colours, cell[0])

    generators: list[Permutation] = []
    orbit_lengths = []
    # deepest level first, so generators fixing longer prefixes are known
    for depth in reversed(range(len(path))):
        colours, cell = path[depth]
        v = cell[0]
        prefix = [c[0] for _, c in path[:depth]]
        stabilizing = [g for g in generators if all(g.images[u] == u for u in prefix)]
        orbit = _orbit(v, stabilizing)
        left, left_trace = individualize(graph, colours, v)
        for w in cell[1:]:
            if w in orbit:
                continue
            right, right_trace = individualize(graph, colours, w)
            found = search.extend(left, right) if right_trace == left_trace else None
            if found is not None:
                generators.append(found)
                stabilizing.append(found)
                orbit = _orbit(v, stabilizing)
        orbit_lengths.append(len(orbit))

    order = 1
    for length in orbit_lengths:
        order *= length
    logger.info("automorphism_group", vertices=n, order=order, generators=len(generators), nodes=search.nodes)
    return PermutationGroup(generators, n, known_order=order)
