"""
Cayley graphs of explicit groups, Aut(G, S), and the normal-Cayley checks.

Vertices of Cay(G, S) are the elements of G in canonical order; x is joined
to sx for every s in S, so right multiplications R(g) are automorphisms.
"""
from __future__ import annotations

from collections.abc import Iterable, Sequence

import structlog

from hatgraphs.config import settings
from hatgraphs.core.automorphisms import graph_automorphism_group
from hatgraphs.core.elements import ElementSet, enumerate_elements
from hatgraphs.core.graphs import Graph
from hatgraphs.core.groups import PermutationGroup
from hatgraphs.core.permutations import Permutation
from hatgraphs.core.presentations import regular_rep_from_multiplication
from hatgraphs.exceptions import BudgetExceededError, FalsificationError, OverCapError, PreconditionError
from hatgraphs.models.reports import CayleyNormalityReport

logger = structlog.get_logger(__name__)

AUT_STABILIZING_LIMIT = 2**12


def _connection_set(elements: ElementSet, connection: Iterable[Permutation]) -> frozenset[Permutation]:
    s = frozenset(connection)
    if any(x not in elements for x in s):
        raise PreconditionError("S is not contained in the group")
    if elements.identity() in s:
        raise PreconditionError("S contains the identity")
    if any(x.inverse() not in s for x in s):
        raise PreconditionError("S is not closed under inverses")
    return s


def cayley_graph(elements: ElementSet, connection: Iterable[Permutation]) -> Graph:
    s = _connection_set(elements, connection)
    ordered = elements.ordered()
    edges = [(i, elements.index(t * x)) for i, x in enumerate(ordered) for t in s]
    graph = Graph.from_edges(len(ordered), edges)
    logger.debug("cayley_graph_built", vertices=graph.vertex_count, valency=len(s))
    return graph


def generating_sequence(elements: ElementSet, preferred: Sequence[Permutation] = ()) -> list[Permutation]:
    generators: list[Permutation] = []
    generated = ElementSet([elements.identity()], elements.degree, elements.cap)
    for x in [*preferred, *elements.ordered()]:
        if len(generated) == len(elements):
            break
        if x not in generated:
            generators.append(x)
            generated = ElementSet.from_generators(generators, elements.degree, elements.cap)
    return generators


def aut_stabilizing_set(elements: ElementSet, connection: Iterable[Permutation]) -> PermutationGroup:
    """Aut(G, S) acting on the canonical positions of the elements of G.

    Generator images are chosen by backtracking among elements of the same
    order, keeping S-membership; each complete choice is extended along the
    right Cayley graph of the generators and kept only if it is a well defined
    bijective homomorphism mapping S onto S.
    """
    if len(elements) > AUT_STABILIZING_LIMIT:
        raise OverCapError(len(elements), AUT_STABILIZING_LIMIT)
    s = _connection_set(elements, connection)
    ordered = elements.ordered()
    generators = generating_sequence(elements, sorted(s))
    if not generators:
        return PermutationGroup.trivial(1)

    by_order: dict[tuple[int, bool], list[Permutation]] = {}
    for x in ordered:
        by_order.setdefault((x.order(), x in s), []).append(x)
    choices = [by_order.get((g.order(), g in s), []) for g in generators]
    identity = elements.identity()
    budget = settings.AUTOMORPHISM_NODE_BUDGET
    nodes = 0

    def extend(images: list[Permutation]) -> dict[Permutation, Permutation] | None:
        mapping = {identity: identity}
        frontier = [identity]
        for x in frontier:
            for g, image in zip(generators, images):
                y, target = x * g, mapping[x] * image
                known = mapping.get(y)
                if known is None:
                    mapping[y] = target
                    frontier.append(y)
                elif known != target:
                    return None
        if len(set(mapping.values())) != len(ordered):
            return None
        if any(mapping[x] not in s for x in s):
            return None
        return mapping

    found: list[Permutation] = []

    def walk(images: list[Permutation]) -> None:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceededError(f"Aut(G, S) search exceeded {budget} nodes")
        depth = len(images)
        if depth == len(generators):
            mapping = extend(images)
            if mapping is not None:
                found.append(Permutation([elements.index(mapping[x]) for x in ordered]))
            return
        for candidate in choices[depth]:
            if candidate in images:
                continue
            walk([*images, candidate])

    walk([])
    automorphisms = ElementSet(found, len(ordered), cap=max(len(found), 1))
    logger.info("aut_stabilizing_set", group_order=len(ordered), connection_size=len(s), order=len(found))
    return automorphisms.as_group(generating_sequence(automorphisms))


def cayley_normality_report(
    elements: ElementSet, connection: Iterable[Permutation], strict: bool = False
) -> CayleyNormalityReport:
    """Aut(Cay(G, S)) against R(G) and Aut(G, S).

    The normalizer of R(G) is R(G) times its identity stabilizer, whose
    members are exactly the stabilizer elements normalizing R(G).
    """
    s = _connection_set(elements, connection)
    graph = cayley_graph(elements, s)
    aut = graph_automorphism_group(graph)
    regular = PermutationGroup(
        regular_rep_from_multiplication(elements, generating_sequence(elements)), len(elements), known_order=len(elements)
    )
    aut_gs = aut_stabilizing_set(elements, s)

    # the identity is first in canonical order
    stabilizer = aut.point_stabilizer(1)
    normalizing = [
        sigma
        for sigma in enumerate_elements(stabilizer, cap=settings.MAX_ELEMENTS)
        if all(regular.contains(r.conjugate(sigma)) for r in regular.generators)
    ]
    normalizer_order = len(elements) * len(normalizing)
    neighbourhood = graph.neighbours(0)
    faithful = sum(1 for sigma in normalizing if all(sigma.images[u] == u for u in neighbourhood)) == 1

    report = CayleyNormalityReport(
        group_order=len(elements),
        connection_set_size=len(s),
        aut_order=aut.order(),
        regular_normal=aut.is_normal(regular),
        aut_group_s_order=aut_gs.order(),
        normalizer_order=normalizer_order,
        normalizer_matches=normalizer_order == len(elements) * aut_gs.order(),
        stabilizer_faithful_on_neighbourhood=faithful,
    )
    logger.info("cayley_normality", aut_order=report.aut_order, regular_normal=report.regular_normal)
    for check, holds in (("normalizer_order", report.normalizer_matches), ("stabilizer_faithful", faithful)):
        if not holds:
            logger.critical("cayley_check_failed", check=check)
            if strict:
                raise FalsificationError(check)
    return report
