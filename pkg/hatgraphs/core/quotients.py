"""
Transitivity, normal quotients and the basic-pair classification of graphs
with a group acting on their vertices.
"""
from __future__ import annotations

from collections.abc import Sequence
from typing import NamedTuple

import structlog

from hatgraphs.config import settings
from hatgraphs.core.automorphisms import graph_automorphism_group
from hatgraphs.core.concentric import find_concentric_sequence
from hatgraphs.core.elements import enumerate_elements
from hatgraphs.core.graphs import Graph
from hatgraphs.core.groups import PermutationGroup
from hatgraphs.core.permutations import Permutation
from hatgraphs.exceptions import BudgetExceededError, FalsificationError, OverCapError, PreconditionError
from hatgraphs.models.reports import (
    BasicClassification,
    BasicReduction,
    HypothesisStatus,
    NormalSubgroupSummary,
    QuotientResult,
    TransitivityReport,
)

logger = structlog.get_logger(__name__)

Pair = tuple[int, int]


def _require_action(graph: Graph, group: PermutationGroup) -> None:
    if group.degree != graph.vertex_count:
        raise PreconditionError(f"G acts on {group.degree} points, the graph has {graph.vertex_count} vertices")
    for g in group.generators:
        if not graph.is_automorphism(g):
            raise PreconditionError(f"G does not act on the graph: {g.cycle_string()} breaks adjacency")


def _pair_orbits(pairs: list[Pair], generators: Sequence[Permutation], ordered: bool) -> list[list[Pair]]:
    """Orbits on edges (``ordered`` false) or arcs, each seeded by its least pair."""
    seen: set[Pair] = set()
    orbits = []
    for seed in pairs:
        if seed in seen:
            continue
        seen.add(seed)
        orbit = [seed]
        for u, v in orbit:
            for g in generators:
                image = (g.images[u], g.images[v])
                if not ordered and image[0] > image[1]:
                    image = (image[1], image[0])
                if image not in seen:
                    seen.add(image)
                    orbit.append(image)
        orbits.append(orbit)
    return orbits


class _Orbits(NamedTuple):
    vertices: list[frozenset[int]]
    edges: list[list[Pair]]
    arcs: list[list[Pair]]

    @property
    def hat(self) -> bool:
        return len(self.vertices) == 1 and len(self.edges) == 1 and len(self.arcs) > 1


def _orbits(graph: Graph, group: PermutationGroup) -> _Orbits:
    return _Orbits(
        vertices=group.orbits(),
        edges=_pair_orbits(graph.edges(), group.generators, ordered=False),
        arcs=_pair_orbits(graph.arcs(), group.generators, ordered=True),
    )


def _is_elementary_abelian(group: PermutationGroup) -> bool:
    order = group.order()
    if order == 1:
        return True
    p = 2
    while order % p:
        p += 1
    while order % p == 0:
        order //= p
    return order == 1 and group.is_abelian() and all((g**p).is_identity() for g in group.generators)


def _stabilizer_concentric(stabilizer: PermutationGroup) -> list[Permutation] | None:
    order = stabilizer.order()
    if order == 1:
        return []
    if order & (order - 1):
        return None
    elements = enumerate_elements(stabilizer)
    sequence = find_concentric_sequence(elements, order.bit_length() - 1, jobs=settings.JOBS)
    return None if sequence is None else list(sequence.gens)


def _falsified(check: str, strict: bool, witness: object = None) -> None:
    logger.critical("graph_check_failed", check=check, witness=witness)
    if strict:
        raise FalsificationError(check, witness)


def transitivity_report(
    graph: Graph,
    group: PermutationGroup | None = None,
    strict: bool = False,
    *,
    carrier: PermutationGroup | None = None,
    stabilizer: PermutationGroup | None = None,
) -> TransitivityReport:
    """Vertex, edge and arc transitivity of G (Aut(graph) when G is omitted).

    For a tetravalent G-HAT action the stabilizer of vertex 1 is checked to
    be concentric, and elementary abelian whenever G is solvable.

    ``carrier`` is a smaller faithful representation of G on which solvability
    is decided; ``stabilizer`` is the stabilizer of vertex 1 when already known.
    """
    group_used = "supplied"
    if group is None:
        group = graph_automorphism_group(graph)
        group_used = "full_automorphism_group"
    else:
        _require_action(graph, group)
    orbits = _orbits(graph, group)
    hat = orbits.hat
    if stabilizer is None:
        stabilizer = group.point_stabilizer(1)
    elementary = _is_elementary_abelian(stabilizer)

    concentric = None
    concentric_gens = None
    if hat:
        arc_sizes = [len(orbit) for orbit in orbits.arcs]
        if arc_sizes != [graph.edge_count] * 2:
            _falsified("arc_orbits_halve", strict, arc_sizes)
        if graph.valency == 4:
            gens = _stabilizer_concentric(stabilizer)
            concentric = gens is not None
            concentric_gens = None if gens is None else [g.cycle_string() for g in gens]
            if not concentric:
                _falsified("stabilizer_concentric", strict, f"|G_v| = {stabilizer.order()}")
            structure = carrier if carrier is not None else group
            if structure.order() <= settings.DESK_ORDER_LIMIT and structure.is_solvable() and not elementary:
                _falsified("stabilizer_elementary_abelian", strict, f"|G_v| = {stabilizer.order()}")

    report = TransitivityReport(
        group_used=group_used,
        group_order=group.order(),
        vertex_count=graph.vertex_count,
        edge_count=graph.edge_count,
        vertex_transitive=len(orbits.vertices) == 1,
        edge_transitive=len(orbits.edges) == 1,
        arc_transitive=len(orbits.arcs) == 1,
        hat=hat,
        vertex_orbits=len(orbits.vertices),
        edge_orbits=len(orbits.edges),
        arc_orbits=len(orbits.arcs),
        arc_orbit_sizes=[len(orbit) for orbit in orbits.arcs],
        stabilizer_order=stabilizer.order(),
        stabilizer_generators=[g.cycle_string() for g in stabilizer.generators],
        stabilizer_concentric=concentric,
        stabilizer_concentric_generators=concentric_gens,
        stabilizer_elementary_abelian=elementary,
    )
    logger.info("transitivity_report", group_order=report.group_order, hat=hat, arc_orbits=report.arc_orbits)
    return report


class Quotient(NamedTuple):
    result: QuotientResult
    graph: Graph
    orbit_of: list[int]


def _quotient_graph(graph: Graph, orbits: list[frozenset[int]]) -> tuple[Graph, list[int]]:
    orbit_of = [0] * graph.vertex_count
    for i, orbit in enumerate(orbits):
        for point in orbit:
            orbit_of[point - 1] = i
    edges = {(orbit_of[u], orbit_of[v]) for u, v in graph.edges() if orbit_of[u] != orbit_of[v]}
    return Graph.from_edges(len(orbits), edges), orbit_of


def _solvable(group: PermutationGroup) -> bool | None:
    if group.order() > settings.DESK_ORDER_LIMIT:
        return None
    return group.is_solvable()


def normal_quotient(
    graph: Graph,
    group: PermutationGroup,
    normal: PermutationGroup,
    strict: bool = False,
    hat: bool | None = None,
    *,
    carrier: tuple[PermutationGroup, PermutationGroup] | None = None,
) -> Quotient:
    """Gamma_N on the orbits of N, with the cover and semiregularity flags.

    When G is non-solvable, N solvable and the graph tetravalent and G-HAT,
    the quotient must be a normal cover with N semiregular. Normality and
    solvability are decided on ``carrier``, a faithful copy of (G, N) on
    fewer points, when one is given.
    """
    _require_action(graph, group)
    structure, structure_normal = carrier if carrier is not None else (group, normal)
    if not structure.is_normal(structure_normal):
        raise PreconditionError("N is not a normal subgroup of G")
    if not group.is_transitive():
        raise PreconditionError("G is not vertex-transitive")
    orbits = normal.orbits()
    quotient, orbit_of = _quotient_graph(graph, orbits)
    valency = quotient.valency if quotient.valency is not None else max(len(row) for row in quotient.adjacency)
    original = graph.valency or 0
    n_solvable = _solvable(structure_normal)
    g_solvable = _solvable(structure)
    if hat is None:
        hat = _orbits(graph, group).hat
    applies = bool(hat and original == 4 and g_solvable is False and n_solvable)
    is_cover = valency == original
    n_order = normal.order()
    # semiregular exactly when every orbit has length |N|
    semiregular = all(len(orbit) == n_order for orbit in orbits)

    result = QuotientResult(
        orbit_partition=[sorted(orbit) for orbit in orbits],
        quotient_vertices=quotient.vertex_count,
        quotient_edges=[(u + 1, v + 1) for u, v in quotient.edges()],
        original_valency=original,
        quotient_valency=valency,
        degenerate=valency <= 1,
        is_normal_cover=is_cover,
        n_semiregular=semiregular,
        n_order=n_order,
        n_solvable=n_solvable,
        g_solvable=g_solvable,
        solvable_lemma_applies=applies,
        solvable_lemma_holds=(is_cover and semiregular) if applies else None,
    )
    logger.info("normal_quotient", n_order=result.n_order, orbits=len(orbits), valency=valency, cover=is_cover)
    if valency > original:
        _falsified("quotient_valency", strict, f"quotient valency {valency} > {original}")
    if applies and not result.solvable_lemma_holds:
        _falsified("normal_cover", strict, f"|N| = {result.n_order}")
    return Quotient(result, quotient, orbit_of)


def _summary(normal: PermutationGroup, quotient: QuotientResult) -> NormalSubgroupSummary:
    return NormalSubgroupSummary(
        order=normal.order(),
        orbits=quotient.quotient_vertices,
        quotient_valency=quotient.quotient_valency,
        abelian=normal.is_abelian(),
        generators=[g.cycle_string() for g in normal.generators],
    )


def _aut_two_orbit_clause(graph: Graph, two_orbit: list[PermutationGroup]) -> HypothesisStatus:
    try:
        aut = graph_automorphism_group(graph)
        classes = aut.conjugacy_class_representatives()
    except (BudgetExceededError, OverCapError) as exc:
        return HypothesisStatus(status="assumed", detail=f"Aut(graph) not computable: {exc}")
    candidates = [aut.normal_closure(n.generators) for n in two_orbit]
    candidates += [aut.normal_closure([rep]) for rep in classes if not rep.is_identity()]
    for candidate in candidates:
        if len(candidate.orbits()) == 2:
            return HypothesisStatus(status="verified", detail=f"normal subgroup of order {candidate.order()}")
    return HypothesisStatus(status="failed", detail="no normal closure of a class or of a two-orbit subgroup has two orbits")


def classify_basic(
    graph: Graph,
    group: PermutationGroup,
    candidates: Sequence[PermutationGroup] | None = None,
    strict: bool = False,
) -> BasicClassification:
    """Basic or not, and the type of a basic pair.

    Minimal normal subgroups decide the question: quotient valency can only
    drop as N grows. Above the desk-scale order a list of candidate normal
    subgroups must be supplied and the answer is relative to it.
    """
    relative = candidates is not None
    if candidates is None:
        if group.order() > settings.DESK_ORDER_LIMIT:
            raise PreconditionError("normal subgroups cannot be enumerated at this order; supply candidates")
        candidates = group.minimal_normal_subgroups()
    orbits = _orbits(graph, group)
    quotients = [normal_quotient(graph, group, n, strict=strict, hat=orbits.hat).result for n in candidates]
    summaries = [_summary(n, q) for n, q in zip(candidates, quotients)]

    witness = next((s for s in summaries if s.quotient_valency > 2), None)
    socle_check = None
    aut_clause = None
    cycle_length = None
    if witness is not None:
        outcome = "not_basic"
    elif all(s.orbits == 1 for s in summaries):
        outcome = "quasiprimitive"
    elif all(s.orbits <= 2 for s in summaries):
        outcome = "bi_quasiprimitive"
        two_orbit = [n for n, s in zip(candidates, summaries) if s.orbits == 2]
        aut_clause = _aut_two_orbit_clause(graph, two_orbit)
    else:
        outcome = "cycle_type"
        witness = next(s for s in summaries if s.orbits > 2)
        cycle_length = witness.orbits

    if outcome != "not_basic" and orbits.hat and graph.valency == 4:
        stabilizer = group.point_stabilizer(1)
        if not stabilizer.is_abelian():
            if relative:
                socle_check = HypothesisStatus(status="assumed", detail="relative to the supplied normal subgroups")
            else:
                unique = len(candidates) == 1 and not summaries[0].abelian
                socle_check = HypothesisStatus(
                    status="verified" if unique else "failed",
                    detail=f"{len(candidates)} minimal normal subgroup(s)",
                )
                if not unique:
                    _falsified("socle_unique_nonabelian", strict, socle_check.detail)

    logger.info("classify_basic", outcome=outcome, relative=relative, candidates=len(summaries))
    return BasicClassification(
        outcome=outcome,
        relative_to_supplied_list=relative,
        witness=witness,
        normal_subgroups=summaries,
        socle_check=socle_check,
        aut_clause=aut_clause,
        cycle_length=cycle_length,
    )


class Reduction(NamedTuple):
    report: BasicReduction
    quotient: Graph
    induced: PermutationGroup
    normal: PermutationGroup


def _normal_subgroups(group: PermutationGroup) -> list[PermutationGroup]:
    """Normal closures of single classes, closed under joins."""
    found: list[PermutationGroup] = []

    def add(candidate: PermutationGroup) -> bool:
        if any(candidate.same_as(known) for known in found):
            return False
        found.append(candidate)
        return True

    for rep in group.conjugacy_class_representatives():
        if not rep.is_identity():
            add(group.normal_closure([rep]))
    grew = True
    while grew:
        grew = False
        for i in range(len(found)):
            for j in range(i + 1, len(found)):
                if found[i].is_subgroup_of(found[j]) or found[j].is_subgroup_of(found[i]):
                    continue
                grew |= add(group.normal_closure([*found[i].generators, *found[j].generators]))
    return found


def reduce_to_basic(graph: Graph, group: PermutationGroup, strict: bool = False) -> Reduction:
    """Quotient by a largest normal N of which the graph is a normal cover, with the action of G on it."""
    _require_action(graph, group)
    hat = _orbits(graph, group).hat
    best = PermutationGroup.trivial(group.degree)
    for normal in _normal_subgroups(group):
        if normal.order() <= best.order() or len(normal.orbits()) == 1:
            continue
        quotient = normal_quotient(graph, group, normal, strict=strict, hat=hat)
        if quotient.result.is_normal_cover:
            best = normal
    quotient_graph, orbit_of = _quotient_graph(graph, best.orbits())
    representative = {orbit: v for v, orbit in reversed(list(enumerate(orbit_of)))}
    induced_gens = [
        Permutation([orbit_of[g.images[representative[i]]] for i in range(quotient_graph.vertex_count)])
        for g in group.generators
    ]
    induced = PermutationGroup(induced_gens, quotient_graph.vertex_count)
    quotient_hat = _orbits(quotient_graph, induced).hat
    semiregular = best.transitivity_flags().semiregular
    report = BasicReduction(
        n_order=best.order(),
        quotient_vertices=quotient_graph.vertex_count,
        quotient_valency=quotient_graph.valency or 0,
        induced_group_order=induced.order(),
        quotient_hat=quotient_hat,
        kernel_semiregular=semiregular,
    )
    logger.info("reduce_to_basic", n_order=report.n_order, quotient_vertices=report.quotient_vertices)
    if hat and graph.valency == 4 and not (quotient_hat and semiregular and report.quotient_valency == 4):
        _falsified("reduction_basic", strict, f"|N| = {report.n_order}")
    return Reduction(report, quotient_graph, induced, best)
