"""
The tau_h construction: from a concentric group H and h in B, a permutation
tau_h of H that conjugates R(a_i) to R(a_(i+1)), giving a group
G = <tau_h, R(H)> in which R(H) is a core-free subgroup with a
half-arc-transitive coset graph.

Points of the carrier are the elements of H in canonical order; R(g) is
right multiplication by g.
"""
from __future__ import annotations

import structlog
from pydantic import BaseModel, ConfigDict

from hatgraphs.core.concentric import ConcentricSequence
from hatgraphs.core.elements import ElementSet, core_of, double_cosets_equal, index_of_self_intersection
from hatgraphs.core.graphs import CosetGraph, materialize_coset_graph
from hatgraphs.core.groups import PermutationGroup
from hatgraphs.core.permutations import Permutation
from hatgraphs.core.presentations import regular_rep_from_multiplication
from hatgraphs.core.quotients import normal_quotient, transitivity_report
from hatgraphs.exceptions import FalsificationError, PreconditionError
from hatgraphs.models.certificates import CertificateDocument

logger = structlog.get_logger(__name__)

COSET_REPRESENTATIVE_NOTE = (
    "(a_m b)^tau_h = a_1 h b^phi is read with a_m = a_n, the representative of the coset H \\ B"
)


class MNInstance(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    sequence: ConcentricSequence
    h: Permutation
    tau_h: Permutation
    regular_gens: tuple[Permutation, ...]
    regular_group: ElementSet
    group: PermutationGroup
    certificate: CertificateDocument

    @property
    def n(self) -> int:
        return self.sequence.n


def admissible_h(sequence: ConcentricSequence) -> list[Permutation]:
    """Elements h of B for which tau_h is a bijection, i.e. a_1 h lies outside C."""
    a1 = sequence.gens[0]
    return [h for h in sequence.b_set.ordered() if a1 * h not in sequence.c_set]


def regular_representation(sequence: ConcentricSequence) -> list[Permutation]:
    return regular_rep_from_multiplication(sequence.group, sequence.gens)


def build_tau_h(sequence: ConcentricSequence, h: Permutation) -> Permutation:
    if h not in sequence.b_set:
        raise PreconditionError("h must lie in B = <a_1..a_(n-1)>")
    a1, an = sequence.gens[0], sequence.gens[-1]
    if a1 * h in sequence.c_set:
        raise PreconditionError("tau_h is not a bijection: a_1 h lies in C")
    ordered = sequence.group.ordered()
    point = {x: i for i, x in enumerate(ordered)}
    images = [-1] * len(ordered)
    for b in sequence.b_set.elements:
        image = sequence.phi[b]
        images[point[b]] = point[image]
        images[point[an * b]] = point[a1 * h * image]
    return Permutation(images)


def build_mn_instance(sequence: ConcentricSequence, h: Permutation, strict: bool = False) -> MNInstance:
    if sequence.group.is_abelian():
        raise PreconditionError("H is abelian; the construction needs a non-abelian concentric group")
    tau = build_tau_h(sequence, h)
    regular = regular_representation(sequence)
    degree = len(sequence.group)
    n = sequence.n

    regular_group = ElementSet.from_generators(regular, degree)
    group = PermutationGroup([tau, *regular], degree)
    order = group.order()

    certificate = CertificateDocument(command="construct mn", interpretation_notes=[COSET_REPRESENTATIVE_NOTE])
    certificate.add("tau_fixes_identity", tau.fixes(1))
    shift_failures = [i for i in range(1, n) if regular[i - 1].conjugate(tau) != regular[i]]
    certificate.add("conjugation_shift", not shift_failures, shift_failures[0] if shift_failures else None)

    core = core_of(regular_group, group)
    certificate.add("core_free", len(core) == 1, None if len(core) == 1 else f"|core| = {len(core)}")
    certificate.add("double_cosets_unequal", not double_cosets_equal(regular_group, tau))
    index = index_of_self_intersection(regular_group, tau)
    certificate.add("self_intersection_index", index == 2, f"index {index}")
    two_generated = PermutationGroup([regular[0], tau], degree).order()
    certificate.add("generation", two_generated == order, f"|<R(a_1), tau_h>| = {two_generated}, |G| = {order}")
    stabilizer = group.point_stabilizer(1).order()
    certificate.add("stabilizer_order", stabilizer * degree == order, f"|G_1| = {stabilizer}")
    shifted = regular_group.conjugate(tau).intersection(regular_group)
    expected = ElementSet.from_generators(regular[1:], degree) if n > 1 else ElementSet([Permutation.identity(degree)], degree)
    certificate.add("shifted_intersection", shifted == expected, f"|R(H)^tau ∩ R(H)| = {len(shifted)}")

    certificate.data.update(
        {
            "n": n,
            "h_point": sequence.group.index(h) + 1,
            "group_order": order,
            "stabilizer_order": stabilizer,
            "tau_h": tau.cycle_string(),
        }
    )
    logger.info("mn_instance_built", n=n, group_order=order, passed=certificate.passed)
    if not certificate.passed:
        failed = certificate.failed()[0]
        logger.critical("mn_check_failed", check=failed.name, witness=failed.witness)
        if strict:
            raise FalsificationError(failed.name, failed.witness)

    return MNInstance(
        sequence=sequence,
        h=h,
        tau_h=tau,
        regular_gens=tuple(regular),
        regular_group=regular_group,
        group=group,
        certificate=certificate,
    )


def verify_mn_instance(
    instance: MNInstance, with_quotients: bool = False, strict: bool = False
) -> tuple[CertificateDocument, CosetGraph]:
    """Materialize Cos(G, R(H), R(H){tau_h, tau_h^-1}R(H)) and certify it tetravalent and G-HAT.

    Group structure is computed on the carrier of G, which acts on 2^n points,
    and carried to the coset action; this is exact because R(H) is core-free.
    With ``with_quotients`` every minimal normal subgroup of G is also tested
    for the normal-quotient consistency conditions.
    """
    certificate = CertificateDocument(
        command="verify mn",
        interpretation_notes=[COSET_REPRESENTATIVE_NOTE],
        checks=list(instance.certificate.checks),
        data=dict(instance.certificate.data),
    )
    group = instance.group
    if len(core_of(instance.regular_group, group)) != 1:
        raise PreconditionError("R(H) is not core-free in G; the coset action is not faithful")
    coset = materialize_coset_graph(group, instance.regular_group, instance.tau_h)
    coset.action = PermutationGroup(coset.action.generators, coset.action.degree, known_order=group.order())
    graph = coset.graph
    certificate.add("connected", graph.is_connected)
    certificate.add("tetravalent", graph.valency == 4, f"valency {graph.valency}")

    # the vertex R(H) is fixed exactly by R(H)
    stabilizer = coset.induced_group(instance.regular_group.as_group(instance.regular_gens))
    report = transitivity_report(graph, coset.action, strict=strict, carrier=group, stabilizer=stabilizer)
    certificate.add("hat", report.hat, f"{report.arc_orbits} arc orbits")
    certificate.add("arc_orbits_halve", report.arc_orbit_sizes == [graph.edge_count] * 2, report.arc_orbit_sizes)
    certificate.add(
        "coset_stabilizer_order",
        report.stabilizer_order == len(instance.regular_group),
        f"|G_v| = {report.stabilizer_order}",
    )
    certificate.add("stabilizer_concentric", report.stabilizer_concentric is True)
    certificate.data.update({"vertices": graph.vertex_count, "transitivity": report.model_dump(mode="json")})

    if with_quotients:
        quotients = []
        for normal in group.minimal_normal_subgroups():
            image = coset.induced_group(normal)
            result = normal_quotient(
                graph, coset.action, image, strict=strict, hat=report.hat, carrier=(group, normal)
            ).result
            consistent = result.quotient_valency in (0, 1, 2, 4) and result.solvable_lemma_holds is not False
            if report.hat and result.is_normal_cover:
                consistent = consistent and result.n_semiregular
            certificate.add("normal_cover", consistent, f"|N| = {result.n_order}, valency {result.quotient_valency}")
            quotients.append(result.model_dump(mode="json"))
        certificate.data["quotients"] = quotients

    logger.info("mn_instance_verified", vertices=graph.vertex_count, hat=report.hat, passed=certificate.passed)
    if not certificate.passed:
        failed = certificate.failed()[0]
        logger.critical("mn_check_failed", check=failed.name, witness=failed.witness)
        if strict:
            raise FalsificationError(failed.name, failed.witness)
    return certificate, coset
