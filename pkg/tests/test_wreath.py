import pytest

from hatgraphs.core.concentric import catalog
from hatgraphs.core.wreath import (
    block_shift,
    build_wreath_instance,
    check_c1_c4,
    conjugation_chain,
    conjugators,
    search_shift_element,
    verify_cayley_structure,
    verify_wreath_theorem,
)
from hatgraphs.exceptions import PreconditionError
from tests.helpers import perm

H1 = perm("(1 2)(3 4)", 4)
H2 = perm("(1 3)(2 4)", 4)
SHIFT = perm("(2 3 4)", 4)


def test_block_shift():
    tau = block_shift(4, 2)
    assert tau == perm("(1 5)(2 6)(3 7)(4 8)", 8)
    assert block_shift(2, 3).order() == 3


def test_conjugators_enumerate_every_solution():
    found = list(conjugators([H1], [H2], 4))
    assert len(found) == 8
    assert all(H1.conjugate(x) == H2 for x in found)
    assert found == sorted(found)


def test_conditions_on_a4(a4):
    report = check_c1_c4(a4, SHIFT, [H1, H2])
    assert report.passed
    assert report.n == 2
    assert report.w_order == 12
    assert report.w_simple.status == "failed"
    assert report.w_primitive.status == "verified"


def test_conditions_report_failures(a4):
    report = check_c1_c4(a4, SHIFT.inverse(), [H1, H2])
    assert not report.c4_shift_conjugation
    assert report.first_failure == 1
    with pytest.raises(PreconditionError):
        check_c1_c4(a4, perm("(1 2 3)", 4), [H1, H2])


def test_search_finds_the_shift_in_a4(a4):
    assert search_shift_element(a4, [H1, H2]) == SHIFT


def test_build_refuses_failed_conditions(a4):
    with pytest.raises(PreconditionError, match="assume"):
        build_wreath_instance(a4, SHIFT.inverse(), [H1, H2], 2)
    instance = build_wreath_instance(a4, SHIFT.inverse(), [H1, H2], 2, assume=True)
    assert instance.assumed
    assert instance.conditions is None


def test_toy_instance_with_two_copies(a4):
    instance = build_wreath_instance(a4, SHIFT, [H1, H2], 2)
    assert instance.degree == 8
    assert instance.group.order() == 12 * 12 * 2
    assert len(instance.k_gens) == 4

    chain = conjugation_chain(instance)
    assert len(chain) == 4
    for x, y in zip(chain, chain[1:]):
        assert x.conjugate(instance.a_tau) == y

    certificate = verify_wreath_theorem(instance, strict=True)
    # n = 2 is below the hypothesis, so nothing is asserted
    assert not certificate.asserted
    checks = {check.name: check.result for check in certificate.checks}
    assert checks["tau_power"]
    assert checks["block_conjugates"]
    assert checks["power_restriction"]
    assert checks["conjugation_chain"]
    assert checks["socle_factors"]
    assert certificate.data["k_order"] == 16


@pytest.mark.parametrize("m", [2, 3, 4])
def test_toy_outcomes_for_several_copies(a4, m):
    # V4 is normal in A4, so K is normal in G and the coset graph degenerates
    instance = build_wreath_instance(a4, SHIFT, [H1, H2], m)
    certificate = verify_wreath_theorem(instance, strict=True)
    checks = {check.name: check.result for check in certificate.checks}
    assert checks["conjugation_chain"]
    assert checks["wreath_shift_subgroups"]
    assert not checks["wreath_generation"]
    assert not checks["wreath_intersection_index"]
    assert checks["wreath_double_cosets_unequal"]
    assert not checks["wreath_core_free"]
    assert certificate.data["group_order"] == 12**m * m
    assert certificate.data["k_order"] == 4**m


def test_shift_subgroups_with_one_copy(a4):
    instance = build_wreath_instance(a4, SHIFT, [H1, H2], 1)
    checks = {check.name: check.result for check in verify_wreath_theorem(instance).checks}
    assert checks["wreath_shift_subgroups"]


def test_toy_cayley_structure(a4):
    instance = build_wreath_instance(a4, SHIFT, [H1, H2], 2)
    certificate = verify_cayley_structure(instance, strict=True)
    checks = {check.name: check.result for check in certificate.checks}
    assert checks["x_meets_k_trivially"]
    assert checks["x_complements_k"]
    assert checks["a_tau_in_x"]
    assert checks["connection_element_in_x"]
    assert checks["same_coset"]
    assert checks["s_generates_w1"]
    assert certificate.data["x_order"] == 18
    assert certificate.data["aut_w1_s_order"] == 2
    with pytest.raises(PreconditionError):
        verify_cayley_structure(build_wreath_instance(a4, SHIFT, [H1, H2], 1))


@pytest.mark.slow
@pytest.mark.parametrize("name", ["D8", "Z2^3"])
def test_a8_has_no_shift_element_for_regular_groups_of_order_8(a8, name):
    h_gens = list(catalog(name).gens)
    assert search_shift_element(a8, h_gens) is None
    # the sweep is exhaustive: nothing in the stabilizer of 1 conjugates h_1, h_2 onto h_2, h_3 and generates A8
    stabilizer = a8.point_stabilizer(1)
    for a in stabilizer.elements():
        if all(h_gens[i].conjugate(a) == h_gens[i + 1] for i in range(2)):
            assert not check_c1_c4(a8, a, h_gens).c1_generation
