import pytest

from hatgraphs.config import settings
from hatgraphs.core.concentric import (
    ConcentricSequence,
    catalog,
    check_concentric,
    find_concentric_sequence,
    parse_catalog_name,
    transport_to_regular,
)
from hatgraphs.core.elements import ElementSet
from hatgraphs.exceptions import OverCapError, PreconditionError
from hatgraphs.models.reports import ConcentricRejection
from tests.helpers import perm

QUATERNION = [perm("(1 2 3 4)(5 6 7 8)", 8), perm("(1 5 3 7)(2 8 4 6)", 8)]


def test_accepts_d8(d8_concentric):
    result = check_concentric(d8_concentric)
    assert isinstance(result, ConcentricSequence)
    assert result.n == 3
    assert len(result.group) == 8
    assert len(result.b_set) == len(result.c_set) == 4
    assert result.shift(d8_concentric[0]) == d8_concentric[1]
    assert result.shift(d8_concentric[1]) == d8_concentric[2]
    assert result.verify_homomorphism()


def test_single_involution_is_concentric():
    result = check_concentric([perm("(1 2)", 2)])
    assert isinstance(result, ConcentricSequence)
    assert result.n == 1


@pytest.mark.parametrize(
    "gens, condition",
    [
        ([], "empty"),
        ([perm("(1 2 3)", 4)], "involution"),
        ([perm("(1 2)", 3), perm("(2 3)", 3)], "window_order"),
        # B = <a1, a2, a3> is elementary abelian while C = <a2, a3, a4> is D8
        (
            [perm("(5 6)", 6), perm("(2 4)", 6), perm("(1 3)(2 4)", 6), perm("(1 4)(2 3)", 6)],
            "phi_conflict",
        ),
    ],
)
def test_rejections_name_the_failed_condition(gens, condition):
    result = check_concentric(gens)
    assert isinstance(result, ConcentricRejection)
    assert result.condition == condition


def test_involution_rejection_reports_index():
    result = check_concentric([perm("(1 2)", 4), perm("(1 2 3 4)", 4)])
    assert result.condition == "involution"
    assert result.index == 2


def test_window_rejection_reports_window():
    result = check_concentric([perm("(1 2)", 3), perm("(2 3)", 3)])
    assert result.window == (1, 2)


def test_phi_conflict_witness_is_a_relation_of_b():
    gens = [perm("(5 6)", 6), perm("(2 4)", 6), perm("(1 3)(2 4)", 6), perm("(1 4)(2 3)", 6)]
    result = check_concentric(gens)
    word = result.witness_word
    value = perm("()", 6)
    for letter in word:
        value = value * gens[letter - 1]
    assert value.is_identity()


def test_search_finds_a_sequence_in_d8(d8_gens):
    found = find_concentric_sequence(ElementSet.from_generators(d8_gens), 3)
    assert found is not None
    assert isinstance(check_concentric(found.gens), ConcentricSequence)


def test_search_in_elementary_abelian_group():
    group = ElementSet.from_generators([perm("(1 2)", 6), perm("(3 4)", 6), perm("(5 6)", 6)])
    found = find_concentric_sequence(group, 3)
    assert found is not None
    assert found.group == group


def test_quaternion_group_has_no_concentric_sequence():
    assert find_concentric_sequence(ElementSet.from_generators(QUATERNION), 3) is None


def test_search_needs_matching_order(d8_gens):
    with pytest.raises(PreconditionError):
        find_concentric_sequence(ElementSet.from_generators(d8_gens), 4)


@pytest.mark.parametrize(
    "name, family, order",
    [
        ("Z2^4", "Z2^m", 16),
        ("D8", "D8xZ2^m", 8),
        ("D8xZ2^2", "D8xZ2^m", 32),
        ("D8^2xZ2^1", "D8^2xZ2^m", 128),
        ("H7", "H7", 128),
        ("H7xZ2", "H7xZ2", 256),
    ],
)
def test_catalog_names(name, family, order):
    entry = parse_catalog_name(name)
    assert entry.family == family
    assert entry.order == order


@pytest.mark.parametrize("name", ["Q8", "Z2^0", "D8xZ3"])
def test_unknown_catalog_names(name):
    with pytest.raises(PreconditionError):
        parse_catalog_name(name)


def test_catalog_d8_on_the_regular_carrier(d8_regular):
    assert d8_regular.n == 3
    assert d8_regular.degree == 8
    assert not d8_regular.group.is_abelian()


def test_catalog_small_carrier():
    sequence = catalog("D8xZ2^1", carrier="small")
    assert sequence.degree == 6
    assert sequence.n == 4
    regular = transport_to_regular(sequence)
    assert regular.degree == 16
    assert regular.n == 4


def test_catalog_limits():
    with pytest.raises(OverCapError):
        catalog("Z2^15")
    settings.MAX_REGULAR_CARRIER = 16
    with pytest.raises(OverCapError):
        catalog("D8xZ2^2")
    with pytest.raises(PreconditionError):
        catalog("D8", carrier="tiny")


@pytest.mark.slow
def test_catalog_h7():
    sequence = catalog("H7", carrier="small")
    assert sequence.n == 7
    assert len(sequence.group) == 128
