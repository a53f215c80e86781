import pytest

from hatgraphs.core.elements import (
    ElementSet,
    core_of,
    coset_action_kernel,
    coset_key,
    double_coset,
    double_cosets_equal,
    enumerate_elements,
    index_of_self_intersection,
    right_coset_action,
)
from hatgraphs.core.groups import PermutationGroup
from hatgraphs.exceptions import IndexOverCapError, OverCapError, PreconditionError
from tests.helpers import perm


@pytest.fixture
def transposition() -> ElementSet:
    return ElementSet.from_generators([perm("(1 2)", 3)])


@pytest.fixture
def a3() -> ElementSet:
    return ElementSet.from_generators([perm("(1 2 3)", 3)])


def test_closure_of_generators(klein):
    assert len(klein) == 4
    assert klein.is_closed()
    assert klein.is_abelian()
    assert klein.ordered()[0] == klein.identity()
    assert len(klein.involutions()) == 3


def test_canonical_index(klein):
    for i, g in enumerate(klein.ordered()):
        assert klein.index(g) == i


def test_cap_is_enforced(a8):
    with pytest.raises(OverCapError):
        ElementSet.from_generators(list(a8.generators), cap=100)
    with pytest.raises(OverCapError):
        enumerate_elements(a8, cap=100)


def test_enumerate_elements_matches_order(s3):
    elements = enumerate_elements(s3)
    assert len(elements) == 6
    assert elements.is_subset(s3)


def test_self_intersection_index(transposition, a3):
    assert index_of_self_intersection(transposition, perm("(1 2 3)", 3)) == 2
    assert index_of_self_intersection(a3, perm("(1 2)", 3)) == 1


def test_double_cosets(transposition):
    g = perm("(1 2 3)", 3)
    assert double_cosets_equal(transposition, g)
    assert len(double_coset(transposition, g)) == 4


def test_core(s3, transposition, a3):
    assert len(core_of(transposition, s3)) == 1
    assert core_of(a3, s3) == a3
    with pytest.raises(PreconditionError):
        core_of(ElementSet.from_generators([perm("(1 2)", 3)]), PermutationGroup([perm("(1 2 3)", 3)]))


def test_coset_key_is_constant_on_cosets(transposition):
    x = perm("(1 2 3)", 3)
    for h in transposition:
        assert coset_key(transposition, h * x) == coset_key(transposition, x)
    assert coset_key(transposition, x) != coset_key(transposition, x.inverse())


def test_right_coset_action(s3, transposition):
    representatives, actions = right_coset_action(transposition, s3)
    assert len(representatives) == 3
    assert representatives[0].is_identity()
    assert PermutationGroup(actions, 3).order() == 6
    with pytest.raises(IndexOverCapError):
        right_coset_action(transposition, s3, max_index=2)


def test_coset_action_kernel(s3, a3, transposition):
    assert coset_action_kernel(a3, s3) == a3
    assert len(coset_action_kernel(transposition, s3)) == 1
