import pytest
from pydantic import ValidationError

from hatgraphs.core.concentric import ConcentricSequence, check_concentric
from hatgraphs.core.elements import ElementSet
from hatgraphs.core.groups import PermutationGroup
from hatgraphs.core.presentations import (
    FinitePresentation,
    h7_presentation,
    regular_rep_from_multiplication,
    todd_coxeter,
)
from hatgraphs.exceptions import CosetLimitExceeded, PreconditionError
from tests.helpers import perm


def test_symmetric_group_of_degree_three():
    s3 = FinitePresentation(generator_count=2, relators=((1, 1), (2, 2, 2), (1, 2, 1, 2)))
    result = todd_coxeter(s3)
    assert result.index == 6
    assert PermutationGroup(result.permutations, 6).order() == 6


def test_cyclic_group():
    result = todd_coxeter(FinitePresentation(generator_count=1, relators=((1,) * 10,)))
    assert result.index == 10
    assert result.permutations[0].order() == 10


def test_coset_limit():
    with pytest.raises(CosetLimitExceeded):
        todd_coxeter(FinitePresentation(generator_count=1, relators=((1,) * 10,)), max_cosets=5)
    with pytest.raises(PreconditionError):
        todd_coxeter(h7_presentation(), max_cosets=0)


def test_h7_presentation_has_28_relators():
    presentation = h7_presentation()
    assert presentation.generator_count == 7
    assert len(presentation.relators) == 28


def test_h7_enumerates_to_a_concentric_group_of_order_128():
    result = todd_coxeter(h7_presentation())
    assert result.index == 128
    assert all(g.is_involution() for g in result.permutations)
    sequence = check_concentric(result.permutations)
    assert isinstance(sequence, ConcentricSequence)
    assert sequence.n == 7
    assert not sequence.group.is_abelian()


def test_h7_shift_is_a_homomorphism():
    sequence = check_concentric(todd_coxeter(h7_presentation()).permutations)
    assert len(sequence.b_set) == 64
    assert len(sequence.c_set) == 64
    assert sequence.verify_homomorphism()
    for i in range(6):
        assert sequence.shift(sequence.gens[i]) == sequence.gens[i + 1]
    assert set(sequence.phi.values()) == set(sequence.c_set.elements)


@pytest.mark.parametrize(
    "relators",
    [((1, 3),), ((),), ((1, 0),)],
)
def test_rejects_bad_words(relators):
    with pytest.raises(ValidationError):
        FinitePresentation(generator_count=2, relators=relators)


def test_evaluate_word():
    presentation = FinitePresentation(generator_count=2, relators=((1, 1),))
    a, b = perm("(1 2)", 3), perm("(1 2 3)", 3)
    assert presentation.evaluate((1, -2), [a, b]) == a * b.inverse()


def test_regular_representation(klein):
    regular = regular_rep_from_multiplication(klein, klein.ordered()[1:])
    assert PermutationGroup(regular, 4).transitivity_flags().regular
    with pytest.raises(PreconditionError):
        regular_rep_from_multiplication(klein, [perm("(1 2)", 4)])


def test_regular_representation_of_d8_is_faithful(d8_gens):
    elements = ElementSet.from_generators(d8_gens)
    regular = regular_rep_from_multiplication(elements, d8_gens)
    group = PermutationGroup(regular, 8)
    assert group.order() == 8
    assert group.transitivity_flags().regular
