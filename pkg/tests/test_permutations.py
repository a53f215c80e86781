import pytest

from hatgraphs.config import settings
from hatgraphs.core.permutations import Permutation, common_degree, product
from hatgraphs.exceptions import InvalidPermutationError
from tests.helpers import perm


def test_product_applies_left_factor_first():
    p, q = perm("(1 2)", 3), perm("(1 3)", 3)
    pq = p * q
    assert pq == perm("(1 2 3)", 3)
    for point in range(1, 4):
        assert pq.image(point) == q.image(p.image(point))


def test_from_images_is_one_based():
    g = Permutation.from_images([2, 3, 1, 4])
    assert g.cycles() == [(1, 2, 3)]
    assert g.images1 == (2, 3, 1, 4)
    assert g.fixes(4)


def test_inverse_and_powers():
    g = perm("(1 2)(3 4 5)", 5)
    assert g.order() == 6
    assert (g * g.inverse()).is_identity()
    assert g**6 == Permutation.identity(5)
    assert g**-1 == g.inverse()
    assert g**7 == g


def test_conjugate_relabels_cycles():
    assert perm("(1 2)", 3).conjugate(perm("(2 3)", 3)) == perm("(1 3)", 3)
    g, x = perm("(1 2 3 4)", 5), perm("(1 5)(2 3)", 5)
    assert g.conjugate(x) == x.inverse() * g * x


def test_involution_and_support():
    assert perm("(1 2)(3 4)", 4).is_involution()
    assert not Permutation.identity(4).is_involution()
    assert perm("(2 4)", 5).support() == frozenset({2, 4})


def test_cycle_string():
    assert Permutation.identity(3).cycle_string() == "()"
    assert perm("(3 1 2)", 4).cycle_string() == "(1 2 3)"


def test_extend_and_restrict():
    g = perm("(1 2)", 2).extend(6, offset=2)
    assert g == perm("(3 4)", 6)
    assert g.restrict(range(2, 4)) == perm("(1 2)", 2)
    with pytest.raises(InvalidPermutationError):
        perm("(1 3)", 4).restrict(range(0, 2))


@pytest.mark.parametrize(
    "images",
    [[], [0, 0, 1], [0, 1, 3]],
)
def test_rejects_non_bijections(images):
    with pytest.raises(InvalidPermutationError):
        Permutation(images)


def test_rejects_repeated_cycle_points():
    with pytest.raises(InvalidPermutationError):
        Permutation.from_cycles([(1, 2), (2, 3)], 3)
    with pytest.raises(InvalidPermutationError):
        Permutation.from_cycles([(1, 5)], 4)


def test_degree_mismatch_and_ceiling():
    with pytest.raises(InvalidPermutationError):
        perm("(1 2)", 2) * perm("(1 2)", 3)
    with pytest.raises(InvalidPermutationError):
        common_degree([perm("(1 2)", 2), perm("(1 2)", 3)])
    settings.MAX_DEGREE = 4
    with pytest.raises(InvalidPermutationError):
        Permutation(range(5))


def test_product_of_sequence():
    gens = [perm("(1 2)", 3), perm("(2 3)", 3), perm("(1 2)", 3)]
    assert product(gens, 3) == perm("(1 3)", 3)
