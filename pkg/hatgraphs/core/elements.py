"""
Explicit element sets for small subgroups, and the algorithms that need them:
self-intersection index, double cosets, cores and coset actions.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence

import structlog

from hatgraphs.config import settings
from hatgraphs.core.groups import PermutationGroup
from hatgraphs.core.permutations import Permutation, common_degree
from hatgraphs.exceptions import IndexOverCapError, InvalidPermutationError, OverCapError, PreconditionError

logger = structlog.get_logger(__name__)


class ElementSet:
    """A finite subgroup given by all of its elements.

    Elements are indexed by their image tuples; iteration follows the canonical
    lexicographic order of those tuples.
    """

    __slots__ = ("degree", "_elements", "_sorted", "_positions", "cap")

    def __init__(self, elements: Iterable[Permutation], degree: int, cap: int | None = None):
        self.degree = degree
        self.cap = cap if cap is not None else settings.MAX_ELEMENTS
        self._elements = frozenset(elements)
        if len(self._elements) > self.cap:
            raise OverCapError(len(self._elements), self.cap)
        if any(g.degree != degree for g in self._elements):
            raise InvalidPermutationError(f"element set mixes degrees, expected {degree}")
        self._sorted: tuple[Permutation, ...] | None = None
        self._positions: dict[Permutation, int] | None = None

    @classmethod
    def from_generators(
        cls, generators: Sequence[Permutation], degree: int | None = None, cap: int | None = None
    ) -> ElementSet:
        """Closure of the generators by breadth-first multiplication, refusing beyond the cap."""
        if degree is None:
            degree = common_degree(generators)
        cap = cap if cap is not None else settings.MAX_ELEMENTS
        identity = Permutation.identity(degree)
        seen = {identity}
        frontier = [identity]
        gens = [g for g in generators if not g.is_identity()]
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    if len(seen) > cap:
                        logger.warning("element_set_over_cap", cap=cap, degree=degree)
                        raise OverCapError(len(seen), cap)
                    frontier.append(y)
        return cls(seen, degree, cap)

    @classmethod
    def from_group(cls, group: PermutationGroup, cap: int | None = None) -> ElementSet:
        return enumerate_elements(group, cap)

    def __len__(self) -> int:
        return len(self._elements)

    def __contains__(self, g: object) -> bool:
        return g in self._elements

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.ordered())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ElementSet):
            return NotImplemented
        return self._elements == other._elements

    def __hash__(self) -> int:
        return hash(self._elements)

    def __repr__(self) -> str:
        return f"ElementSet(order={len(self)}, degree={self.degree})"

    @property
    def elements(self) -> frozenset[Permutation]:
        return self._elements

    def ordered(self) -> tuple[Permutation, ...]:
        if self._sorted is None:
            self._sorted = tuple(sorted(self._elements))
        return self._sorted

    def index(self, g: Permutation) -> int:
        """Position of ``g`` in the canonical order, 0-based."""
        if self._positions is None:
            self._positions = {x: i for i, x in enumerate(self.ordered())}
        return self._positions[g]

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def is_closed(self) -> bool:
        return self.identity() in self._elements and all(
            x * y in self._elements and x.inverse() in self._elements
            for x in self._elements
            for y in self._elements
        )

    def conjugate(self, g: Permutation) -> ElementSet:
        return ElementSet((h.conjugate(g) for h in self._elements), self.degree, self.cap)

    def intersection(self, other: ElementSet) -> ElementSet:
        return ElementSet(self._elements & other._elements, self.degree, self.cap)

    def is_subset(self, other: ElementSet | PermutationGroup) -> bool:
        if isinstance(other, ElementSet):
            return self._elements <= other._elements
        return all(other.contains(h) for h in self._elements)

    def is_abelian(self) -> bool:
        elements = self.ordered()
        return all(x * y == y * x for i, x in enumerate(elements) for y in elements[i + 1 :])

    def involutions(self) -> list[Permutation]:
        return [g for g in self.ordered() if g.is_involution()]

    def centralizer_size(self, g: Permutation) -> int:
        return sum(1 for x in self._elements if x * g == g * x)

    def as_group(self, generators: Sequence[Permutation] | None = None) -> PermutationGroup:
        gens = list(generators) if generators is not None else list(self.ordered())
        return PermutationGroup(gens, self.degree, known_order=len(self))


def enumerate_elements(group: PermutationGroup, cap: int | None = None) -> ElementSet:
    cap = cap if cap is not None else settings.MAX_ELEMENTS
    order = group.order()
    if order > cap:
        logger.warning("enumeration_refused", order=order, cap=cap)
        raise OverCapError(order, cap)
    return ElementSet(group.elements(), group.degree, cap)


def index_of_self_intersection(subgroup: ElementSet, g: Permutation) -> int:
    """|H : H ∩ H^g|."""
    g_inverse = g.inverse()
    # h^(g^-1) in H  <=>  h in H^g
    kept = sum(1 for h in subgroup.elements if h.conjugate(g_inverse) in subgroup)
    return len(subgroup) // kept


def double_cosets_equal(subgroup: ElementSet, g: Permutation) -> bool:
    """Whether HgH = Hg^-1H, decided by looking for h in H with g h g in H."""
    return any(g * h * g in subgroup for h in subgroup.elements)


def double_coset(subgroup: ElementSet, g: Permutation, cap: int | None = None) -> frozenset[Permutation]:
    cap = cap if cap is not None else settings.MAX_ELEMENTS
    if len(subgroup) ** 2 > cap:
        raise OverCapError(len(subgroup) ** 2, cap)
    left = [h * g for h in subgroup.elements]
    return frozenset(x * k for x in left for k in subgroup.elements)


def core_of(subgroup: ElementSet, group: PermutationGroup, spot_checks: int = 16) -> ElementSet:
    """Largest normal subgroup of ``group`` inside ``subgroup``."""
    for h in subgroup.ordered()[:spot_checks]:
        if not group.contains(h):
            raise PreconditionError("subgroup is not contained in the group")
    core = subgroup
    changed = True
    while changed:
        changed = False
        for g in group.generators:
            smaller = core.intersection(core.conjugate(g))
            if len(smaller) < len(core):
                core = smaller
                changed = True
    return core


def coset_key(subgroup: ElementSet, x: Permutation) -> Permutation:
    """The least element of the right coset Hx; equal for x and y exactly when Hx = Hy."""
    return min(h * x for h in subgroup.elements)


def right_coset_action(
    subgroup: ElementSet, group: PermutationGroup, max_index: int | None = None
) -> tuple[list[Permutation], list[Permutation]]:
    """Action of the group generators on the right cosets of ``subgroup``.

    Returns the coset representatives (the first being the identity) and one
    permutation per group generator on the cosets, numbered by discovery.
    """
    max_index = max_index if max_index is not None else settings.MAX_VERTICES
    index = group.order() // len(subgroup)
    if index > max_index:
        raise IndexOverCapError(index, max_index)

    identity = Permutation.identity(group.degree)
    representatives = [identity]
    numbering = {coset_key(subgroup, identity): 0}
    images: list[list[int]] = [[] for _ in group.generators]
    for x in representatives:
        for k, g in enumerate(group.generators):
            y = x * g
            label = coset_key(subgroup, y)
            if label not in numbering:
                numbering[label] = len(representatives)
                representatives.append(y)
            images[k].append(numbering[label])
    actions = [Permutation(row) for row in images]
    return representatives, actions


def coset_action_kernel(subgroup: ElementSet, group: PermutationGroup) -> ElementSet:
    """Kernel of the action on right cosets of ``subgroup``.

    The kernel fixes the coset H itself, so only elements of H are tested.
    """
    representatives, _ = right_coset_action(subgroup, group)
    labels = [coset_key(subgroup, x) for x in representatives]
    kernel = [h for h in subgroup.ordered() if all(coset_key(subgroup, x * h) == label for x, label in zip(representatives, labels))]
    logger.debug("coset_action_kernel", index=len(representatives), kernel_order=len(kernel))
    return ElementSet(kernel, subgroup.degree, subgroup.cap)
