"""
Permutations acting on the right of the points 1..degree.

The product ``p * q`` applies ``p`` first and then ``q``, so ``x^(pq) = (x^p)^q``.
Points are 1-based at the public surface and 0-based in storage.
"""
from __future__ import annotations

from collections.abc import Iterable, Sequence
from math import lcm

from hatgraphs.config import settings
from hatgraphs.exceptions import InvalidPermutationError


class Permutation:
    __slots__ = ("_images", "_hash")

    def __init__(self, images: Sequence[int], *, check: bool = True):
        images = tuple(images)
        if check:
            degree = len(images)
            if degree == 0:
                raise InvalidPermutationError("a permutation needs degree >= 1")
            if degree > settings.MAX_DEGREE:
                raise InvalidPermutationError(f"degree {degree} exceeds the ceiling {settings.MAX_DEGREE}")
            if sorted(images) != list(range(degree)):
                raise InvalidPermutationError(f"images are not a bijection of 0..{degree - 1}")
        self._images = images
        self._hash = hash(images)

    # Construction

    @classmethod
    def _trusted(cls, images: tuple[int, ...]) -> Permutation:
        perm = cls.__new__(cls)
        perm._images = images
        perm._hash = hash(images)
        return perm

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree))

    @classmethod
    def from_images(cls, images: Sequence[int]) -> Permutation:
        """Build from a 1-based image sequence ``i1 i2 ... id``."""
        try:
            return cls([int(image) - 1 for image in images])
        except (TypeError, ValueError) as e:
            if isinstance(e, InvalidPermutationError):
                raise
            raise InvalidPermutationError(f"malformed image sequence: {images!r}") from e

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        """Build from 1-based cycles, e.g. ``[(1, 2, 3), (4, 5)]``."""
        images = list(range(degree))
        seen: set[int] = set()
        for cycle in cycles:
            points = [int(point) - 1 for point in cycle]
            for point in points:
                if not 0 <= point < degree:
                    raise InvalidPermutationError(f"point {point + 1} outside 1..{degree}")
                if point in seen:
                    raise InvalidPermutationError(f"point {point + 1} appears in two cycles")
                seen.add(point)
            for source, target in zip(points, points[1:] + points[:1]):
                images[source] = target
        return cls(images)

    # Accessors

    @property
    def degree(self) -> int:
        return len(self._images)

    @property
    def images(self) -> tuple[int, ...]:
        """0-based image tuple; the canonical key of the permutation."""
        return self._images

    @property
    def images1(self) -> tuple[int, ...]:
        return tuple(image + 1 for image in self._images)

    def image(self, point: int) -> int:
        """Image of a 1-based point."""
        if not 1 <= point <= len(self._images):
            raise InvalidPermutationError(f"point {point} outside 1..{len(self._images)}")
        return self._images[point - 1] + 1

    def fixes(self, point: int) -> bool:
        return self.image(point) == point

    def is_identity(self) -> bool:
        return all(i == image for i, image in enumerate(self._images))

    def support(self) -> frozenset[int]:
        return frozenset(i + 1 for i, image in enumerate(self._images) if i != image)

    # Arithmetic

    def _check_degree(self, other: Permutation) -> None:
        if len(other._images) != len(self._images):
            raise InvalidPermutationError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __mul__(self, other: Permutation) -> Permutation:
        if not isinstance(other, Permutation):
            return NotImplemented
        self._check_degree(other)
        return Permutation._trusted(tuple(map(other._images.__getitem__, self._images)))

    def inverse(self) -> Permutation:
        inverse = [0] * len(self._images)
        for i, image in enumerate(self._images):
            inverse[image] = i
        return Permutation._trusted(tuple(inverse))

    __invert__ = inverse

    def __pow__(self, exponent: int) -> Permutation:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Permutation._trusted(tuple(range(len(self._images))))
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self, g: Permutation) -> Permutation:
        """``g^-1 * self * g``, written ``self^g``."""
        self._check_degree(g)
        # (self^g) maps x^g to (x^self)^g
        conjugated = [0] * len(self._images)
        for i, image in enumerate(self._images):
            conjugated[g._images[i]] = g._images[image]
        return Permutation._trusted(tuple(conjugated))

    def commutator(self, other: Permutation) -> Permutation:
        return self.inverse() * other.inverse() * self * other

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, 1-based, each starting at its smallest point."""
        seen = [False] * len(self._images)
        cycles = []
        for start in range(len(self._images)):
            if seen[start] or self._images[start] == start:
                continue
            cycle = []
            point = start
            while not seen[point]:
                seen[point] = True
                cycle.append(point + 1)
                point = self._images[point]
            cycles.append(tuple(cycle))
        return cycles

    def order(self) -> int:
        return lcm(*(len(cycle) for cycle in self.cycles())) if not self.is_identity() else 1

    def is_involution(self) -> bool:
        return not self.is_identity() and (self * self).is_identity()

    # Carrier changes

    def extend(self, degree: int, offset: int = 0) -> Permutation:
        """Act on points ``offset+1 .. offset+self.degree`` inside a larger degree."""
        if offset < 0 or offset + self.degree > degree:
            raise InvalidPermutationError(f"cannot place degree {self.degree} at offset {offset} in {degree}")
        images = list(range(degree))
        for i, image in enumerate(self._images):
            images[offset + i] = offset + image
        return Permutation._trusted(tuple(images))

    def restrict(self, points: range) -> Permutation:
        """Restriction to an invariant block of consecutive 0-based points, renumbered from 0."""
        start = points.start
        images = []
        for i in points:
            image = self._images[i]
            if image not in points:
                raise InvalidPermutationError(f"points {start + 1}..{points.stop} are not invariant")
            images.append(image - start)
        return Permutation._trusted(tuple(images))

    # Protocols

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._images == other._images

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: Permutation) -> bool:
        return self._images < other._images

    def __reduce__(self):
        return (Permutation._trusted, (self._images,))

    def cycle_string(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, cycle)) + ")" for cycle in cycles)

    def __str__(self) -> str:
        return self.cycle_string()

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()}, degree={self.degree})"


def identity(degree: int) -> Permutation:
    return Permutation.identity(degree)


def common_degree(perms: Sequence[Permutation]) -> int:
    if not perms:
        raise InvalidPermutationError("expected at least one permutation")
    degree = perms[0].degree
    for perm in perms[1:]:
        if perm.degree != degree:
            raise InvalidPermutationError(f"inconsistent degrees: {degree} and {perm.degree}")
    return degree


def product(perms: Iterable[Permutation], degree: int) -> Permutation:
    result = Permutation.identity(degree)
    for perm in perms:
        result = result * perm
    return result
