"""
Permutation groups backed by a base and strong generating set.

The chain is built on first use by a seeded randomized Schreier-Sims pass
followed by a deterministic Schreier-generator verification, so every answer
(order, membership, stabilizers) is exact and reproducible for a given seed.
Transversals are stored as Schreier trees to keep memory linear in the orbit
length.
"""
from __future__ import annotations

import random
import threading
from collections.abc import Iterable, Iterator, Sequence
from math import prod
from typing import NamedTuple

import structlog
from networkx.utils import UnionFind

from hatgraphs.config import settings
from hatgraphs.core.permutations import Permutation, common_degree
from hatgraphs.exceptions import InvalidPermutationError, OverCapError, PreconditionError

logger = structlog.get_logger(__name__)


class TransitivityFlags(NamedTuple):
    transitive: bool
    semiregular: bool
    regular: bool


class _Level:
    """One step of the stabilizer chain: base point, strong generators fixing
    the earlier base points, and a Schreier tree for the basic orbit."""

    __slots__ = ("point", "generators", "inverses", "tree")

    def __init__(self, point: int):
        self.point = point
        self.generators: list[Permutation] = []
        self.inverses: list[Permutation] = []
        # orbit point -> index of the generator on the tree edge into it (-1 at the root)
        self.tree: dict[int, int] = {point: -1}

    def add(self, g: Permutation) -> None:
        self.generators.append(g)
        self.inverses.append(g.inverse())
        self.rebuild()

    def rebuild(self) -> None:
        tree = {self.point: -1}
        frontier = [self.point]
        for p in frontier:
            for k, g in enumerate(self.generators):
                q = g.images[p]
                if q not in tree:
                    tree[q] = k
                    frontier.append(q)
        self.tree = tree

    def trace(self, g: Permutation) -> Permutation | None:
        """Multiply ``g`` by the inverse transversal element so the result fixes
        the base point; None when ``point^g`` leaves the basic orbit."""
        p = g.images[self.point]
        if p not in self.tree:
            return None
        while p != self.point:
            inverse = self.inverses[self.tree[p]]
            g = g * inverse
            p = inverse.images[p]
        return g

    def transversal(self, p: int, degree: int) -> Permutation:
        """The tree element ``u`` with ``point^u = p``."""
        path = []
        while p != self.point:
            k = self.tree[p]
            path.append(self.generators[k])
            p = self.inverses[k].images[p]
        u = Permutation.identity(degree)
        for g in reversed(path):
            u = u * g
        return u


class _ProductReplacement:
    """Random group elements by the product replacement walk with an accumulator."""

    def __init__(self, generators: Sequence[Permutation], rng: random.Random, degree: int):
        state = list(generators) or [Permutation.identity(degree)]
        while len(state) < 10:
            state.append(state[len(state) % len(generators or state)])
        self.state = state
        self.rng = rng
        self.accumulator = Permutation.identity(degree)
        for _ in range(50):
            self.next()

    def next(self) -> Permutation:
        i, j = self.rng.sample(range(len(self.state)), 2)
        if self.rng.random() < 0.5:
            self.state[i] = self.state[i] * self.state[j]
        else:
            self.state[i] = self.state[j] * self.state[i]
        self.accumulator = self.accumulator * self.state[i]
        return self.accumulator


class PermutationGroup:
    def __init__(
        self,
        generators: Iterable[Permutation],
        degree: int | None = None,
        *,
        base: Sequence[int] = (),
        known_order: int | None = None,
    ):
        """
        ``base`` holds 0-based points to lead the chain with; ``known_order``
        replaces the verification pass by a randomized build up to that order.
        """
        generators = list(generators)
        if degree is None:
            degree = common_degree(generators)
        elif generators and common_degree(generators) != degree:
            raise InvalidPermutationError(f"generators do not act on {degree} points")
        for point in base:
            if not 0 <= point < degree:
                raise InvalidPermutationError(f"base point {point + 1} outside 1..{degree}")
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(generators)
        self._base_prefix = tuple(base)
        self._known_order = known_order
        self._levels: list[_Level] | None = None
        self._lock = threading.Lock()

    @classmethod
    def trivial(cls, degree: int) -> PermutationGroup:
        return cls([], degree)

    @classmethod
    def symmetric(cls, degree: int) -> PermutationGroup:
        if degree == 1:
            return cls.trivial(1)
        gens = [Permutation.from_cycles([(1, 2)], degree)]
        if degree > 2:
            gens.append(Permutation.from_cycles([tuple(range(1, degree + 1))], degree))
        return cls(gens, degree)

    def __getstate__(self):
        state = {slot: getattr(self, slot) for slot in ("degree", "generators", "_base_prefix", "_known_order", "_levels")}
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"PermutationGroup(degree={self.degree}, generators={len(self.generators)})"

    # Chain construction

    @property
    def _chain(self) -> list[_Level]:
        if self._levels is None:
            with self._lock:
                if self._levels is None:
                    self._levels = self._build_chain()
        return self._levels

    def _sift(self, g: Permutation, levels: list[_Level], start: int = 0) -> tuple[Permutation, int]:
        for index in range(start, len(levels)):
            residue = levels[index].trace(g)
            if residue is None:
                return g, index
            g = residue
        return g, len(levels)

    def _install(self, levels: list[_Level], h: Permutation, drop: int) -> int:
        if drop == len(levels):
            moved = next(i for i, image in enumerate(h.images) if i != image)
            levels.append(_Level(moved))
        for index in range(drop + 1):
            levels[index].add(h)
        return drop

    def _build_chain(self) -> list[_Level]:
        degree = self.degree
        strong = [g for g in self.generators if not g.is_identity()]
        levels = [_Level(point) for point in self._base_prefix]
        for g in strong:
            residue, drop = self._sift(g, levels)
            if not residue.is_identity():
                self._install(levels, residue, drop)

        if strong:
            rng = random.Random(settings.SEED)
            walker = _ProductReplacement(strong, rng, degree)
            stable = 0
            while True:
                if self._known_order is not None:
                    current = prod(len(level.tree) for level in levels)
                    if current == self._known_order:
                        break
                    if current > self._known_order:
                        raise PreconditionError(f"group order exceeds the supplied order {self._known_order}")
                elif stable >= settings.SCHREIER_SIMS_STABLE_ROUNDS:
                    break
                residue, drop = self._sift(walker.next(), levels)
                if residue.is_identity():
                    stable += 1
                else:
                    stable = 0
                    self._install(levels, residue, drop)
            if self._known_order is None:
                self._verify(levels)

        logger.debug(
            "chain_built",
            degree=degree,
            order=prod(len(level.tree) for level in levels),
            base_length=len(levels),
        )
        return levels

    def _verify(self, levels: list[_Level]) -> None:
        """Deterministic completion: every Schreier generator sifts to the identity."""
        degree = self.degree
        index = len(levels) - 1
        while index >= 0:
            level = levels[index]
            restart = None
            for p in list(level.tree):
                u = level.transversal(p, degree)
                for s in level.generators:
                    schreier = level.trace(u * s)
                    residue, drop = self._sift(schreier, levels, index + 1)
                    if not residue.is_identity():
                        restart = self._install(levels, residue, drop)
                        break
                if restart is not None:
                    break
            if restart is None:
                index -= 1
            else:
                index = restart

    # Chain queries

    def order(self) -> int:
        if self._levels is None and self._known_order is not None:
            return self._known_order
        return prod(len(level.tree) for level in self._chain)

    def base(self) -> tuple[int, ...]:
        """1-based base points."""
        return tuple(level.point + 1 for level in self._chain)

    def basic_orbit_lengths(self) -> tuple[int, ...]:
        return tuple(len(level.tree) for level in self._chain)

    def strong_generators(self) -> tuple[Permutation, ...]:
        levels = self._chain
        return tuple(levels[0].generators) if levels else ()

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        residue, _ = self._sift(g, self._chain)
        return residue.is_identity()

    def __contains__(self, g: Permutation) -> bool:
        return self.contains(g)

    def is_trivial(self) -> bool:
        return all(g.is_identity() for g in self.generators)

    def random_element(self, rng: random.Random) -> Permutation:
        g = Permutation.identity(self.degree)
        for level in reversed(self._chain):
            point = rng.choice(sorted(level.tree))
            g = g * level.transversal(point, self.degree)
        return g

    def elements(self) -> Iterator[Permutation]:
        levels = self._chain
        transversals = [[level.transversal(p, self.degree) for p in sorted(level.tree)] for level in levels]

        def walk(depth: int, g: Permutation) -> Iterator[Permutation]:
            if depth < 0:
                yield g
                return
            for u in transversals[depth]:
                yield from walk(depth - 1, g * u)

        yield from walk(len(levels) - 1, Permutation.identity(self.degree))

    def with_base(self, base: Sequence[int]) -> PermutationGroup:
        base = tuple(base)
        if self._levels is not None and self.base()[: len(base)] == tuple(p + 1 for p in base):
            return self
        return PermutationGroup(self.generators, self.degree, base=base, known_order=self.order())

    def pointwise_stabilizer(self, points: Sequence[int]) -> PermutationGroup:
        """Stabilizer of each of the given 1-based points."""
        base = tuple(point - 1 for point in points)
        for point in points:
            self._check_point(point)
        if not base:
            return self
        chain = self.with_base(base)._chain
        depth = len(base)
        order = prod(len(level.tree) for level in chain[depth:])
        generators = chain[depth].generators if depth < len(chain) else []
        return PermutationGroup(generators, self.degree, known_order=order)

    def point_stabilizer(self, point: int) -> PermutationGroup:
        return self.pointwise_stabilizer([point])

    # Orbits

    def _check_point(self, point: int) -> None:
        if not 1 <= point <= self.degree:
            raise InvalidPermutationError(f"point {point} outside 1..{self.degree}")

    def orbit(self, point: int) -> frozenset[int]:
        self._check_point(point)
        seen = {point - 1}
        frontier = [point - 1]
        for p in frontier:
            for g in self.generators:
                q = g.images[p]
                if q not in seen:
                    seen.add(q)
                    frontier.append(q)
        return frozenset(p + 1 for p in seen)

    def orbits(self) -> list[frozenset[int]]:
        remaining = set(range(1, self.degree + 1))
        partition = []
        for point in range(1, self.degree + 1):
            if point in remaining:
                orbit = self.orbit(point)
                remaining -= orbit
                partition.append(orbit)
        return partition

    def is_transitive(self) -> bool:
        return len(self.orbit(1)) == self.degree

    def transitivity_flags(self) -> TransitivityFlags:
        order = self.order()
        orbits = self.orbits()
        transitive = len(orbits) == 1
        # stabilizers within one orbit are conjugate, so one point per orbit decides
        semiregular = all(self.point_stabilizer(min(orbit)).order() == 1 for orbit in orbits)
        regular = transitive and semiregular
        if regular and order != self.degree:
            raise PreconditionError("inconsistent chain: regular group with order != degree")
        return TransitivityFlags(transitive, semiregular, regular)

    # Subgroups

    def subgroup(self, generators: Iterable[Permutation]) -> PermutationGroup:
        return PermutationGroup(list(generators), self.degree)

    def is_subgroup_of(self, other: PermutationGroup) -> bool:
        return all(other.contains(g) for g in self.generators)

    def same_as(self, other: PermutationGroup) -> bool:
        return self.degree == other.degree and self.order() == other.order() and self.is_subgroup_of(other)

    def is_normal(self, subgroup: PermutationGroup) -> bool:
        if not subgroup.is_subgroup_of(self):
            return False
        return all(
            subgroup.contains(n.conjugate(g))
            for n in subgroup.generators
            for g in self.generators
        )

    def _extended(self, extra: Sequence[Permutation], known: PermutationGroup) -> PermutationGroup:
        group = PermutationGroup(list(known.generators) + list(extra), self.degree)
        if known._levels is not None:
            # reuse the finished chain as the starting point
            levels = [_Level(level.point) for level in known._levels]
            for new, old in zip(levels, known._levels):
                new.generators = list(old.generators)
                new.inverses = list(old.inverses)
                new.tree = dict(old.tree)
            for g in extra:
                residue, drop = group._sift(g, levels)
                if not residue.is_identity():
                    group._install(levels, residue, drop)
            group._verify(levels)
            group._levels = levels
        return group

    def normal_closure(self, elements: Iterable[Permutation]) -> PermutationGroup:
        closure = PermutationGroup([g for g in elements if not g.is_identity()], self.degree)
        pending = list(closure.generators)
        while pending:
            n = pending.pop()
            for g in self.generators:
                c = n.conjugate(g)
                if not closure.contains(c):
                    closure = self._extended([c], closure)
                    pending.append(c)
        return closure

    def derived_subgroup(self) -> PermutationGroup:
        gens = self.generators
        commutators = [x.commutator(y) for i, x in enumerate(gens) for y in gens[i + 1 :]]
        return self.normal_closure(commutators)

    def derived_series(self) -> list[PermutationGroup]:
        series = [self]
        while True:
            derived = series[-1].derived_subgroup()
            if derived.order() == series[-1].order():
                return series
            series.append(derived)

    def is_solvable(self) -> bool:
        return self.derived_series()[-1].order() == 1

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(x * y == y * x for i, x in enumerate(gens) for y in gens[i + 1 :])

    def is_elementary_abelian_2_group(self) -> bool:
        return self.is_abelian() and all((g * g).is_identity() for g in self.generators)

    def is_2_group(self) -> bool:
        order = self.order()
        return order & (order - 1) == 0

    # Desk-scale structure

    def _require_desk_scale(self) -> None:
        order = self.order()
        if order > settings.DESK_ORDER_LIMIT:
            logger.warning("desk_scale_refused", order=order, limit=settings.DESK_ORDER_LIMIT)
            raise OverCapError(order, settings.DESK_ORDER_LIMIT)

    def conjugacy_class_representatives(self) -> list[Permutation]:
        """One element per conjugacy class, the smallest in image order; identity first."""
        self._require_desk_scale()
        remaining = set(self.elements())
        representatives = []
        while remaining:
            rep = min(remaining)
            klass = {rep}
            frontier = [rep]
            for x in frontier:
                for g in self.generators:
                    y = x.conjugate(g)
                    if y not in klass:
                        klass.add(y)
                        frontier.append(y)
            remaining -= klass
            representatives.append(rep)
        return representatives

    def minimal_normal_subgroups(self) -> list[PermutationGroup]:
        candidates: list[PermutationGroup] = []
        for rep in self.conjugacy_class_representatives():
            if rep.is_identity():
                continue
            closure = self.normal_closure([rep])
            if not any(closure.same_as(known) for known in candidates):
                candidates.append(closure)
        minimal = [
            n for n in candidates
            if not any(m.order() < n.order() and m.is_subgroup_of(n) for m in candidates)
        ]
        minimal.sort(key=lambda n: (n.order(), sorted(g.images for g in n.generators)))
        return minimal

    def is_simple(self) -> bool:
        order = self.order()
        if order == 1:
            return False
        return all(
            self.normal_closure([rep]).order() == order
            for rep in self.conjugacy_class_representatives()
            if not rep.is_identity()
        )

    def minimal_block(self, alpha: int, beta: int) -> frozenset[int]:
        """Smallest block of imprimitivity containing two 1-based points."""
        blocks = UnionFind(range(self.degree))
        blocks.union(alpha - 1, beta - 1)
        pending = [(alpha - 1, beta - 1)]
        while pending:
            x, y = pending.pop()
            for g in self.generators:
                rx, ry = blocks[g.images[x]], blocks[g.images[y]]
                if rx != ry:
                    blocks.union(rx, ry)
                    pending.append((rx, ry))
        root = blocks[alpha - 1]
        return frozenset(p + 1 for p in range(self.degree) if blocks[p] == root)

    def is_primitive(self) -> bool:
        if not self.is_transitive():
            return False
        return all(len(self.minimal_block(1, beta)) == self.degree for beta in range(2, self.degree + 1))
