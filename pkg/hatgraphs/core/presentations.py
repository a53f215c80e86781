"""
Finite presentations, coset enumeration and regular representations.

Words are tuples of signed 1-based generator indices: ``(1, 6, 1, 6, -3)`` is
a1 a6 a1 a6 a3^-1.
"""
from __future__ import annotations

from collections.abc import Sequence
from typing import NamedTuple

import structlog
from pydantic import BaseModel, ConfigDict, model_validator

from hatgraphs.config import settings
from hatgraphs.core.elements import ElementSet
from hatgraphs.core.groups import PermutationGroup
from hatgraphs.core.permutations import Permutation
from hatgraphs.exceptions import CosetLimitExceeded, FalsificationError, PreconditionError

logger = structlog.get_logger(__name__)

Word = tuple[int, ...]


class FinitePresentation(BaseModel):
    model_config = ConfigDict(frozen=True)

    generator_count: int
    relators: tuple[Word, ...]

    @model_validator(mode="after")
    def check_words(self) -> FinitePresentation:
        if self.generator_count < 1:
            raise ValueError("a presentation needs at least one generator")
        for word in self.relators:
            if not word:
                raise ValueError("relators must be nonempty")
            for letter in word:
                if letter == 0 or abs(letter) > self.generator_count:
                    raise ValueError(f"letter {letter} outside generators 1..{self.generator_count}")
        return self

    def evaluate(self, word: Word, images: Sequence[Permutation]) -> Permutation:
        inverses = [g.inverse() for g in images]
        result = Permutation.identity(images[0].degree)
        for letter in word:
            result = result * (images[letter - 1] if letter > 0 else inverses[-letter - 1])
        return result


class CosetEnumeration(NamedTuple):
    index: int
    # rows are cosets, columns are a1, a1^-1, a2, a2^-1, ...
    table: list[list[int]]
    permutations: list[Permutation]


class _OutOfSpace(Exception):
    pass


class _CosetTable:
    """HLT enumeration over the trivial subgroup with coincidence processing."""

    def __init__(self, presentation: FinitePresentation, max_cosets: int):
        self.columns = 2 * presentation.generator_count
        # relators in column indices
        self.relators = [
            [2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1 for letter in word]
            for word in presentation.relators
        ]
        self.max_cosets = max_cosets
        self.table: list[list[int]] = [[-1] * self.columns]
        self.parent = [0]
        self.live = 1

    @staticmethod
    def inverse(column: int) -> int:
        return column ^ 1

    def rep(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def is_live(self, c: int) -> bool:
        return self.parent[c] == c

    def define(self, c: int, x: int) -> int:
        if self.live >= self.max_cosets:
            raise _OutOfSpace
        d = len(self.table)
        self.table.append([-1] * self.columns)
        self.parent.append(d)
        self.live += 1
        self.table[c][x] = d
        self.table[d][self.inverse(x)] = c
        return d

    def _merge(self, k: int, l: int, queue: list[int]) -> None:
        k, l = self.rep(k), self.rep(l)
        if k == l:
            return
        low, high = min(k, l), max(k, l)
        self.parent[high] = low
        self.live -= 1
        queue.append(high)

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self._merge(a, b, queue)
        for e in queue:
            for x in range(self.columns):
                f = self.table[e][x]
                if f == -1:
                    continue
                ix = self.inverse(x)
                if self.table[f][ix] == e:
                    self.table[f][ix] = -1
                e1, f1 = self.rep(e), self.rep(f)
                if self.table[e1][x] != -1:
                    self._merge(f1, self.table[e1][x], queue)
                elif self.table[f1][ix] != -1:
                    self._merge(e1, self.table[f1][ix], queue)
                else:
                    self.table[e1][x] = f1
                    self.table[f1][ix] = e1

    def scan(self, c: int, word: list[int], fill: bool) -> None:
        table = self.table
        f = b = c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and table[f][word[i]] != -1:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[b][self.inverse(word[j])] != -1:
                b = table[b][self.inverse(word[j])]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][self.inverse(word[i])] = f
                return
            if not fill:
                return
            self.define(f, word[i])

    def lookahead(self) -> None:
        for c in range(len(self.table)):
            if not self.is_live(c):
                continue
            for word in self.relators:
                self.scan(c, word, fill=False)
                if not self.is_live(c):
                    break

    def run(self) -> None:
        c = 0
        while c < len(self.table):
            if not self.is_live(c):
                c += 1
                continue
            try:
                for word in self.relators:
                    self.scan(c, word, fill=True)
                    if not self.is_live(c):
                        break
                if self.is_live(c):
                    for x in range(self.columns):
                        if self.table[c][x] == -1:
                            self.define(c, x)
            except _OutOfSpace:
                before = self.live
                self.lookahead()
                logger.debug("coset_lookahead", live_before=before, live_after=self.live)
                if self.live >= self.max_cosets:
                    raise CosetLimitExceeded(self.max_cosets) from None
                continue
            c += 1

    def compact(self) -> list[list[int]]:
        live = [c for c in range(len(self.table)) if self.is_live(c)]
        number = {c: i for i, c in enumerate(live)}
        return [[number[self.rep(self.table[c][x])] for x in range(self.columns)] for c in live]


def todd_coxeter(presentation: FinitePresentation, max_cosets: int | None = None) -> CosetEnumeration:
    max_cosets = max_cosets if max_cosets is not None else settings.MAX_COSETS
    if max_cosets < 1:
        raise PreconditionError("max_cosets must be at least 1")
    enumerator = _CosetTable(presentation, max_cosets)
    try:
        enumerator.run()
    except CosetLimitExceeded:
        logger.warning("coset_limit_exceeded", max_cosets=max_cosets, defined=len(enumerator.table))
        raise
    table = enumerator.compact()
    index = len(table)
    permutations = [Permutation([row[2 * i] for row in table]) for i in range(presentation.generator_count)]

    for k, word in enumerate(presentation.relators):
        if not presentation.evaluate(word, permutations).is_identity():
            raise FalsificationError("relators_hold", witness=k)
    if index <= settings.ENUMERATION_LIMIT:
        group = PermutationGroup(permutations, index)
        flags = group.transitivity_flags()
        if not flags.regular or group.order() != index:
            raise FalsificationError("coset_action_regular", witness=index)

    logger.info("cosets_enumerated", index=index, defined=len(enumerator.table))
    return CosetEnumeration(index=index, table=table, permutations=permutations)


def h7_presentation() -> FinitePresentation:
    """The order-128 concentric group on seven involutions.

    Involutions a1..a7; (ai aj)^2 = 1 whenever j - i <= 4; and
    (a1 a6)^2 = a3, (a2 a7)^2 = a4, (a1 a7)^2 = a5.
    """
    relators: list[Word] = [(i, i) for i in range(1, 8)]
    relators += [(i, j, i, j) for i in range(1, 8) for j in range(i + 1, 8) if j - i <= 4]
    relators += [(1, 6, 1, 6, -3), (2, 7, 2, 7, -4), (1, 7, 1, 7, -5)]
    return FinitePresentation(generator_count=7, relators=tuple(relators))


def regular_rep_from_multiplication(
    elements: ElementSet, generators: Sequence[Permutation]
) -> list[Permutation]:
    """Right regular representation: R(g) sends the point of x to the point of xg.

    Points follow the canonical element order, so the identity sits wherever it
    falls lexicographically (first, for permutations).
    """
    ordered = elements.ordered()
    position = {x: i for i, x in enumerate(ordered)}
    if not generators:
        return [Permutation.identity(len(ordered))]
    rep = []
    for g in generators:
        if g not in elements:
            raise PreconditionError("generator is not an element of the set")
        rep.append(Permutation([position[x * g] for x in ordered]))
    return rep
