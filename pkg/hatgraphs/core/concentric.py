"""
Concentric sequences of involutions.

A sequence a1..an of involutions is concentric when every window
<ai..aj> has order 2^(j-i+1) and the shift ai -> a(i+1) extends to an
isomorphism phi from B = <a1..a(n-1)> onto C = <a2..an>.
"""
from __future__ import annotations

import random
import re
from collections.abc import Sequence
from typing import NamedTuple

import structlog
from pydantic import BaseModel, ConfigDict

from hatgraphs.config import settings
from hatgraphs.core.elements import ElementSet
from hatgraphs.core.permutations import Permutation, common_degree
from hatgraphs.core.presentations import h7_presentation, regular_rep_from_multiplication, todd_coxeter
from hatgraphs.exceptions import FalsificationError, HatError, OverCapError, PreconditionError
from hatgraphs.models.reports import ConcentricRejection
from hatgraphs.utils.workers import first_success

logger = structlog.get_logger(__name__)


class ConcentricSequence(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    gens: tuple[Permutation, ...]
    group: ElementSet
    b_set: ElementSet
    c_set: ElementSet
    phi: dict[Permutation, Permutation]

    @property
    def degree(self) -> int:
        return self.gens[0].degree

    def shift(self, b: Permutation) -> Permutation:
        return self.phi[b]

    def verify_homomorphism(self, sample: int | None = None, seed: int | None = None) -> bool:
        """phi(xy) = phi(x) phi(y) over all pairs of B, or a seeded sample of them."""
        elements = self.b_set.ordered()
        phi = self.phi
        if sample is None and len(elements) <= 2**10:
            pairs = ((x, y) for x in elements for y in elements)
        else:
            rng = random.Random(settings.SEED if seed is None else seed)
            count = sample if sample is not None else 4096
            pairs = ((rng.choice(elements), rng.choice(elements)) for _ in range(count))
        return all(phi[x * y] == phi[x] * phi[y] for x, y in pairs)


class _ShiftMap(NamedTuple):
    phi: dict[Permutation, Permutation] | None
    witness: tuple[int, ...] | None


def _shift_map(sources: Sequence[Permutation], targets: Sequence[Permutation], degree: int) -> _ShiftMap:
    """Labelled breadth-first closure of <sources> with phi(x s_i) = phi(x) t_i.

    A clash between two paths yields the relation among the sources that the
    targets do not satisfy, as a word in 1-based source indices.
    """
    identity = Permutation.identity(degree)
    phi = {identity: identity}
    words: dict[Permutation, tuple[int, ...]] = {identity: ()}
    frontier = [identity]
    for x in frontier:
        for i, (s, t) in enumerate(zip(sources, targets), start=1):
            y = x * s
            image = phi[x] * t
            if y not in phi:
                phi[y] = image
                words[y] = words[x] + (i,)
                frontier.append(y)
            elif phi[y] != image:
                # every letter is an involution, so the inverse word is the reversal
                return _ShiftMap(None, words[x] + (i,) + tuple(reversed(words[y])))
    return _ShiftMap(phi, None)


def _window(gens: Sequence[Permutation], degree: int, i: int, j: int) -> ElementSet | int:
    """<a_i..a_j> as an element set, or the order reached when it outgrows 2^(j-i+1)."""
    expected = 2 ** (j - i + 1)
    try:
        return ElementSet.from_generators(gens[i - 1 : j], degree, cap=expected)
    except OverCapError as e:
        return e.order


def check_concentric(gens: Sequence[Permutation]) -> ConcentricSequence | ConcentricRejection:
    if not gens:
        return ConcentricRejection(condition="empty", message="no generators supplied")
    gens = tuple(gens)
    degree = common_degree(gens)
    n = len(gens)

    for index, a in enumerate(gens, start=1):
        if not a.is_involution():
            return ConcentricRejection(
                condition="involution", index=index, message=f"a{index} is not an involution"
            )

    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            window = _window(gens, degree, i, j)
            order = len(window) if isinstance(window, ElementSet) else window
            if order != 2 ** (j - i + 1):
                observed = f">{order - 1}" if not isinstance(window, ElementSet) else str(order)
                return ConcentricRejection(
                    condition="window_order",
                    window=(i, j),
                    observed_order=order if isinstance(window, ElementSet) else None,
                    message=f"|<a{i}..a{j}>| = {observed}, expected {2 ** (j - i + 1)}",
                )

    group = ElementSet.from_generators(gens, degree)
    if len(group) != 2**n:
        return ConcentricRejection(
            condition="order", observed_order=len(group), message=f"|H| = {len(group)}, expected {2**n}"
        )

    b_set = ElementSet.from_generators(gens[:-1], degree)
    c_set = ElementSet.from_generators(gens[1:], degree)
    shift = _shift_map(gens[:-1], gens[1:], degree)
    if shift.phi is None:
        return ConcentricRejection(
            condition="phi_conflict",
            witness_word=shift.witness,
            message="the shift a_i -> a_(i+1) is not a homomorphism on <a1..a(n-1)>",
        )
    if len(set(shift.phi.values())) != len(b_set) or set(shift.phi.values()) != c_set.elements:
        return ConcentricRejection(condition="phi_not_injective", message="the shift map is not a bijection onto C")

    if group.is_abelian() and any(not (g * g).is_identity() for g in group.elements):
        logger.critical("abelian_concentric_not_elementary", degree=degree, n=n)
        raise FalsificationError("abelian_concentric_elementary")

    return ConcentricSequence(n=n, gens=gens, group=group, b_set=b_set, c_set=c_set, phi=shift.phi)


# Search


def _extend_closure(elements: frozenset[Permutation], gens: Sequence[Permutation], new: Permutation, cap: int) -> frozenset[Permutation] | None:
    all_gens = list(gens) + [new]
    seen = set(elements)
    frontier = list(elements)
    for x in frontier:
        for g in all_gens:
            y = x * g
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    return None
                frontier.append(y)
    return frozenset(seen)


class _Search:
    """Backtracking over involutions; windows are checked on suffixes as each a_j is placed."""

    def __init__(self, group: ElementSet, n: int, candidates: Sequence[Permutation]):
        self.group = group
        self.n = n
        self.degree = group.degree
        self.candidates = list(candidates)
        self.nodes = 0

    def run(self, prefix: Sequence[Permutation] = ()) -> ConcentricSequence | None:
        identity = Permutation.identity(self.degree)
        seq: list[Permutation] = []
        # windows[k][i] is <a_(i+1)..a_(k+1)> for the sequence placed so far
        windows: list[list[frozenset[Permutation]]] = []
        for a in prefix:
            extended = self._place(seq, windows, a, identity)
            if extended is None:
                return None
            seq.append(a)
            windows.append(extended)
        return self._descend(seq, windows, identity)

    def _place(self, seq, windows, a, identity) -> list[frozenset[Permutation]] | None:
        j = len(seq) + 1
        if a in seq:
            return None
        row: list[frozenset[Permutation]] = [frozenset()] * j
        row[j - 1] = frozenset((identity, a))
        for i in range(j - 1, 0, -1):
            # <a_i..a_j> from <a_i..a_(j-1)> plus a
            closure = _extend_closure(windows[j - 2][i - 1], seq[i - 1 :], a, 2 ** (j - i + 1))
            if closure is None or len(closure) != 2 ** (j - i + 1):
                return None
            row[i - 1] = closure
        # the shift <a_1..a_(j-1)> -> <a_2..a_j> must already be well defined
        if j >= 2 and _shift_map(seq, seq[1:] + [a], self.degree).phi is None:
            return None
        return row

    def _descend(self, seq, windows, identity) -> ConcentricSequence | None:
        if len(seq) == self.n:
            result = check_concentric(seq)
            return result if isinstance(result, ConcentricSequence) else None
        for a in self.candidates:
            self.nodes += 1
            row = self._place(seq, windows, a, identity)
            if row is None:
                continue
            seq.append(a)
            windows.append(row)
            found = self._descend(seq, windows, identity)
            if found is not None:
                return found
            seq.pop()
            windows.pop()
        return None


def _search_order(group: ElementSet) -> list[Permutation]:
    involutions = group.involutions()
    return sorted(involutions, key=lambda g: (-group.centralizer_size(g), g.images))


def _search_from_first(task: tuple[ElementSet, int, list[Permutation], Permutation]) -> ConcentricSequence | None:
    group, n, candidates, first = task
    return _Search(group, n, candidates).run([first])


def find_concentric_sequence(group: ElementSet, n: int, jobs: int | None = None) -> ConcentricSequence | None:
    """Exhaustive search for a concentric generating sequence of ``group``; None when none exists."""
    if n < 1 or len(group) != 2**n:
        raise PreconditionError(f"|H| = {len(group)} is not 2^{n}")
    candidates = _search_order(group)
    tasks = [(group, n, candidates, first) for first in candidates]
    found = first_success(_search_from_first, tasks, jobs)
    logger.info("concentric_search_finished", order=len(group), n=n, found=found is not None, involutions=len(candidates))
    return found


# Catalog

_CATALOG = re.compile(r"^(?:(?P<z>Z2\^(?P<zm>\d+))|(?P<d>D8(?:xZ2\^(?P<dm>\d+))?)|(?P<dd>D8\^2(?:xZ2\^(?P<ddm>\d+))?)|(?P<h>H7)|(?P<hz>H7xZ2))$")


class CatalogEntry(NamedTuple):
    family: str
    m: int
    order: int


def parse_catalog_name(name: str) -> CatalogEntry:
    match = _CATALOG.match(name.strip())
    if match is None:
        raise PreconditionError(
            f"unknown concentric family {name!r}; expected Z2^m, D8xZ2^m, D8^2xZ2^m, H7 or H7xZ2"
        )
    if match["z"]:
        m = int(match["zm"])
        if m < 1:
            raise PreconditionError("Z2^m needs m >= 1")
        return CatalogEntry("Z2^m", m, 2**m)
    if match["d"]:
        m = int(match["dm"] or 0)
        return CatalogEntry("D8xZ2^m", m, 8 * 2**m)
    if match["dd"]:
        m = int(match["ddm"] or 0)
        return CatalogEntry("D8^2xZ2^m", m, 64 * 2**m)
    if match["h"]:
        return CatalogEntry("H7", 0, 128)
    return CatalogEntry("H7xZ2", 1, 256)


def _z2() -> list[Permutation]:
    return [Permutation.from_cycles([(1, 2)], 2)]


def _d8() -> list[Permutation]:
    return [Permutation.from_cycles([(1, 2, 3, 4)], 4), Permutation.from_cycles([(2, 4)], 4)]


def _h7() -> list[Permutation]:
    return todd_coxeter(h7_presentation()).permutations


def direct_product(factors: Sequence[Sequence[Permutation]]) -> list[Permutation]:
    degrees = [common_degree(factor) for factor in factors]
    total = sum(degrees)
    generators = []
    offset = 0
    for factor, degree in zip(factors, degrees):
        generators.extend(g.extend(total, offset) for g in factor)
        offset += degree
    return generators


def small_representation(entry: CatalogEntry) -> list[Permutation]:
    """A faithful permutation representation of small degree for a catalog group."""
    factors: list[list[Permutation]]
    if entry.family == "Z2^m":
        factors = [_z2() for _ in range(entry.m)]
    elif entry.family == "D8xZ2^m":
        factors = [_d8()] + [_z2() for _ in range(entry.m)]
    elif entry.family == "D8^2xZ2^m":
        factors = [_d8(), _d8()] + [_z2() for _ in range(entry.m)]
    elif entry.family == "H7":
        factors = [_h7()]
    else:
        factors = [_h7(), _z2()]
    return direct_product(factors)


def transport_to_regular(sequence: ConcentricSequence) -> ConcentricSequence:
    """The same sequence realized by right multiplication on the canonically ordered group elements."""
    order = len(sequence.group)
    if order > settings.MAX_REGULAR_CARRIER:
        raise OverCapError(order, settings.MAX_REGULAR_CARRIER)
    regular = regular_rep_from_multiplication(sequence.group, sequence.gens)
    result = check_concentric(regular)
    if not isinstance(result, ConcentricSequence):
        raise HatError(f"regular carrier lost the concentric property: {result.message}")
    return result


def catalog(name: str, carrier: str = "regular", jobs: int | None = None) -> ConcentricSequence:
    entry = parse_catalog_name(name)
    if entry.order > settings.CATALOG_ORDER_LIMIT:
        raise OverCapError(entry.order, settings.CATALOG_ORDER_LIMIT)
    if carrier not in ("regular", "small"):
        raise PreconditionError(f"carrier must be 'regular' or 'small', got {carrier!r}")
    generators = small_representation(entry)
    group = ElementSet.from_generators(generators, cap=entry.order)
    n = entry.order.bit_length() - 1
    found = find_concentric_sequence(group, n, jobs)
    if found is None:
        raise HatError(f"internal inconsistency: no concentric sequence found for {name}")
    logger.info("catalog_built", name=name, n=n, order=entry.order, carrier=carrier)
    if carrier == "small":
        return found
    return transport_to_regular(found)
