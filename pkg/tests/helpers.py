import re

from hatgraphs.core.graphs import Graph
from hatgraphs.core.groups import PermutationGroup
from hatgraphs.core.permutations import Permutation


def perm(cycles: str, degree: int) -> Permutation:
    """Cycle notation such as '(1 2 3)(4 5)'."""
    return Permutation.from_cycles(
        [tuple(int(p) for p in body.split()) for body in re.findall(r"\(([^()]*)\)", cycles) if body.strip()], degree
    )


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def dihedral_on_cycle(n: int) -> PermutationGroup:
    """Rotations and reflections of the n-cycle, on its 0-based vertices."""
    rotation = Permutation([(i + 1) % n for i in range(n)])
    reflection = Permutation([(-i) % n for i in range(n)])
    return PermutationGroup([rotation, reflection], n)


def rotation_power(n: int, k: int) -> PermutationGroup:
    return PermutationGroup([Permutation([(i + k) % n for i in range(n)])], n)


def metacyclic_cayley(n: int, k: int) -> tuple[Graph, PermutationGroup]:
    """Cay(Z_n, {±1, ±k}) with the translations and the multiplication by k, for k^2 = 1 mod n."""
    graph = Graph.from_edges(n, [(i, (i + s) % n) for i in range(n) for s in (1, k)])
    group = PermutationGroup([Permutation([(i + 1) % n for i in range(n)]), Permutation([k * i % n for i in range(n)])])
    return graph, group


def involutive_multipliers(limit: int) -> list[tuple[int, int]]:
    """Pairs (n, k) with k^2 = 1 mod n and 1, -1, k, -k distinct."""
    return [(n, k) for n in range(5, limit) for k in range(2, n - 1) if k * k % n == 1 and 2 * k % n]
