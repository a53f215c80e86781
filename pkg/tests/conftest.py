import networkx as nx
import pytest

from hatgraphs.config import settings
from hatgraphs.core.concentric import catalog
from hatgraphs.core.elements import ElementSet
from hatgraphs.core.graphs import Graph
from hatgraphs.core.groups import PermutationGroup
from hatgraphs.core.permutations import Permutation
from tests.helpers import perm


@pytest.fixture(autouse=True)
def restore_settings():
    snapshot = settings.model_dump()
    yield
    for name, value in snapshot.items():
        setattr(settings, name, value)


@pytest.fixture
def d8_gens() -> list[Permutation]:
    """r = (1 2 3 4), s = (2 4)."""
    return [perm("(1 2 3 4)", 4), perm("(2 4)", 4)]


@pytest.fixture
def d8_concentric() -> list[Permutation]:
    """s, r^2, rs."""
    return [perm("(2 4)", 4), perm("(1 3)(2 4)", 4), perm("(1 4)(2 3)", 4)]


@pytest.fixture(scope="session")
def d8_regular():
    return catalog("D8")


@pytest.fixture
def klein() -> ElementSet:
    return ElementSet.from_generators([perm("(1 2)(3 4)", 4), perm("(1 3)(2 4)", 4)])


@pytest.fixture
def s3() -> PermutationGroup:
    return PermutationGroup([perm("(1 2)", 3), perm("(1 2 3)", 3)])


@pytest.fixture
def a4() -> PermutationGroup:
    return PermutationGroup([perm("(1 2 3)", 4), perm("(2 3 4)", 4)])


@pytest.fixture
def a8() -> PermutationGroup:
    return PermutationGroup([perm("(1 2 3)", 8), perm("(2 3 4 5 6 7 8)", 8)])


@pytest.fixture
def k4() -> Graph:
    return Graph.from_networkx(nx.complete_graph(4))


@pytest.fixture
def petersen() -> Graph:
    return Graph.from_networkx(nx.petersen_graph())
