"""
Mathematical engines for tetravalent half-arc-transitive graphs:
- permutations, groups, elements: permutations, stabilizer chains and explicit subgroups
- presentations: Todd-Coxeter coset enumeration
- concentric: recognition, search and catalog of concentric groups
- tau_construction, wreath: the two graph constructions and their certificates
- graphs, automorphisms, quotients, cayley: graphs, Aut, transitivity and normal quotients
"""

from .permutations import Permutation
from .groups import PermutationGroup
from .elements import ElementSet, enumerate_elements
from .presentations import FinitePresentation, h7_presentation, todd_coxeter
from .concentric import ConcentricSequence, catalog, check_concentric, find_concentric_sequence
from .graphs import Graph, materialize_coset_graph
from .automorphisms import graph_automorphism_group
from .quotients import classify_basic, normal_quotient, reduce_to_basic, transitivity_report
from .cayley import aut_stabilizing_set, cayley_graph, cayley_normality_report
from .tau_construction import build_mn_instance, build_tau_h, verify_mn_instance
from .wreath import build_wreath_instance, check_c1_c4, verify_cayley_structure, verify_wreath_theorem

__all__ = [
    # Groups
    "Permutation",
    "PermutationGroup",
    "ElementSet",
    "enumerate_elements",
    "FinitePresentation",
    "h7_presentation",
    "todd_coxeter",

    # Concentric groups
    "ConcentricSequence",
    "catalog",
    "check_concentric",
    "find_concentric_sequence",

    # Graphs
    "Graph",
    "materialize_coset_graph",
    "graph_automorphism_group",
    "classify_basic",
    "normal_quotient",
    "reduce_to_basic",
    "transitivity_report",
    "aut_stabilizing_set",
    "cayley_graph",
    "cayley_normality_report",

    # Constructions
    "build_mn_instance",
    "build_tau_h",
    "verify_mn_instance",
    "build_wreath_instance",
    "check_c1_c4",
    "verify_cayley_structure",
    "verify_wreath_theorem",
]
