"""
Certificate documents written by the command line.

Field order is fixed by the model definitions, so serializing the same
certificate twice gives identical bytes.
"""
import hashlib
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field


class Check(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    anchor: str
    result: bool
    witness: str | None = None


class CertificateDocument(BaseModel):
    command: str
    # false for instances below the hypotheses of the statement: checks are reported, not certified
    asserted: bool = True
    inputs: dict[str, str] = Field(default_factory=dict)
    interpretation_notes: list[str] = Field(default_factory=list)
    checks: list[Check] = Field(default_factory=list)
    data: dict[str, Any] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(check.result for check in self.checks)

    def failed(self) -> list[Check]:
        return [check for check in self.checks if not check.result]

    def add(self, name: str, result: bool, witness: object = None) -> None:
        self.checks.append(
            Check(name=name, anchor=ANCHORS[name], result=bool(result), witness=None if witness is None else str(witness))
        )

    def to_json(self) -> str:
        return self.model_dump_json(indent=2) + "\n"


def file_digest(path: Path) -> str:
    return "sha256:" + hashlib.sha256(path.read_bytes()).hexdigest()


def text_digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode()).hexdigest()


# check name -> the statement it certifies
ANCHORS: dict[str, str] = {
    # concentric groups
    "involutions": "every a_i is an involution",
    "window_orders": "|<a_i,...,a_j>| = 2^(j-i+1) for all 1 <= i < j <= n",
    "shift_isomorphism": "phi: <a_1..a_(n-1)> -> <a_2..a_n> is an isomorphism with a_i -> a_(i+1)",
    "group_order": "|H| = 2^n",
    # tau_h construction
    "tau_fixes_identity": "tau_h fixes the identity point",
    "conjugation_shift": "tau_h^-1 R(a_i) tau_h = R(a_(i+1)) for i < n",
    "core_free": "R(H) is core-free in G = <tau_h, R(H)>",
    "double_cosets_unequal": "R(H) tau_h R(H) != R(H) tau_h^-1 R(H)",
    "self_intersection_index": "|R(H) : R(H) ∩ R(H)^tau_h| = 2",
    "generation": "G = <R(H), tau_h> (connected coset graph)",
    "stabilizer_order": "|G_1| = |G| / 2^n, so the coset graph is a Cayley graph of G_1",
    "shifted_intersection": "R(H)^tau_h ∩ R(H) = <R(a_2),...,R(a_n)>",
    # wreath construction
    "c1_generation": "(C1) W = <H, a>",
    "c2_regular_involutions": "(C2) h_i are involutions and H is regular on Delta",
    "c3_window_orders": "(C3) |<h_i,...,h_j>| = 2^(j-i+1)",
    "c4_shift_conjugation": "(C4) h_i^a = h_(i+1) for i < n",
    "w_simple": "W is non-abelian simple",
    "w_primitive": "W is primitive on Delta",
    "tau_power": "tau^m = 1",
    "block_conjugates": "H_i = H_0^(tau^i)",
    "power_restriction": "the restriction of (a tau)^m to Delta_0 equals a",
    "conjugation_chain": "a tau conjugates h_1^(tau^(m-1)) -> h_1 -> h_2^tau -> ... -> h_n",
    "wreath_generation": "(i) G = <K, a tau>",
    "wreath_intersection_index": "(ii) |K : K^(a tau) ∩ K| = 2",
    "wreath_double_cosets_unequal": "(iii) K (a tau) K != K (a tau)^-1 K",
    "wreath_core_free": "(iv) K is core-free in G",
    "wreath_shift_subgroups": "(v) B^(a tau) = C",
    "normal_closure_is_w": "the normal closure of H_0 in <(a tau)^m, H_0> restricted to Delta_0 is W",
    "socle_factors": "soc(G) = W x W^tau x ... x W^(tau^(m-1)) with tau transitive on the factors",
    # Cayley structure for m = 2
    "x_meets_k_trivially": "X ∩ K = 1 for X the stabilizer of the pair {1, 1 + 2^n}",
    "x_complements_k": "|X| |K| = |G|",
    "a_tau_in_x": "a tau lies in X",
    "connection_element_in_x": "h a tau h_1^tau lies in X",
    "same_coset": "K a tau h_1^tau = K (h a tau h_1^tau)",
    "s_generates_w1": "S = {a, h a h_1, a^-1, (h a h_1)^-1} generates W_1",
    # graphs
    "hat": "vertex- and edge-transitive but not arc-transitive",
    "connected": "the coset graph is connected",
    "tetravalent": "the coset graph has valency 4",
    "coset_stabilizer_order": "the stabilizer of the vertex H in the coset action has order |H|",
    "arc_orbits_halve": "each arc orbit has |E| arcs",
    "stabilizer_concentric": "the vertex stabilizer of a tetravalent G-HAT graph is concentric",
    "stabilizer_elementary_abelian": "a solvable G-HAT group has elementary abelian vertex stabilizers",
    "normal_cover": "solvable normal N of a non-solvable G gives a normal cover with N semiregular",
    "valency_formula": "coset graph valency is |H:H^g ∩ H| or 2|H:H^g ∩ H|",
    "regular_normal": "R(G) is normal in Aut(Cay(G,S))",
    "normalizer_order": "the normalizer of R(G) in Aut(Cay(G,S)) is R(G) ⋊ Aut(G,S)",
    "stabilizer_faithful": "N_v is faithful on the neighbourhood of v",
    "quotient_valency": "a normal quotient has valency at most that of the graph",
    "socle_unique_nonabelian": "a basic pair with non-abelian stabilizers has a non-abelian minimal normal socle",
    "reduction_basic": "the quotient by a maximal normal-cover subgroup is tetravalent and G/N-HAT with N semiregular",
}
