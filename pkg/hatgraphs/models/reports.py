"""Report models returned by the engines; every field is plain data so reports serialize as JSON."""

from typing import Literal

from pydantic import BaseModel, ConfigDict


class Report(BaseModel):
    model_config = ConfigDict(frozen=True)


class ConcentricRejection(Report):
    accepted: Literal[False] = False
    condition: Literal["empty", "involution", "window_order", "phi_conflict", "phi_not_injective", "order"]
    message: str
    index: int | None = None
    window: tuple[int, int] | None = None
    observed_order: int | None = None
    # relation among a1..a(n-1) whose shifted image is not the identity
    witness_word: tuple[int, ...] | None = None


class HypothesisStatus(Report):
    """A hypothesis that is either computed or, above desk scale, assumed."""

    status: Literal["verified", "failed", "assumed"]
    detail: str | None = None


class ConditionsReport(Report):
    degree: int
    n: int
    c1_generation: bool
    c2_regular_involutions: bool
    c3_window_orders: bool
    c4_shift_conjugation: bool
    first_failure: int | None = None
    failed_window: tuple[int, int] | None = None
    w_order: int
    w_simple: HypothesisStatus
    w_primitive: HypothesisStatus

    @property
    def passed(self) -> bool:
        return self.c1_generation and self.c2_regular_involutions and self.c3_window_orders and self.c4_shift_conjugation


class TransitivityReport(Report):
    group_used: Literal["supplied", "full_automorphism_group"]
    group_order: int
    vertex_count: int
    edge_count: int
    vertex_transitive: bool
    edge_transitive: bool
    arc_transitive: bool
    hat: bool
    vertex_orbits: int
    edge_orbits: int
    arc_orbits: int
    arc_orbit_sizes: list[int]
    stabilizer_order: int
    stabilizer_generators: list[str]
    stabilizer_concentric: bool | None = None
    stabilizer_concentric_generators: list[str] | None = None
    stabilizer_elementary_abelian: bool


class QuotientResult(Report):
    orbit_partition: list[list[int]]
    quotient_vertices: int
    quotient_edges: list[tuple[int, int]]
    original_valency: int
    quotient_valency: int
    degenerate: bool
    is_normal_cover: bool
    n_semiregular: bool
    n_order: int
    n_solvable: bool | None = None
    g_solvable: bool | None = None
    # normal cover + semiregular forced for solvable N in a non-solvable G-HAT action
    solvable_lemma_applies: bool = False
    solvable_lemma_holds: bool | None = None


class NormalSubgroupSummary(Report):
    order: int
    orbits: int
    quotient_valency: int
    abelian: bool
    generators: list[str]


class BasicClassification(Report):
    outcome: Literal["not_basic", "quasiprimitive", "bi_quasiprimitive", "cycle_type"]
    relative_to_supplied_list: bool
    witness: NormalSubgroupSummary | None = None
    normal_subgroups: list[NormalSubgroupSummary]
    # unique non-abelian minimal normal subgroup when the stabilizer is non-abelian
    socle_check: HypothesisStatus | None = None
    aut_clause: HypothesisStatus | None = None
    cycle_length: int | None = None


class CayleyNormalityReport(Report):
    group_order: int
    connection_set_size: int
    aut_order: int
    regular_normal: bool
    aut_group_s_order: int
    normalizer_order: int
    normalizer_matches: bool
    stabilizer_faithful_on_neighbourhood: bool


class BasicReduction(Report):
    n_order: int
    quotient_vertices: int
    quotient_valency: int
    induced_group_order: int
    quotient_hat: bool
    kernel_semiregular: bool


class GroupSummary(Report):
    degree: int
    order: int
    base: list[int]
    basic_orbit_lengths: list[int]
    transitive: bool
    semiregular: bool
    regular: bool


class AutomorphismSummary(Report):
    vertex_count: int
    order: int
    generators: list[str]
