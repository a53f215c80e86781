import os
from pathlib import Path
from typing import Annotated

import structlog
import typer

from hatgraphs.api.output import emit, emit_certificate
from hatgraphs.core.concentric import ConcentricSequence
from hatgraphs.core.permutations import Permutation
from hatgraphs.core.tau_construction import COSET_REPRESENTATIVE_NOTE, admissible_h, build_mn_instance
from hatgraphs.core.wreath import build_wreath_instance, search_shift_element
from hatgraphs.exceptions import PreconditionError
from hatgraphs.models.certificates import CertificateDocument, file_digest
from hatgraphs.utils.formats import read_ccs, read_group, read_wri, write_group, write_wri

logger = structlog.get_logger(__name__)

app = typer.Typer(help="Build the tau_h and wreath constructions.", no_args_is_help=True)

CcsFile = Annotated[Path, typer.Option("--ccs", exists=True, dir_okay=False, help="Concentric witness (.ccs)")]
WriFile = Annotated[Path, typer.Option("--wri", exists=True, dir_okay=False, help="Wreath instance (.wri)")]
Output = Annotated[Path | None, typer.Option("-o", "--output")]


def resolve_h(sequence: ConcentricSequence, choice: str) -> list[Permutation]:
    """'e' for the identity, 'all' for every admissible h, or a 1-based index into the canonical order of H."""
    if choice == "all":
        return admissible_h(sequence)
    if choice == "e":
        return [sequence.group.identity()]
    if not choice.isdigit() or not 1 <= int(choice) <= len(sequence.group):
        raise typer.BadParameter(f"--h must be 'e', 'all' or an index in 1..{len(sequence.group)}")
    return [sequence.group.ordered()[int(choice) - 1]]


@app.command("mn")
def mn(
    ccs: CcsFile,
    h: Annotated[str, typer.Option("--h", help="'e', 'all' or an element index of H")] = "e",
    strict: Annotated[bool, typer.Option(help="Stop at the first failed check")] = False,
    output: Output = None,
) -> None:
    """G = <tau_h, R(H)> for a concentric H, with its certificate."""
    sequence = read_ccs(ccs)
    choices = resolve_h(sequence, h)
    certificate = CertificateDocument(
        command="construct mn", inputs={"ccs": file_digest(ccs)}, interpretation_notes=[COSET_REPRESENTATIVE_NOTE]
    )
    instances = []
    for element in choices:
        instance = build_mn_instance(sequence, element, strict=strict)
        certificate.checks.extend(instance.certificate.checks)
        instances.append(instance.certificate.data)
    if h == "all":
        admissible = set(choices)
        certificate.data["inadmissible_h"] = [
            sequence.group.index(b) + 1 for b in sequence.b_set.ordered() if b not in admissible
        ]
        certificate.data["instances"] = instances
    else:
        certificate.data.update(instances[0])
    emit_certificate(certificate, output)


@app.command("wreath")
def wreath(
    wri: WriFile,
    assume: Annotated[bool, typer.Option(help="Skip checking (C1)-(C4)")] = False,
    group_out: Annotated[Path | None, typer.Option("--group-out", help="Write G as a .grp file")] = None,
    output: Output = None,
) -> None:
    """G = <W, tau> on m copies of Delta, with K and a tau."""
    given = read_wri(wri)
    instance = build_wreath_instance(given.w, given.a, given.h_gens, given.m, assume=assume)
    certificate = CertificateDocument(command="construct wreath", asserted=False, inputs={"wri": file_digest(wri)})
    if instance.conditions is not None:
        certificate.add("c1_generation", instance.conditions.c1_generation)
        certificate.add("c2_regular_involutions", instance.conditions.c2_regular_involutions)
        certificate.add("c3_window_orders", instance.conditions.c3_window_orders)
        certificate.add("c4_shift_conjugation", instance.conditions.c4_shift_conjugation)
        certificate.data["conditions"] = instance.conditions.model_dump(mode="json")
    else:
        certificate.interpretation_notes.append("(C1)-(C4) were assumed, not checked")
    certificate.data.update(
        {
            "n": instance.n,
            "m": instance.m,
            "degree": instance.degree,
            "group_order": instance.group.order(),
            "tau": instance.tau.cycle_string(),
            "a_tau": instance.a_tau.cycle_string(),
            "k_generators": [g.cycle_string() for g in instance.k_gens],
        }
    )
    if group_out is not None:
        emit(write_group(instance.group.generators, instance.degree), group_out)
    emit_certificate(certificate, output)


@app.command("shift-element")
def shift_element(
    group: Annotated[Path, typer.Option("--group", exists=True, dir_okay=False, help="W as a .grp file")],
    h_grp: Annotated[Path, typer.Option("--h", exists=True, dir_okay=False, help="h_1..h_n as a .grp file")],
    m: Annotated[int, typer.Option(min=1)] = 1,
    output: Output = None,
) -> None:
    """Search W for a with h_i^a = h_(i+1) and W = <H, a>; writes a .wri instance when found."""
    w = read_group(group)
    h_gens = list(read_group(h_grp).generators)
    if not h_gens:
        raise PreconditionError("the H file has no generators")
    a = search_shift_element(w, h_gens)
    if a is None:
        certificate = CertificateDocument(command="construct shift-element", asserted=False)
        certificate.add("c4_shift_conjugation", False, "no shifting element exists in W")
        certificate.inputs = {"group": file_digest(group), "h": file_digest(h_grp)}
        emit_certificate(certificate, output)
        return
    # .wri files name their group relative to their own directory
    anchor = (output.parent if output is not None else Path.cwd()).resolve()
    emit(write_wri(os.path.relpath(group.resolve(), anchor), a, h_gens, m), output)
