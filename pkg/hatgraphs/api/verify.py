from pathlib import Path
from typing import Annotated

import typer

from hatgraphs.api.construct import CcsFile, Output, WriFile, resolve_h
from hatgraphs.api.output import emit, emit_certificate
from hatgraphs.core.elements import ElementSet
from hatgraphs.core.graphs import materialize_coset_graph
from hatgraphs.core.tau_construction import COSET_REPRESENTATIVE_NOTE, build_mn_instance, verify_mn_instance
from hatgraphs.core.wreath import build_wreath_instance, verify_cayley_structure, verify_wreath_theorem
from hatgraphs.models.certificates import CertificateDocument, file_digest
from hatgraphs.utils.formats import read_ccs, read_wri, write_graph

app = typer.Typer(help="Certify the constructions and the graphs they give.", no_args_is_help=True)


@app.command("mn")
def mn(
    ccs: CcsFile,
    h: Annotated[str, typer.Option("--h", help="'e', 'all' or an element index of H")] = "e",
    quotients: Annotated[bool, typer.Option(help="Also test the quotients by minimal normal subgroups")] = False,
    graph_out: Annotated[Path | None, typer.Option("--graph-out", help="Write the coset graph (.gph)")] = None,
    output: Output = None,
) -> None:
    """Build the coset graph of each tau_h instance and certify it tetravalent and G-HAT."""
    sequence = read_ccs(ccs)
    certificate = CertificateDocument(
        command="verify mn", inputs={"ccs": file_digest(ccs)}, interpretation_notes=[COSET_REPRESENTATIVE_NOTE]
    )
    instances = []
    for element in resolve_h(sequence, h):
        result, coset = verify_mn_instance(build_mn_instance(sequence, element), with_quotients=quotients, strict=True)
        certificate.checks.extend(result.checks)
        instances.append(result.data)
        if graph_out is not None and h != "all":
            emit(write_graph(coset.graph), graph_out)
    if len(instances) == 1:
        certificate.data.update(instances[0])
    else:
        certificate.data["instances"] = instances
    emit_certificate(certificate, output)


@app.command("wreath")
def wreath(
    wri: WriFile,
    assume: Annotated[bool, typer.Option(help="Skip checking (C1)-(C4)")] = False,
    cayley: Annotated[bool, typer.Option(help="For m = 2, report the Cayley structure as well")] = False,
    graph_out: Annotated[Path | None, typer.Option("--graph-out", help="Write the coset graph (.gph)")] = None,
    output: Output = None,
) -> None:
    """Certify the wreath coset-graph statements for an instance file."""
    given = read_wri(wri)
    instance = build_wreath_instance(given.w, given.a, given.h_gens, given.m, assume=assume)
    certificate = verify_wreath_theorem(instance, strict=False)
    certificate.inputs = {"wri": file_digest(wri)}
    if cayley:
        structure = verify_cayley_structure(instance, strict=False)
        certificate.data["cayley_structure"] = structure.model_dump(mode="json")
    if graph_out is not None:
        k = ElementSet.from_generators(instance.k_gens, instance.degree)
        coset = materialize_coset_graph(instance.group, k, instance.a_tau)
        emit(write_graph(coset.graph), graph_out)
        certificate.data["vertices"] = coset.graph.vertex_count
    emit_certificate(certificate, output)
