from pathlib import Path
from typing import Annotated

import typer

from hatgraphs.api.output import emit, emit_certificate
from hatgraphs.config import settings
from hatgraphs.core.concentric import ConcentricSequence, catalog, check_concentric, find_concentric_sequence
from hatgraphs.core.elements import enumerate_elements
from hatgraphs.models.certificates import CertificateDocument, file_digest
from hatgraphs.utils.formats import read_group, write_ccs

app = typer.Typer(help="Recognize, search for and build concentric groups.", no_args_is_help=True)

GroupFile = Annotated[Path, typer.Option("--grp", exists=True, dir_okay=False, help="Group file (.grp)")]
Output = Annotated[Path | None, typer.Option("-o", "--output", help="Write here instead of stdout")]


@app.command("check")
def check(grp: GroupFile, output: Output = None) -> None:
    """Test whether the generators of a group file, in order, form a concentric sequence."""
    gens = list(read_group(grp).generators)
    result = check_concentric(gens)
    certificate = CertificateDocument(command="concentric check", asserted=False, inputs={"grp": file_digest(grp)})
    if isinstance(result, ConcentricSequence):
        for name in ("involutions", "window_orders", "shift_isomorphism", "group_order"):
            certificate.add(name, True)
        certificate.data.update({"n": result.n, "order": len(result.group), "b_order": len(result.b_set)})
    else:
        failing = {
            "empty": "involutions",
            "involution": "involutions",
            "window_order": "window_orders",
            "phi_conflict": "shift_isomorphism",
            "phi_not_injective": "shift_isomorphism",
            "order": "group_order",
        }[result.condition]
        certificate.add(failing, False, result.message)
        certificate.data["rejection"] = result.model_dump(mode="json")
    emit_certificate(certificate, output)


@app.command("search")
def search(
    grp: GroupFile,
    n: Annotated[int | None, typer.Option(help="log2 of the group order; computed when omitted")] = None,
    output: Output = None,
) -> None:
    """Search a 2-group for a concentric generating sequence and write it as a .ccs witness."""
    elements = enumerate_elements(read_group(grp))
    if n is None:
        n = len(elements).bit_length() - 1
    found = find_concentric_sequence(elements, n, jobs=settings.JOBS)
    if found is None:
        typer.echo(f"no concentric sequence of length {n} exists", err=True)
        return
    emit(write_ccs(found), output)


@app.command("catalog")
def catalog_command(
    name: Annotated[str, typer.Argument(help="Z2^m, D8xZ2^m, D8^2xZ2^m, H7 or H7xZ2")],
    carrier: Annotated[str, typer.Option(help="'regular' or 'small'")] = "regular",
    output: Output = None,
) -> None:
    """Build a catalog concentric group and write its witness."""
    emit(write_ccs(catalog(name, carrier=carrier, jobs=settings.JOBS)), output)
