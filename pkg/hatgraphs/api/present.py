from pathlib import Path
from typing import Annotated

import typer

from hatgraphs.api.output import emit, emit_certificate
from hatgraphs.config import settings
from hatgraphs.core.presentations import h7_presentation, todd_coxeter
from hatgraphs.models.certificates import CertificateDocument, file_digest
from hatgraphs.utils.formats import parse_presentation, write_group, write_presentation

app = typer.Typer(help="Finite presentations.", no_args_is_help=True)


@app.command("enumerate")
def enumerate_cosets(
    pres: Annotated[Path | None, typer.Option("--pres", exists=True, dir_okay=False, help="Presentation (.pres)")] = None,
    h7: Annotated[bool, typer.Option("--h7", help="Use the built-in order-128 concentric presentation")] = False,
    group_out: Annotated[Path | None, typer.Option("--group-out", help="Write the regular representation (.grp)")] = None,
    output: Annotated[Path | None, typer.Option("-o", "--output")] = None,
) -> None:
    """Todd-Coxeter enumeration of the cosets of the trivial subgroup."""
    if (pres is None) == (not h7):
        raise typer.BadParameter("give exactly one of --pres and --h7")
    if h7:
        presentation = h7_presentation()
        inputs = {"pres": "builtin:H7"}
    else:
        presentation = parse_presentation(pres.read_text(), str(pres))
        inputs = {"pres": file_digest(pres)}
    enumeration = todd_coxeter(presentation, settings.MAX_COSETS)

    certificate = CertificateDocument(command="present enumerate", asserted=False, inputs=inputs)
    certificate.data.update(
        {
            "index": enumeration.index,
            "relators": len(presentation.relators),
            "generators": [g.cycle_string() for g in enumeration.permutations],
        }
    )
    if h7:
        certificate.data["presentation"] = write_presentation(presentation).splitlines()
    if group_out is not None:
        emit(write_group(enumeration.permutations, enumeration.index), group_out)
    emit_certificate(certificate, output)
