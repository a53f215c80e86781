from pathlib import Path
from typing import Annotated

import typer

from hatgraphs.api.output import emit_report
from hatgraphs.models.reports import GroupSummary
from hatgraphs.utils.formats import read_group

app = typer.Typer(help="Permutation group queries.", no_args_is_help=True)


@app.command("order")
def order(
    grp: Annotated[Path, typer.Option("--grp", exists=True, dir_okay=False, help="Group file (.grp)")],
    output: Annotated[Path | None, typer.Option("-o", "--output")] = None,
) -> None:
    """Order, base and transitivity of the group generated by a .grp file."""
    group = read_group(grp)
    flags = group.transitivity_flags()
    emit_report(
        GroupSummary(
            degree=group.degree,
            order=group.order(),
            base=list(group.base()),
            basic_orbit_lengths=list(group.basic_orbit_lengths()),
            transitive=flags.transitive,
            semiregular=flags.semiregular,
            regular=flags.regular,
        ),
        output,
    )
