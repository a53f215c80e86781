from pathlib import Path
from typing import Annotated

import typer

from hatgraphs.api.output import emit, emit_report
from hatgraphs.core.automorphisms import graph_automorphism_group
from hatgraphs.core.cayley import cayley_graph, cayley_normality_report
from hatgraphs.core.elements import enumerate_elements
from hatgraphs.core.quotients import classify_basic, normal_quotient, reduce_to_basic, transitivity_report
from hatgraphs.models.reports import AutomorphismSummary
from hatgraphs.utils.formats import read_graph, read_group, write_graph

app = typer.Typer(help="Graphs: automorphisms, transitivity, quotients and Cayley graphs.", no_args_is_help=True)

GraphFile = Annotated[Path, typer.Option("--graph", exists=True, dir_okay=False, help="Graph file (.gph)")]
ActingGroup = Annotated[Path, typer.Option("--group", exists=True, dir_okay=False, help="Group on the vertices (.grp)")]
Output = Annotated[Path | None, typer.Option("-o", "--output")]


@app.command("aut")
def aut(graph: GraphFile, output: Output = None) -> None:
    """Full automorphism group of a graph."""
    g = read_graph(graph)
    group = graph_automorphism_group(g)
    emit_report(
        AutomorphismSummary(
            vertex_count=g.vertex_count, order=group.order(), generators=[x.cycle_string() for x in group.generators]
        ),
        output,
    )


@app.command("report")
def report(
    graph: GraphFile,
    group: Annotated[Path | None, typer.Option("--group", exists=True, dir_okay=False, help="Acting group (.grp)")] = None,
    output: Output = None,
) -> None:
    """Vertex, edge and arc transitivity, and whether the action is half-arc-transitive."""
    acting = read_group(group) if group is not None else None
    emit_report(transitivity_report(read_graph(graph), acting, strict=True), output)


@app.command("quotient")
def quotient(
    graph: GraphFile,
    group: ActingGroup,
    normal: Annotated[Path, typer.Option("--normal", exists=True, dir_okay=False, help="Normal subgroup N (.grp)")],
    graph_out: Annotated[Path | None, typer.Option("--graph-out", help="Write the quotient graph (.gph)")] = None,
    output: Output = None,
) -> None:
    """The normal quotient on the orbits of N."""
    result = normal_quotient(read_graph(graph), read_group(group), read_group(normal), strict=True)
    if graph_out is not None:
        emit(write_graph(result.graph), graph_out)
    emit_report(result.result, output)


@app.command("classify")
def classify(
    graph: GraphFile,
    group: ActingGroup,
    normal: Annotated[
        list[Path] | None, typer.Option("--normal", exists=True, dir_okay=False, help="Candidate normal subgroup, repeatable")
    ] = None,
    output: Output = None,
) -> None:
    """Basic or not, and the type of a basic pair."""
    candidates = [read_group(path) for path in normal] if normal else None
    emit_report(classify_basic(read_graph(graph), read_group(group), candidates, strict=True), output)


@app.command("reduce")
def reduce(
    graph: GraphFile,
    group: ActingGroup,
    graph_out: Annotated[Path | None, typer.Option("--graph-out", help="Write the basic quotient (.gph)")] = None,
    output: Output = None,
) -> None:
    """Quotient by a largest normal subgroup of which the graph is a normal cover."""
    reduction = reduce_to_basic(read_graph(graph), read_group(group), strict=True)
    if graph_out is not None:
        emit(write_graph(reduction.quotient), graph_out)
    emit_report(reduction.report, output)


@app.command("cayley")
def cayley(
    group: Annotated[Path, typer.Option("--group", exists=True, dir_okay=False, help="The group G (.grp)")],
    connection: Annotated[
        Path, typer.Option("--connection", exists=True, dir_okay=False, help="The elements of S, one per line (.grp)")
    ],
    normality: Annotated[bool, typer.Option(help="Report on the normality of R(G) instead of writing the graph")] = False,
    output: Output = None,
) -> None:
    """Cay(G, S), or with --normality the Aut(Cay(G, S)) report."""
    elements = enumerate_elements(read_group(group))
    s = list(read_group(connection).generators)
    if normality:
        emit_report(cayley_normality_report(elements, s, strict=True), output)
        return
    emit(write_graph(cayley_graph(elements, s)), output)
