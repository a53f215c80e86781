"""
The ``hat`` command line.

Exit status: 0 on success, 1 for usage and input errors, 2 when a check the
software certifies fails on a computed instance.
"""
import sys
from collections.abc import Sequence
from typing import Annotated

import click
import structlog
import typer

from hatgraphs.api import concentric, construct, graph, perm, present, verify
from hatgraphs.api.output import FALSIFIED
from hatgraphs.config import configure, settings
from hatgraphs.exceptions import FalsificationError, HatError
from hatgraphs.utils.logging import configure_logging

logger = structlog.get_logger(__name__)

app = typer.Typer(
    name="hat",
    help="Tetravalent half-arc-transitive graphs: concentric groups, constructions and certificates.",
    no_args_is_help=True,
    pretty_exceptions_enable=False,
)

app.add_typer(concentric.app, name="concentric")
app.add_typer(present.app, name="present")
app.add_typer(construct.app, name="construct")
app.add_typer(verify.app, name="verify")
app.add_typer(graph.app, name="graph")
app.add_typer(perm.app, name="perm")


@app.callback()
def global_options(
    seed: Annotated[int | None, typer.Option(help="Random seed (HAT_SEED wins over this flag)")] = None,
    max_elements: Annotated[int | None, typer.Option(help="Cap on explicit element enumerations")] = None,
    max_vertices: Annotated[int | None, typer.Option(help="Cap on materialized graphs")] = None,
    max_cosets: Annotated[int | None, typer.Option(help="Todd-Coxeter coset budget")] = None,
    jobs: Annotated[int | None, typer.Option(help="Worker processes for parallel sweeps")] = None,
    log_level: Annotated[str | None, typer.Option(help="DEBUG, INFO, WARNING, ...")] = None,
    log_json: Annotated[bool | None, typer.Option("--log-json/--log-text", help="JSON log lines on stderr")] = None,
) -> None:
    configure(
        seed=seed,
        max_elements=max_elements,
        max_vertices=max_vertices,
        max_cosets=max_cosets,
        jobs=jobs,
        log_level=log_level,
        log_json=log_json,
    )
    configure_logging(settings.LOG_LEVEL, settings.LOG_JSON)
    logger.debug("settings", seed=settings.SEED, jobs=settings.JOBS)


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return its exit status."""
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        result = app(args=args, prog_name="hat", standalone_mode=False)
    except FalsificationError as exc:
        logger.critical("falsified", check=exc.check, witness=exc.witness)
        typer.echo(f"falsified: {exc}", err=True)
        return FALSIFIED
    except click.exceptions.ClickException as exc:
        exc.show()
        return 1
    except click.exceptions.Abort:
        typer.echo("aborted", err=True)
        return 1
    except HatError as exc:
        logger.error("command_failed", error=str(exc), kind=type(exc).__name__)
        typer.echo(f"error: {exc}", err=True)
        return 1
    return result if isinstance(result, int) else 0


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
