"""Writing results: to a file with ``-o``, otherwise to stdout."""
from pathlib import Path

import structlog
import typer
from pydantic import BaseModel

from hatgraphs.models.certificates import CertificateDocument

logger = structlog.get_logger(__name__)

# exit status for a failed check the software certifies
FALSIFIED = 2


def emit(text: str, output: Path | None = None) -> None:
    if output is None:
        typer.echo(text, nl=False)
        return
    output.write_text(text)
    logger.info("output_written", path=str(output), size=len(text))


def emit_report(report: BaseModel, output: Path | None = None) -> None:
    emit(report.model_dump_json(indent=2) + "\n", output)


def emit_certificate(certificate: CertificateDocument, output: Path | None = None) -> None:
    """Write the certificate, then exit with FALSIFIED if an asserted check failed."""
    emit(certificate.to_json(), output)
    if certificate.asserted and not certificate.passed:
        failed = certificate.failed()[0]
        logger.critical("certificate_failed", command=certificate.command, check=failed.name, witness=failed.witness)
        raise typer.Exit(FALSIFIED)
