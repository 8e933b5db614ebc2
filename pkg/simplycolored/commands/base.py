"""Helpers shared by the subcommand handlers."""
import argparse
from pathlib import Path
from typing import Optional

from ..core.exactlin import Subspace
from ..models.coalgebra import Coalgebra
from ..models.colored import SimplyColored
from ..models.report import CommandReport, ValidationReport
from ..services import definition_service
from ..services.colored_service import check_retraction_or_raise
from ..services.construction_service import cotensor_coalgebra, path_coalgebra, space_like_check
from ..services.definition_service import LoadedDefinition


def add_file(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("file", type=Path, help="Definition file (JSON).")


def load(path: Path) -> LoadedDefinition:
    return definition_service.load(path)


def subject(path: Path) -> str:
    return path.name


def subspace_data(c: Coalgebra, s: Subspace) -> dict:
    """Dimension and echelon basis, each vector written in the carrier's basis names."""
    return {"dim": s.dim, "basis": [c.describe(s.vector(k)) for k in range(s.dim)]}


def colored_from(loaded: LoadedDefinition) -> SimplyColored:
    """The simply colored coalgebra a file describes.

    An explicit coalgebra with a splitting wins; otherwise a quiver gives its
    path coalgebra, a grading its degree-zero splitting and a bicomodule its
    truncated cotensor coalgebra.
    """
    d = loaded.model
    if d.coalgebra and d.splitting:
        return check_retraction_or_raise(definition_service.build_colored(loaded))
    if d.quiver:
        return path_coalgebra(definition_service.build_quiver(loaded), d.quiver.max_len, definition_service.build_field(loaded))
    if d.coalgebra and d.grading is not None:
        return space_like_check(definition_service.build_graded(loaded))
    if d.bicomodule:
        m = definition_service.build_bicomodule(loaded)
        return cotensor_coalgebra(d.bicomodule.colors, m, d.bicomodule.max_words)
    raise loaded.fail("file describes no simply colored coalgebra")


def report_from(
    command: str,
    name: str,
    *reports: ValidationReport,
    data: Optional[dict] = None,
) -> CommandReport:
    """A command report whose checks are the prefixed checks of each validation report."""
    merged = ValidationReport(subject=name)
    for r in reports:
        merged.extend(r, r.subject.replace(" ", "_"))
    failed = merged.failures()
    return CommandReport(
        command=command,
        subject=name,
        ok=not failed,
        error=f"{failed[0].name} fails" if failed else None,
        witness=failed[0].witness if failed else None,
        data=data or {},
        checks=merged.checks,
    )
