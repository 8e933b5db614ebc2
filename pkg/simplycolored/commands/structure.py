"""validate, coradical, filtration and pointed."""
import argparse

import structlog

from ..models.report import CommandReport, ValidationReport
from ..services import definition_service
from ..services.coalgebra_service import check_algebra, check_coalgebra, check_morphism
from ..services.colored_service import (
    check_retraction,
    from_pointed_with_splitting,
    is_simply_colored,
    verify_bicomodule,
    verify_pointed,
)
from ..services.construction_service import check_bicomodule, check_grading, path_coalgebra
from ..services.convolution_service import check_bialgebra
from ..services.coradical_service import coradical, coradical_filtration, is_pointed
from .base import add_file, load, report_from, subject, subspace_data

logger = structlog.get_logger(__name__)


def validate(args: argparse.Namespace) -> CommandReport:
    """Every check that applies to the blocks present in the file."""
    loaded = load(args.file)
    d = loaded.model
    reports: list[ValidationReport] = []
    data: dict = {}
    if d.coalgebra:
        c = definition_service.build_coalgebra(loaded)
        reports.append(check_coalgebra(c))
        data["dim"] = c.dim
    if d.coalgebra and d.splitting:
        sc = definition_service.build_colored(loaded)
        reports.append(is_simply_colored(sc))
        if check_retraction(sc).passed:
            reports.append(verify_bicomodule(sc))
        data["colors"] = list(sc.color_names)
    if d.algebra:
        reports.append(check_algebra(definition_service.build_algebra(loaded)))
        if d.coalgebra and d.coalgebra.basis == d.algebra.basis:
            reports.append(check_bialgebra(definition_service.build_bialgebra(loaded)))
    if d.coalgebra and d.grading is not None:
        reports.append(check_grading(definition_service.build_graded(loaded)))
    if d.quiver:
        sc = path_coalgebra(definition_service.build_quiver(loaded), d.quiver.max_len, definition_service.build_field(loaded))
        reports.append(is_simply_colored(sc))
        data["path_dim"] = sc.coalgebra.dim
    if d.bicomodule:
        reports.append(check_bicomodule(definition_service.build_bicomodule(loaded)))
    for name in sorted(d.morphisms or {}):
        if d.morphisms[name].target != "bicomodule":
            morphism = check_morphism(definition_service.build_morphism(loaded, name))
            reports.append(morphism.model_copy(update={"subject": f"morphism {name}"}))
    if not reports:
        raise loaded.fail("nothing to validate")
    logger.info("validate_finished", file=str(args.file), reports=len(reports))
    return report_from("validate", subject(args.file), *reports, data=data)


def show_coradical(args: argparse.Namespace) -> CommandReport:
    loaded = load(args.file)
    c = definition_service.build_coalgebra(loaded)
    c0 = coradical(c)
    return CommandReport(command="coradical", subject=subject(args.file), data={"coradical": subspace_data(c, c0)})


def show_filtration(args: argparse.Namespace) -> CommandReport:
    loaded = load(args.file)
    c = definition_service.build_coalgebra(loaded)
    filtration = coradical_filtration(c)
    return CommandReport(
        command="filtration",
        subject=subject(args.file),
        ok=filtration.exhaustive,
        error=None if filtration.exhaustive else "filtration is not exhaustive",
        data={
            "dims": filtration.dims,
            "exhaustive": filtration.exhaustive,
            "terms": [subspace_data(c, t)["basis"] for t in filtration.terms],
        },
    )


def show_pointed(args: argparse.Namespace) -> CommandReport:
    """Pointedness verdict; with a splitting block, also the round trip to a simply colored coalgebra."""
    loaded = load(args.file)
    c = definition_service.build_coalgebra(loaded)
    result = is_pointed(c)
    data = {
        "verdict": result.verdict.value,
        "coradical_dim": result.coradical.dim,
        "setlikes": [c.describe(g) for g in result.setlikes],
    }
    if not result.pointed:
        return CommandReport(command="pointed", subject=subject(args.file), ok=False, error=result.verdict.value, data=data)
    if loaded.model.splitting is None:
        return CommandReport(command="pointed", subject=subject(args.file), data=data)
    sc = definition_service.build_colored(loaded)
    from_pointed_with_splitting(c, sc.retraction)
    return report_from("pointed", subject(args.file), verify_pointed(sc), data=data)


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    p = subparsers.add_parser("validate", parents=parents, help="Run every check that applies to a definition file.")
    add_file(p)
    p.set_defaults(handler=validate)

    p = subparsers.add_parser("coradical", parents=parents, help="Coradical as the annihilator of the dual's radical.")
    add_file(p)
    p.set_defaults(handler=show_coradical)

    p = subparsers.add_parser("filtration", parents=parents, help="Coradical filtration by iterated wedges.")
    add_file(p)
    p.set_defaults(handler=show_filtration)

    p = subparsers.add_parser("pointed", parents=parents, help="Decide pointedness.")
    add_file(p)
    p.set_defaults(handler=show_pointed)
