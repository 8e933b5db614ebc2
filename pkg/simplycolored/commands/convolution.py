"""convinv and antipode."""
import argparse
from pathlib import Path

import structlog

from ..core.exceptions import NotAGroupError, NotInvertibleError, SearchLimitError
from ..models.colored import SimplyColored
from ..models.report import CommandReport, ValidationReport
from ..models.structures import ConvMap
from ..services import definition_service
from ..services.convolution_service import (
    antipode,
    conv_inverse,
    conv_unit,
    convolve,
    cyclic_group_bialgebra,
    identity_conv_map,
    solve_convolution_inverse,
)
from .base import add_file, colored_from, load, report_from, subject

logger = structlog.get_logger(__name__)


def _images(h: ConvMap) -> dict[str, str]:
    c, a = h.source, h.target
    return {c.basis_names[k]: a.describe(h.matrix.col(k)) for k in range(c.dim)}


def _inverse_checks(f: ConvMap, h: ConvMap) -> ValidationReport:
    unit = conv_unit(f.source, f.target)
    report = ValidationReport(subject="inverse")
    report.add("left_inverse", convolve(f, h).matrix == unit.matrix)
    report.add("right_inverse", convolve(h, f).matrix == unit.matrix)
    return report


def _refusal(command: str, name: str, exc, f: ConvMap, **data) -> CommandReport:
    """A refusal, confirmed by the exhaustive solve when the instance is small enough."""
    try:
        confirmed = solve_convolution_inverse(f) is None
    except SearchLimitError:
        confirmed = None
    data["exhaustive_search_confirms"] = confirmed
    logger.info("refusal_reported", command=command, witness=exc.witness, confirmed=confirmed)
    return CommandReport(command=command, subject=name, ok=False, error=exc.message, witness=exc.witness, data=data)


def invert(args: argparse.Namespace) -> CommandReport:
    """Convolution inverse of the file's conv_map."""
    loaded = load(args.file)
    sc = colored_from(loaded)
    f = definition_service.build_conv_map(loaded)
    try:
        h = conv_inverse(sc, f)
    except NotInvertibleError as exc:
        return _refusal("convinv", subject(args.file), exc, f, color=exc.color)
    return report_from("convinv", subject(args.file), _inverse_checks(f, h), data={"inverse": _images(h)})


def show_antipode(args: argparse.Namespace) -> CommandReport:
    if args.cyclic is not None:
        b = cyclic_group_bialgebra(args.cyclic)
        c = b.coalgebra
        sc = SimplyColored(c, tuple(c.basis_vector(k) for k in range(c.dim)), c.identity(), c.basis_names)
        name = b.name
    else:
        loaded = load(args.file)
        b = definition_service.build_bialgebra(loaded)
        sc = definition_service.build_colored(loaded)
        name = subject(args.file)
    identity = identity_conv_map(b)
    try:
        s = antipode(b, sc)
    except NotAGroupError as exc:
        return _refusal("antipode", name, exc, identity, axiom=exc.axiom)
    except NotInvertibleError as exc:
        return _refusal("antipode", name, exc, identity, color=exc.color)
    return report_from("antipode", name, _inverse_checks(identity, s), data={"antipode": _images(s)})


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    p = subparsers.add_parser("convinv", parents=parents, help="Convolution inverse of a map C → A.")
    add_file(p)
    p.set_defaults(handler=invert)

    p = subparsers.add_parser("antipode", parents=parents, help="Antipode of a bialgebra.")
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("file", nargs="?", type=Path, default=None, help="Bialgebra definition file with a splitting block.")
    target.add_argument("--cyclic", type=int, default=None, metavar="N", help="Use the group bialgebra of Z/N.")
    p.set_defaults(handler=show_antipode)
