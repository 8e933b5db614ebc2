"""conilpotency and bigrade."""
import argparse

from ..models.report import CommandReport, ValidationReport
from ..services.colored_service import (
    bigraded_decomposition,
    check_idempotent_actions,
    check_reduced,
    check_reduced_coassoc,
    conilpotency,
    projection_identity_check,
    reduce,
)
from .base import add_file, colored_from, load, report_from, subject


def show_conilpotency(args: argparse.Namespace) -> CommandReport:
    """Kernel chain of Δ̄ on the coideal and the least vanishing power per basis vector."""
    sc = colored_from(load(args.file))
    result = conilpotency(sc)
    report = ValidationReport(subject="reduced")
    report.add("coassociative", check_reduced_coassoc(sc))
    if result.conilpotent:
        for n in range(1, result.bound + 1):
            report.add(f"projection_identity_{n}", projection_identity_check(sc, n))
    data = {
        "conilpotent": result.conilpotent,
        "bound": result.bound,
        "coideal_dim": result.coideal.dim,
        "kernel_chain": [k.dim for k in result.kernel_chain],
        "index": result.index,
    }
    out = report_from("conilpotency", subject(args.file), report, data=data)
    if not result.conilpotent:
        stuck = next((name for name, v in result.index.items() if v is None), None)
        return out.model_copy(update={"ok": False, "error": "coideal is not conilpotent", "witness": stuck})
    return out


def show_bigrading(args: argparse.Namespace) -> CommandReport:
    """Dimensions of the components with left color g and right color h."""
    sc = colored_from(load(args.file))
    components = bigraded_decomposition(sc)
    rc = reduce(sc)
    reduced = {}
    for g, h in rc.degrees:
        key = f"{g},{h}"
        reduced[key] = reduced.get(key, 0) + 1
    data = {
        "colors": list(sc.color_names),
        "components": {f"{g},{h}": s.dim for (g, h), s in components.items()},
        "reduced_components": dict(sorted(reduced.items())),
        "reduced_basis": dict(zip(rc.basis_names, (f"{g},{h}" for g, h in rc.degrees))),
    }
    return report_from("bigrade", subject(args.file), check_idempotent_actions(sc), check_reduced(rc), data=data)


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    p = subparsers.add_parser("conilpotency", parents=parents, help="Kernel chain and per-basis index of Δ̄.")
    add_file(p)
    p.set_defaults(handler=show_conilpotency)

    p = subparsers.add_parser("bigrade", parents=parents, help="Bigraded decomposition over the colors.")
    add_file(p)
    p.set_defaults(handler=show_bigrading)
