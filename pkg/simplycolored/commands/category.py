"""coproduct, equalizer, coequalizer and product."""
import argparse
from pathlib import Path
from typing import Optional

from ..core.exceptions import SearchLimitError
from ..models.report import CommandReport, ValidationReport
from ..models.universal import Factorization
from ..services import definition_service
from ..services.category_service import (
    coequalizer_factorization,
    coequalizer_reduced,
    coproduct,
    coproduct_factorization,
    equalizer,
    equalizer_factorization,
    product_factorization,
    product_truncated,
)
from ..services.colored_service import check_reduced, is_simply_colored, reduce
from ..services.definition_service import LoadedDefinition
from .base import add_file, colored_from, load, report_from, subject


def _universal(report: ValidationReport, solve) -> Optional[str]:
    """Adds exists/unique checks for the canonical test cone; returns a note when the solve is capped."""
    try:
        result: Factorization = solve()
    except SearchLimitError as exc:
        return f"skipped: {exc.message}"
    report.add("factorization_exists", result.exists, detail=result.detail)
    report.add("factorization_unique", result.exists and result.unique)
    return None


def _pair(loaded: LoadedDefinition, names: Optional[list[str]]) -> tuple[str, str]:
    if names:
        return names[0], names[1]
    available = sorted(loaded.model.morphisms or {})
    if len(available) < 2:
        raise loaded.fail("a pair of morphisms is required", "morphisms")
    return available[0], available[1]


def _names(rc) -> dict[str, str]:
    return {name: f"{g},{h}" for name, (g, h) in zip(rc.basis_names, rc.degrees)}


def build_coproduct(args: argparse.Namespace) -> CommandReport:
    scs = [colored_from(load(path)) for path in args.files]
    cp = coproduct(scs)
    report = ValidationReport(subject="universal")
    note = _universal(report, lambda: coproduct_factorization(cp, cp.colored, cp.injections))
    c = cp.colored.coalgebra
    data = {"dim": c.dim, "basis": list(c.basis_names), "colors": list(cp.colored.color_names)}
    if note:
        data["universal_property"] = note
    return report_from("coproduct", "+".join(subject(p) for p in args.files), is_simply_colored(cp.colored), report, data=data)


def build_equalizer(args: argparse.Namespace) -> CommandReport:
    """Largest subcoalgebra on which a parallel pair agrees."""
    loaded = load(args.file)
    first, second = _pair(loaded, args.pair)
    source = loaded.model.morphisms[first].source
    sc = colored_from(definition_service.resolve(loaded, source))
    f = definition_service.build_morphism(loaded, first)
    g = definition_service.build_morphism(loaded, second)
    eq = equalizer(sc, f, g)
    report = ValidationReport(subject="universal")
    note = _universal(report, lambda: equalizer_factorization(eq, f, g, eq.inclusion))
    c = sc.coalgebra
    inclusion = eq.inclusion.matrix
    data = {
        "pair": [first, second],
        "dim": eq.colored.coalgebra.dim,
        "basis": [c.describe(inclusion.col(k)) for k in range(inclusion.cols)],
        "colors": list(eq.colored.color_names),
    }
    if note:
        data["universal_property"] = note
    return report_from("equalizer", subject(args.file), is_simply_colored(eq.colored), report, data=data)


def build_coequalizer(args: argparse.Namespace) -> CommandReport:
    """Quotient of the common target by the image of f - g, with merged colors."""
    loaded = load(args.file)
    first, second = _pair(loaded, args.pair)
    p = definition_service.build_colored_morphism(loaded, first)
    q = definition_service.build_colored_morphism(loaded, second)
    co = coequalizer_reduced(p, q)
    report = ValidationReport(subject="universal")
    note = _universal(report, lambda: coequalizer_factorization(co, p, q, co.projection))
    data = {
        "pair": [first, second],
        "dim": co.reduced.dim,
        "colors": list(co.reduced.colors),
        "classes": [list(cls) for cls in co.classes],
        "basis": _names(co.reduced),
    }
    if note:
        data["universal_property"] = note
    return report_from("coequalizer", subject(args.file), check_reduced(co.reduced), report, data=data)


def build_product(args: argparse.Namespace) -> CommandReport:
    """Product of reduced colored coalgebras, truncated at --max-words."""
    rcs = [reduce(colored_from(load(path))) for path in args.files]
    product = product_truncated(rcs, args.max_words)
    report = ValidationReport(subject="universal")
    note = _universal(report, lambda: product_factorization(product, product.reduced, product.projections))
    data = {
        "dim": product.reduced.dim,
        "ambient_dim": product.ambient.dim,
        "colors": list(product.reduced.colors),
        "basis": _names(product.reduced),
        "max_words": product.max_words,
        "approximate": product.approximate,
    }
    if note:
        data["universal_property"] = note
    return report_from("product", "x".join(subject(p) for p in args.files), check_reduced(product.reduced), report, data=data)


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    p = subparsers.add_parser("coproduct", parents=parents, help="Coproduct of simply colored coalgebras.")
    p.add_argument("files", type=Path, nargs="+", help="Definition files.")
    p.set_defaults(handler=build_coproduct)

    p = subparsers.add_parser("equalizer", parents=parents, help="Equalizer of two morphisms in one file.")
    add_file(p)
    p.add_argument("--pair", nargs=2, metavar=("F", "G"), default=None, help="Morphism names (default: first two).")
    p.set_defaults(handler=build_equalizer)

    p = subparsers.add_parser("coequalizer", parents=parents, help="Coequalizer of two colored morphisms in one file.")
    add_file(p)
    p.add_argument("--pair", nargs=2, metavar=("F", "G"), default=None, help="Morphism names (default: first two).")
    p.set_defaults(handler=build_coequalizer)

    p = subparsers.add_parser("product", parents=parents, help="Truncated product of reduced colored coalgebras.")
    p.add_argument("files", type=Path, nargs="+", help="Definition files.")
    p.add_argument("--max-words", type=int, required=True, metavar="L", help="Truncation word length.")
    p.set_defaults(handler=build_product)
