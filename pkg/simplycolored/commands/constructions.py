"""pathcoalg, cotensor and cofree."""
import argparse

from ..core.exceptions import SearchLimitError
from ..models.report import CommandReport, ValidationReport
from ..services import definition_service
from ..services.colored_service import is_simply_colored, reduce
from ..services.construction_service import (
    check_bicomodule,
    check_grading,
    check_index_bound,
    cofree_uniqueness_certificate,
    cofree_universal_map,
    cotensor,
    cotensor_coalgebra,
    cotensor_words,
    count_paths,
    homogeneous_bicomodule,
    path_coalgebra,
    path_grading,
    deformation_space_dim,
    word_grading,
)
from .base import add_file, load, report_from, subject


def _bidegrees(sc) -> dict[str, str]:
    rc = reduce(sc)
    return {name: f"{g},{h}" for name, (g, h) in zip(rc.basis_names, rc.degrees)}


def build_paths(args: argparse.Namespace) -> CommandReport:
    """Path coalgebra of a quiver truncated at length L."""
    loaded = load(args.file)
    q = definition_service.build_quiver(loaded)
    field = definition_service.build_field(loaded)
    sc = path_coalgebra(q, args.max_len, field)
    graded = path_grading(q, args.max_len, field)
    counted = count_paths(q, args.max_len)
    report = ValidationReport(subject="paths")
    report.add("dimension_matches_path_count", counted == sc.coalgebra.dim, detail=f"{counted} paths")
    data = {
        "dim": sc.coalgebra.dim,
        "basis": list(sc.coalgebra.basis_names),
        "colors": list(sc.color_names),
        "bidegrees": _bidegrees(sc),
    }
    return report_from(
        "pathcoalg", subject(args.file), report, is_simply_colored(sc), check_grading(graded), check_index_bound(graded),
        data=data,
    )


def build_cotensor(args: argparse.Namespace) -> CommandReport:
    """Truncated cotensor coalgebra of the file's bicomodule."""
    loaded = load(args.file)
    block = loaded.model.bicomodule
    if block is None:
        raise loaded.fail("missing bicomodule block")
    m = definition_service.build_bicomodule(loaded)
    max_words = block.max_words if args.max_words is None else args.max_words
    sc = cotensor_coalgebra(block.colors, m, max_words)
    homogeneous, _ = homogeneous_bicomodule(m)
    report = ValidationReport(subject="cotensor")
    if max_words >= 2:
        words = len(cotensor_words(homogeneous, 2))
        kernel_dim = cotensor(homogeneous, homogeneous).dim
        report.add("words_match_cotensor_kernel", words == kernel_dim, detail=f"{words} words, kernel dim {kernel_dim}")
    report.add("cofree_uniqueness", cofree_uniqueness_certificate(block.colors, m, max_words))
    graded = word_grading(sc, m, max_words)
    words_by_length = [list(graded.degrees).count(n) for n in range(1, max_words + 1)]
    data = {
        "dim": sc.coalgebra.dim,
        "basis": list(sc.coalgebra.basis_names),
        "words_by_length": words_by_length,
    }
    return report_from(
        "cotensor", subject(args.file), check_bicomodule(m), report, is_simply_colored(sc), check_grading(graded),
        data=data,
    )


def build_cofree_map(args: argparse.Namespace) -> CommandReport:
    """The coalgebra map into the truncated cotensor coalgebra lifting a graded map onto the cogenerators."""
    loaded = load(args.file)
    names = sorted(name for name, b in (loaded.model.morphisms or {}).items() if b.target == "bicomodule")
    name = args.morphism or (names[0] if names else None)
    if name is None:
        raise loaded.fail("no morphism targets the bicomodule", "morphisms")
    block = loaded.model.morphisms.get(name)
    if block is None:
        raise loaded.fail(f"missing morphism {name!r}", "morphisms")
    sc = definition_service.build_colored(definition_service.resolve(loaded, block.source))
    f, phi = definition_service.build_cogenerator_map(loaded, name)
    m = definition_service.build_bicomodule(loaded)
    max_words = loaded.model.bicomodule.max_words if args.max_words is None else args.max_words
    morphism = cofree_universal_map(sc, f, phi, m, max_words)
    c, t = morphism.source, morphism.target
    report = ValidationReport(subject="cofree")
    report.add("certificate", cofree_uniqueness_certificate(m.base.basis_names, m, max_words))
    data = {
        "morphism": name,
        "target_dim": t.dim,
        "images": {c.basis_names[k]: t.describe(morphism.matrix.col(k)) for k in range(c.dim)},
    }
    try:
        deformations = deformation_space_dim(sc, morphism, m)
        report.add("no_deformations", deformations == 0, detail=f"{deformations} dimensional")
        data["deformations"] = deformations
    except SearchLimitError as exc:
        data["deformations"] = f"skipped: {exc.message}"
    return report_from("cofree", subject(args.file), report, data=data)


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    p = subparsers.add_parser("pathcoalg", parents=parents, help="Path coalgebra of a quiver up to length L.")
    add_file(p)
    p.add_argument("max_len", type=int, metavar="L", help="Maximal path length.")
    p.set_defaults(handler=build_paths)

    p = subparsers.add_parser("cotensor", parents=parents, help="Truncated cotensor coalgebra of a bicomodule.")
    add_file(p)
    p.add_argument("--max-words", type=int, default=None, help="Override the file's max_words.")
    p.set_defaults(handler=build_cotensor)

    p = subparsers.add_parser("cofree", parents=parents, help="Universal map into the cotensor coalgebra.")
    add_file(p)
    p.add_argument("--morphism", default=None, help="Morphism block to lift (default: first targeting the bicomodule).")
    p.add_argument("--max-words", type=int, default=None, help="Override the file's max_words.")
    p.set_defaults(handler=build_cofree_map)
