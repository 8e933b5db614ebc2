"""Definition files: parsing with positioned errors, canonical emission, and builders for the workbench types."""
import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import structlog
from pydantic import ValidationError

from ..core.config import settings
from ..core.exactlin import Field, Matrix
from ..core.exceptions import DefinitionError, WorkbenchError
from ..models.coalgebra import Algebra, Bialgebra, Coalgebra, CoalgebraMorphism
from ..models.colored import ColoredMorphism, SimplyColored
from ..models.definition import Combination, DefinitionFile, PrimeField
from ..models.structures import Arrow, Bicomodule, ConvMap, GradedCoalgebra, Quiver
from .coalgebra_service import setlike_coalgebra
from .colored_service import restrict_morphism

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class LoadedDefinition:
    """A parsed file together with its text, for positioned errors and relative references."""

    path: Optional[Path]
    text: str
    model: DefinitionFile

    def fail(self, reason: str, needle: Optional[str] = None) -> DefinitionError:
        line, column = locate(self.text, needle) if needle is not None else (1, 1)
        return DefinitionError(reason, line, column)


# ── Parsing and emission ─────────────────────────────────────────

def locate(text: str, needle: str) -> tuple[int, int]:
    """1-based line and column of the first quoted occurrence of needle, else of the bare text."""
    for candidate in (json.dumps(needle), needle):
        offset = text.find(candidate)
        if offset >= 0:
            line = text.count("\n", 0, offset) + 1
            column = offset - (text.rfind("\n", 0, offset) + 1) + 1
            return line, column
    return 1, 1


def _validation_position(text: str, error: dict) -> tuple[int, int]:
    quoted = re.search(r"'([^']+)'", error.get("msg", ""))
    if quoted and json.dumps(quoted.group(1)) in text:
        return locate(text, quoted.group(1))
    value = error.get("input")
    if isinstance(value, (str, int)) and not isinstance(value, bool):
        line, column = locate(text, str(value))
        if (line, column) != (1, 1):
            return line, column
    for key in reversed(error.get("loc", ())):
        if isinstance(key, str):
            return locate(text, key)
    return 1, 1


def parse_text(text: str, path: Optional[Path] = None) -> LoadedDefinition:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DefinitionError(exc.msg, exc.lineno, exc.colno) from None
    try:
        model = DefinitionFile.model_validate(raw)
    except ValidationError as exc:
        first = exc.errors()[0]
        line, column = _validation_position(text, first)
        where = ".".join(str(k) for k in first.get("loc", ()))
        raise DefinitionError(f"{where}: {first['msg']}", line, column) from None
    loaded = LoadedDefinition(path, text, model)
    check_references(loaded)
    logger.debug("definition_parsed", path=str(path) if path else None)
    return loaded


def load(path) -> LoadedDefinition:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DefinitionError(f"cannot read {path}: {exc.strerror}") from None
    return parse_text(text, path)


def parse(path) -> DefinitionFile:
    return load(path).model


def emit(definition: DefinitionFile) -> str:
    """Canonical JSON: parse(emit(d)) == d. An omitted field is written out as the resolved default."""
    if "field" not in definition.model_fields_set:
        field = _default_field()
        chosen = "Q" if field.characteristic == 0 else PrimeField(Fp=field.characteristic)
        definition = definition.model_copy(update={"field": chosen})
    return definition.model_dump_json(indent=2, exclude_none=True)


# ── Reference checks ─────────────────────────────────────────────

def _unique(loaded: LoadedDefinition, names: Sequence[str], what: str) -> set[str]:
    seen: set[str] = set()
    for name in names:
        if name in seen:
            raise loaded.fail(f"duplicate {what} name {name!r}", name)
        seen.add(name)
    return seen


def _known(loaded: LoadedDefinition, name: str, known: set[str], what: str) -> None:
    if name not in known:
        raise loaded.fail(f"unknown {what} {name!r}", name)


def check_references(loaded: LoadedDefinition) -> None:
    """Duplicate names and dangling references within one file."""
    d = loaded.model
    basis: set[str] = set()
    if d.coalgebra:
        basis = _unique(loaded, d.coalgebra.basis, "basis")
        for target, left, right, _ in d.coalgebra.delta:
            for name in (target, left, right):
                _known(loaded, name, basis, "basis element")
        for name in d.coalgebra.counit:
            _known(loaded, name, basis, "basis element")
    if d.splitting:
        if not d.coalgebra:
            raise loaded.fail("splitting without a coalgebra block", "splitting")
        for color in d.splitting.colors:
            for name in [color] if isinstance(color, str) else color:
                _known(loaded, name, basis, "basis element")
        for name, image in (d.splitting.retraction or {}).items():
            _known(loaded, name, basis, "basis element")
            for target in image:
                _known(loaded, target, basis, "basis element")
    algebra_basis: set[str] = set()
    if d.algebra:
        algebra_basis = _unique(loaded, d.algebra.basis, "algebra basis")
        for left, right, product, _ in d.algebra.mult:
            for name in (left, right, product):
                _known(loaded, name, algebra_basis, "algebra basis element")
        for name in d.algebra.unit:
            _known(loaded, name, algebra_basis, "algebra basis element")
    if d.grading is not None:
        if not d.coalgebra:
            raise loaded.fail("grading without a coalgebra block", "grading")
        for name in d.grading:
            _known(loaded, name, basis, "basis element")
        missing = next((n for n in d.coalgebra.basis if n not in d.grading), None)
        if missing is not None:
            raise loaded.fail(f"basis element {missing!r} has no degree", "grading")
    if d.bicomodule:
        colors = _unique(loaded, d.bicomodule.colors, "color")
        carrier = _unique(loaded, d.bicomodule.basis, "bicomodule basis")
        for name, (left, right) in d.bicomodule.bidegrees.items():
            _known(loaded, name, carrier, "bicomodule basis element")
            _known(loaded, left, colors, "color")
            _known(loaded, right, colors, "color")
    if d.conv_map:
        if not (d.coalgebra and d.algebra):
            raise loaded.fail("conv_map needs coalgebra and algebra blocks", "conv_map")
        for name, image in d.conv_map.images.items():
            _known(loaded, name, basis, "basis element")
            for target in image:
                _known(loaded, target, algebra_basis, "algebra basis element")


# ── Builders ─────────────────────────────────────────────────────

def _default_field() -> Field:
    """SIMPLYCOLORED_DEFAULT_FIELD: "Q", "p" or "GF(p)"."""
    text = settings.DEFAULT_FIELD.strip()
    if text == "Q":
        return Field.rationals()
    match = re.fullmatch(r"(?:GF\()?(\d+)\)?", text)
    if match is None:
        raise DefinitionError(f"bad default field {text!r}")
    try:
        return Field.prime(int(match.group(1)))
    except ValueError as exc:
        raise DefinitionError(str(exc)) from None


def build_field(loaded: LoadedDefinition) -> Field:
    chosen = loaded.model.field
    if "field" not in loaded.model.model_fields_set:
        return _default_field()
    if chosen == "Q":
        return Field.rationals()
    try:
        return Field.prime(chosen.Fp)
    except ValueError as exc:
        raise loaded.fail(str(exc), "Fp") from None


def _coefficient(loaded: LoadedDefinition, field: Field, value) -> object:
    try:
        return field.coerce(value)
    except ValueError as exc:
        raise loaded.fail(str(exc), value if isinstance(value, str) else None) from None


def _column(loaded: LoadedDefinition, field: Field, names: Sequence[str], combination: Combination) -> Matrix:
    index = {n: k for k, n in enumerate(names)}
    items = [(index[name], 0, _coefficient(loaded, field, value)) for name, value in combination.items()]
    return Matrix.from_entries(field, len(names), 1, items)


def build_coalgebra(loaded: LoadedDefinition) -> Coalgebra:
    block = loaded.model.coalgebra
    if block is None:
        raise loaded.fail("missing coalgebra block")
    field = build_field(loaded)
    index = {n: k for k, n in enumerate(block.basis)}
    terms = [
        (index[t], index[l], index[r], _coefficient(loaded, field, c)) for t, l, r, c in block.delta
    ]
    counit = {index[n]: _coefficient(loaded, field, c) for n, c in block.counit.items()}
    return Coalgebra.from_structure_constants(field, block.basis, terms, counit)


def build_colored(loaded: LoadedDefinition) -> SimplyColored:
    c = build_coalgebra(loaded)
    block = loaded.model.splitting
    if block is None:
        raise loaded.fail("missing splitting block")
    names = c.basis_names
    colors = []
    for color in block.colors:
        combination = {color: 1} if isinstance(color, str) else color
        colors.append(_column(loaded, c.field, names, combination))
    if block.retraction is None:
        if any(not isinstance(color, str) for color in block.colors):
            raise loaded.fail("colors that are not basis elements need an explicit retraction", "colors")
        kept = {names.index(color) for color in block.colors}
        retraction = Matrix.from_entries(c.field, c.dim, c.dim, ((k, k, 1) for k in sorted(kept)))
    else:
        columns = [
            _column(loaded, c.field, names, block.retraction.get(name, {})) for name in names
        ]
        retraction = Matrix.hstack(c.field, c.dim, columns)
    color_names = tuple(color if isinstance(color, str) else c.describe(v) for color, v in zip(block.colors, colors))
    return SimplyColored(c, tuple(colors), retraction, color_names)


def build_algebra(loaded: LoadedDefinition) -> Algebra:
    block = loaded.model.algebra
    if block is None:
        raise loaded.fail("missing algebra block")
    field = build_field(loaded)
    index = {n: k for k, n in enumerate(block.basis)}
    terms = [(index[l], index[r], index[p], _coefficient(loaded, field, c)) for l, r, p, c in block.mult]
    unit = {index[n]: _coefficient(loaded, field, c) for n, c in block.unit.items()}
    return Algebra.from_structure_constants(field, block.basis, terms, unit)


def build_bialgebra(loaded: LoadedDefinition) -> Bialgebra:
    c, a = build_coalgebra(loaded), build_algebra(loaded)
    if c.basis_names != a.basis_names:
        raise loaded.fail("algebra and coalgebra bases differ", "algebra")
    return Bialgebra(c, a, loaded.path.stem if loaded.path else None)


def build_quiver(loaded: LoadedDefinition) -> Quiver:
    block = loaded.model.quiver
    if block is None:
        raise loaded.fail("missing quiver block")
    try:
        return Quiver(tuple(block.vertices), tuple(Arrow(a.name, a.source, a.target) for a in block.arrows))
    except WorkbenchError as exc:
        raise loaded.fail(exc.message, exc.witness) from None


def build_graded(loaded: LoadedDefinition) -> GradedCoalgebra:
    c = build_coalgebra(loaded)
    grading = loaded.model.grading
    if grading is None:
        raise loaded.fail("missing grading block")
    try:
        return GradedCoalgebra(c, tuple(grading[n] for n in c.basis_names))
    except WorkbenchError as exc:
        raise loaded.fail(exc.message, "grading") from None


def build_bicomodule(loaded: LoadedDefinition) -> Bicomodule:
    block = loaded.model.bicomodule
    if block is None:
        raise loaded.fail("missing bicomodule block")
    base = setlike_coalgebra(block.colors, build_field(loaded))
    try:
        return Bicomodule.from_bidegrees(base, tuple(block.basis), dict(block.bidegrees))
    except WorkbenchError as exc:
        raise loaded.fail(exc.message, exc.witness) from None


def resolve(loaded: LoadedDefinition, reference: str) -> LoadedDefinition:
    """A referenced definition: "self" or a path relative to this file."""
    if reference == "self":
        return loaded
    base = loaded.path.parent if loaded.path else Path.cwd()
    return load(base / reference)


def _morphism_block(loaded: LoadedDefinition, name: str):
    block = (loaded.model.morphisms or {}).get(name)
    if block is None:
        raise loaded.fail(f"missing morphism {name!r}", "morphisms")
    return block


def _images(loaded: LoadedDefinition, field: Field, images: dict[str, Combination], source: Sequence[str], target: Sequence[str]) -> Matrix:
    known_source, known_target = set(source), set(target)
    columns = []
    for name in images:
        _known(loaded, name, known_source, "source basis element")
        for image_name in images[name]:
            _known(loaded, image_name, known_target, "target basis element")
    for name in source:
        columns.append(_column(loaded, field, target, images.get(name, {})))
    return Matrix.hstack(field, len(target), columns)


def build_morphism(loaded: LoadedDefinition, name: str) -> CoalgebraMorphism:
    block = _morphism_block(loaded, name)
    source = build_coalgebra(resolve(loaded, block.source))
    target = build_coalgebra(resolve(loaded, block.target))
    if source.field != target.field:
        raise loaded.fail("morphism between coalgebras over different fields", name)
    matrix = _images(loaded, source.field, block.images, source.basis_names, target.basis_names)
    return CoalgebraMorphism(source, target, matrix)


def build_colored_morphism(loaded: LoadedDefinition, name: str) -> ColoredMorphism:
    """The reduced pair (f̄, i) of a morphism between two simply colored files."""
    block = _morphism_block(loaded, name)
    f = build_morphism(loaded, name)
    src = build_colored(resolve(loaded, block.source))
    dst = build_colored(resolve(loaded, block.target))
    return restrict_morphism(f, src, dst)


def build_cogenerator_map(loaded: LoadedDefinition, name: str) -> tuple[Matrix, dict[str, str]]:
    """f: C̄ → M and the color map φ for a morphism whose target is the file's bicomodule."""
    block = _morphism_block(loaded, name)
    if block.target != "bicomodule":
        raise loaded.fail(f"morphism {name!r} must target the bicomodule", name)
    c = build_coalgebra(resolve(loaded, block.source))
    m = build_bicomodule(loaded)
    matrix = _images(loaded, c.field, block.images, c.basis_names, m.basis_names)
    return matrix, dict(block.colors)


def build_conv_map(loaded: LoadedDefinition) -> ConvMap:
    c, a = build_coalgebra(loaded), build_algebra(loaded)
    block = loaded.model.conv_map
    if block is None:
        raise loaded.fail("missing conv_map block")
    matrix = _images(loaded, c.field, block.images, c.basis_names, a.basis_names)
    return ConvMap(c, a, matrix)
