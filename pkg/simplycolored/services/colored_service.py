"""Splittings onto set-like coalgebras, reduced comultiplication, conilpotency and bigradings.

Bigrading convention: ᵍCʰ has left color g and right color h, so for x in
ᵍC̄ʰ the coactions are ω_l(x) = g ⊗ x and ω_r(x) = x ⊗ h, and
Δ(x) = g ⊗ x + Δ̄(x) + x ⊗ h.
"""
from typing import Optional, Sequence

import structlog

from ..core.config import settings
from ..core.exactlin import (
    Field,
    Matrix,
    Subspace,
    contains,
    coordinates,
    full,
    image,
    intersect,
    kernel,
    solve,
    span,
    subspace_sum,
    tensor_apply,
    tensor_apply_all,
    tensor_from_column,
    tensors_to_matrix,
    zero,
)
from ..core.exceptions import (
    GradingError,
    InvalidMorphismError,
    InvalidRetractionError,
    NotConilpotentError,
    NotPointedError,
    NotSplitError,
    VerificationError,
)
from ..models.coalgebra import Coalgebra, CoalgebraMorphism
from ..models.colored import (
    ColoredMorphism,
    ConilpotencyResult,
    Filtration,
    OrthoIdempotents,
    PointedVerdict,
    ReducedColored,
    SimplyColored,
)
from ..models.report import ValidationReport
from .coalgebra_service import (
    check_coalgebra,
    check_morphism,
    compare,
    is_setlike,
    restrict_coalgebra,
    tensor_coalgebra,
)
from .coradical_service import coradical, is_pointed, wedge_power

logger = structlog.get_logger(__name__)


# ── Retraction and coactions ─────────────────────────────────────

def coideal(sc: SimplyColored) -> Subspace:
    """I = ker δ."""
    return kernel(sc.retraction)


def check_retraction(sc: SimplyColored) -> ValidationReport:
    c, d = sc.coalgebra, sc.retraction
    report = ValidationReport(subject="retraction")
    bad = next((name for g, name in zip(sc.colors, sc.color_names) if not is_setlike(c, g)), None)
    report.add("colors_setlike", bad is None, bad)
    independent = sc.color_span.dim == len(sc.colors)
    report.add("colors_independent", independent)
    compare(report, "retraction_idempotent", c, d @ d, d)
    compare(report, "counit_preserved", c, c.counit @ d, c.counit)
    compare(report, "comultiplicative", c, c.delta @ d, d.kron(d) @ c.delta)
    report.add("image_spans_colors", image(d) == sc.color_span, detail=f"rank {d.rank()} vs {sc.color_span.dim} colors")
    split = intersect(image(d), coideal(sc)).dim == 0 and image(d).dim + coideal(sc).dim == c.dim
    report.add("direct_sum_decomposition", split)
    return report


def check_retraction_or_raise(sc: SimplyColored) -> SimplyColored:
    report = check_retraction(sc)
    if not report.passed:
        failed = report.failures()[0]
        raise InvalidRetractionError(f"invalid retraction: {failed.name} fails", witness=failed.witness)
    return sc


def coactions(sc: SimplyColored) -> tuple[Matrix, Matrix]:
    """(ω_l, ω_r) = ((δ ⊗ id)Δ, (id ⊗ δ)Δ)."""
    c = sc.coalgebra
    ident = c.identity()
    return sc.retraction.kron(ident) @ c.delta, ident.kron(sc.retraction) @ c.delta


def verify_bicomodule(sc: SimplyColored) -> ValidationReport:
    """Bicomodule axioms of the induced coactions and their compatibility with Δ."""
    c = sc.coalgebra
    ident = c.identity()
    delta = c.delta
    eps = c.counit
    wl, wr = coactions(sc)
    report = ValidationReport(subject="bicomodule")

    compare(report, "right_coaction_coassociative", c, wr.kron(ident) @ wr, ident.kron(delta) @ wr)
    compare(report, "right_coaction_counital", c, ident.kron(eps) @ wr, ident)
    compare(report, "left_coaction_coassociative", c, ident.kron(wl) @ wl, delta.kron(ident) @ wl)
    compare(report, "left_coaction_counital", c, eps.kron(ident) @ wl, ident)
    compare(report, "coactions_commute", c, wl.kron(ident) @ wr, ident.kron(wr) @ wl)
    compare(report, "comultiplication_balanced", c, wr.kron(ident) @ delta, ident.kron(wl) @ delta)
    compare(report, "left_coaction_compatible", c, ident.kron(delta) @ wl, wl.kron(ident) @ delta)
    compare(report, "right_coaction_compatible", c, ident.kron(wr) @ delta, delta.kron(ident) @ wr)

    right_chain = [ident.kron(wr) @ wr, ident.kron(wl) @ wr, ident.kron(delta) @ wr, wr.kron(ident) @ wr]
    _chain(report, "right_coaction_absorption", c, right_chain)
    left_chain = [wl.kron(ident) @ wl, wr.kron(ident) @ wl, delta.kron(ident) @ wl, ident.kron(wl) @ wl]
    _chain(report, "left_coaction_absorption", c, left_chain)
    logger.debug("bicomodule_verified", passed=report.passed)
    return report


def _chain(report: ValidationReport, name: str, c: Coalgebra, maps: Sequence[Matrix]) -> None:
    witness = None
    for lhs, rhs in zip(maps, maps[1:]):
        column = lhs.first_difference(rhs)
        if column is not None:
            witness = c.basis_names[column]
            break
    report.add(name, witness is None, witness)


# ── Reduced comultiplication and conilpotency ────────────────────

def reduced_delta(sc: SimplyColored) -> Matrix:
    """Δ̄ = Δ - ω_r - ω_l."""
    wl, wr = coactions(sc)
    return sc.coalgebra.delta - wr - wl


def check_reduced_coassoc(sc: SimplyColored) -> bool:
    ident = sc.coalgebra.identity()
    bar = reduced_delta(sc)
    return bar.kron(ident) @ bar == ident.kron(bar) @ bar


def kernel_chain(
    field: Field, delta_bar: Matrix, space: Subspace
) -> tuple[bool, list[Subspace], list[Optional[int]]]:
    """K_n = ker(Δ̄ⁿ on space), left-iterated, until K_n = space or the chain stalls.

    Also returns, per echelon basis vector of space, the least n with Δ̄ⁿ = 0.
    """
    n = space.ambient
    tensors = [tensor_from_column(space.vector(k)) for k in range(space.dim)]
    index: list[Optional[int]] = [None] * space.dim
    chain: list[Subspace] = []
    if space.dim == 0:
        return True, chain, index
    previous = zero(field, n)
    for step in range(1, settings.MAX_FILTRATION_STEPS + 1):
        tensors = [tensor_apply(t, delta_bar, 0, (n, n)) for t in tensors]
        for k, t in enumerate(tensors):
            if not t and index[k] is None:
                index[k] = step
        coefficients = kernel(tensors_to_matrix(field, tensors))
        current = span(field, n, coefficients.basis @ space.basis)
        if current == previous:
            return False, chain, index
        chain.append(current)
        if current.dim == space.dim:
            return True, chain, index
        previous = current
    raise VerificationError("kernel chain did not stabilise")


def conilpotency(sc: SimplyColored) -> ConilpotencyResult:
    i = coideal(sc)
    ok, chain, index = kernel_chain(sc.field, reduced_delta(sc), i)
    names = {sc.coalgebra.describe(i.vector(k)): index[k] for k in range(i.dim)}
    logger.info("conilpotency_computed", conilpotent=ok, chain=[k.dim for k in chain])
    return ConilpotencyResult(ok, i, tuple(chain), names)


def projection_identity_check(sc: SimplyColored, n: int) -> bool:
    """π^{⊗(n+1)} Δ̄ⁿ = π^{⊗(n+1)} Δⁿ on I, both left-iterated n times."""
    c = sc.coalgebra
    pi = sc.projection
    bar = reduced_delta(sc)
    i = coideal(sc)
    for k in range(i.dim):
        reduced = full_ = tensor_from_column(i.vector(k))
        for _ in range(n):
            reduced = tensor_apply(reduced, bar, 0, (c.dim, c.dim))
            full_ = tensor_apply(full_, c.delta, 0, (c.dim, c.dim))
        if tensor_apply_all(reduced, pi) != tensor_apply_all(full_, pi):
            return False
    return True


# ── Orthonormal idempotents and the bigrading ────────────────────

def ortho_idempotents(sc: SimplyColored) -> OrthoIdempotents:
    """e_g = (dual basis functional of g on span(G)) ∘ δ, verified orthonormal."""
    c = sc.coalgebra
    coords = solve(sc.color_matrix, sc.retraction)
    if coords is None:
        raise InvalidRetractionError("retraction image is not spanned by the colors")
    functionals = {name: coords.row(k) for k, name in enumerate(sc.color_names)}
    total = Matrix.zeros(c.field, 1, c.dim)
    for g, eg in functionals.items():
        total = total + eg
        for h, eh in functionals.items():
            product = eg.kron(eh) @ c.delta
            expected = eg if g == h else Matrix.zeros(c.field, 1, c.dim)
            if product != expected:
                raise VerificationError("idempotent family is not orthogonal", witness=f"{g},{h}")
    if total != c.counit:
        raise VerificationError("idempotent family does not sum to the counit")
    return OrthoIdempotents(functionals)


def left_action(c: Coalgebra, e: Matrix) -> Matrix:
    """L_e(x) = e · x = (id ⊗ e)Δ(x)."""
    return c.identity().kron(e) @ c.delta


def right_action(c: Coalgebra, e: Matrix) -> Matrix:
    """R_e(x) = x · e = (e ⊗ id)Δ(x)."""
    return e.kron(c.identity()) @ c.delta


def component_projector(sc: SimplyColored, family: OrthoIdempotents, g: str, h: str) -> Matrix:
    """Projector onto ᵍCʰ: x ↦ e_h · x · e_g."""
    c = sc.coalgebra
    return left_action(c, family.functionals[h]) @ right_action(c, family.functionals[g])


def check_idempotent_actions(sc: SimplyColored) -> ValidationReport:
    c = sc.coalgebra
    family = ortho_idempotents(sc)
    ident = c.identity()
    report = ValidationReport(subject="idempotent actions")
    lefts = {g: left_action(c, e) for g, e in family.functionals.items()}
    rights = {g: right_action(c, e) for g, e in family.functionals.items()}
    zero_map = Matrix.zeros(c.field, c.dim, c.dim)

    orth_ok = all(
        lefts[g] @ lefts[h] == (lefts[g] if g == h else zero_map) and rights[g] @ rights[h] == (rights[g] if g == h else zero_map)
        for g in lefts for h in lefts
    )
    report.add("actions_orthogonal", orth_ok)
    left_sum, right_sum = zero_map, zero_map
    for g in lefts:
        left_sum, right_sum = left_sum + lefts[g], right_sum + rights[g]
    report.add("actions_sum_to_identity", left_sum == ident and right_sum == ident)
    report.add(
        "actions_colinear",
        all(ident.kron(lefts[g]) @ c.delta == c.delta @ lefts[g] and rights[g].kron(ident) @ c.delta == c.delta @ rights[g] for g in lefts),
    )
    split = Matrix.zeros(c.field, c.dim * c.dim, c.dim)
    for g in lefts:
        split = split + lefts[g].kron(rights[g]) @ c.delta
    report.add("comultiplication_splits", split == c.delta)
    report.add("actions_commute", all(lefts[g] @ rights[h] == rights[h] @ lefts[g] for g in lefts for h in lefts))
    return report


def bigraded_decomposition(sc: SimplyColored) -> dict[tuple[str, str], Subspace]:
    """(g, h) ↦ ᵍCʰ, keyed in lexicographic order of color names, with the graded properties verified."""
    c = sc.coalgebra
    family = ortho_idempotents(sc)
    pairs = sorted((g, h) for g in sc.color_names for h in sc.color_names)
    projectors = {(g, h): component_projector(sc, family, g, h) for g, h in pairs}
    components = {pair: image(p) for pair, p in projectors.items()}

    total = sum(s.dim for s in components.values())
    joined = zero(c.field, c.dim)
    for s in components.values():
        joined = subspace_sum(joined, s)
    if total != c.dim or joined.dim != c.dim:
        raise VerificationError("bigraded components do not form a direct sum decomposition")

    for g, h in pairs:
        p = projectors[(g, h)]
        graded = Matrix.zeros(c.field, c.dim * c.dim, c.dim)
        for s in sc.color_names:
            graded = graded + projectors[(g, s)].kron(projectors[(s, h)]) @ c.delta @ p
        if graded != c.delta @ p:
            raise VerificationError("Δ does not respect the bigrading", witness=f"({g},{h})")

    i = coideal(sc)
    if sum(intersect(s, i).dim for s in components.values()) != i.dim:
        raise VerificationError("coideal is not bigraded")
    logger.debug("bigrading_computed", dims={f"{g},{h}": s.dim for (g, h), s in components.items()})
    return components


# ── Pointed coalgebras with a splitting ──────────────────────────

def from_pointed_with_splitting(c: Coalgebra, delta: Matrix) -> SimplyColored:
    result = is_pointed(c)
    if result.verdict is PointedVerdict.NOT_SPLIT:
        raise NotSplitError("coradical only splits over an extension field")
    if not result.pointed:
        raise NotPointedError("coalgebra is not pointed")
    sc = SimplyColored(c, result.setlikes, delta)
    check_retraction_or_raise(sc)
    if image(delta) != result.coradical:
        raise InvalidRetractionError("retraction is not onto the coradical")
    if not conilpotency(sc).conilpotent:
        raise VerificationError("pointed coalgebra with a splitting is not conilpotent")
    return sc


def verify_pointed(sc: SimplyColored) -> ValidationReport:
    """coradical(C) = span(G), and no set-like outside span(G)."""
    report = ValidationReport(subject="pointed")
    c0 = coradical(sc.coalgebra)
    report.add("coradical_is_color_span", c0 == sc.color_span, detail=f"dim C0 = {c0.dim}, |G| = {len(sc.colors)}")
    result = is_pointed(sc.coalgebra)
    outside = next((g for g in result.setlikes if not contains(sc.color_span, g)), None)
    report.add(
        "all_setlikes_are_colors",
        result.pointed and outside is None and len(result.setlikes) == len(sc.colors),
        None if outside is None else sc.coalgebra.describe(outside),
        detail=result.verdict.value,
    )
    return report


def color_wedge_filtration(sc: SimplyColored) -> Filtration:
    """∧ⁿ⁺¹ span(G) for n ≥ 0 until it stops growing."""
    c = sc.coalgebra
    base = sc.color_span
    terms = [base]
    for n in range(2, settings.MAX_FILTRATION_STEPS):
        nxt = wedge_power(c, base, n)
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    return Filtration(c, tuple(terms), terms[-1].dim == c.dim)


# ── Constructions on simply colored coalgebras ───────────────────

def tensor_colored(a: SimplyColored, b: SimplyColored) -> SimplyColored:
    """Colors g ⊗ s, retraction δ₁ ⊗ δ₂; the coideal is C ⊗ J + I ⊗ D."""
    c = tensor_coalgebra(a.coalgebra, b.coalgebra)
    colors = tuple(g.kron(s) for g in a.colors for s in b.colors)
    names = tuple(f"{g}*{s}" for g in a.color_names for s in b.color_names)
    return SimplyColored(c, colors, a.retraction.kron(b.retraction), names)


def from_coaugmentation(c: Coalgebra, e: Matrix, name: Optional[str] = None) -> SimplyColored:
    """Coaugmented coalgebra with set-like e: δ(x) = ε(x) e."""
    if not is_setlike(c, e):
        raise InvalidRetractionError("coaugmentation is not set-like", witness=c.describe(e))
    return SimplyColored(c, (e,), e @ c.counit, (name,) if name else ())


def restrict_colored(sc: SimplyColored, d: Subspace) -> SimplyColored:
    """A subcoalgebra D with δ(D) ⊆ D inherits the splitting; colors are G ∩ D."""
    if not contains(d, sc.retraction @ d.columns):
        raise InvalidRetractionError("retraction does not preserve the subcoalgebra")
    sub, inclusion = restrict_coalgebra(sc.coalgebra, d)
    retraction = coordinates(d, sc.retraction @ d.columns)
    kept = [(coordinates(d, g), name) for g, name in zip(sc.colors, sc.color_names) if contains(d, g)]
    result = SimplyColored(sub, tuple(g for g, _ in kept), retraction, tuple(n for _, n in kept))
    return check_retraction_or_raise(result)


# ── Reduced colored coalgebras ───────────────────────────────────

def homogeneous_basis(sc: SimplyColored) -> tuple[Matrix, list[tuple[str, str]]]:
    """Rows spanning I, each homogeneous, ordered by pivot, with their bidegrees."""
    i = coideal(sc)
    rows: list[tuple[int, Matrix, tuple[str, str]]] = []
    for pair, component in bigraded_decomposition(sc).items():
        piece = intersect(component, i)
        for k in range(piece.dim):
            rows.append((piece.pivots[k], piece.basis.row(k), pair))
    rows.sort(key=lambda r: r[0])
    basis = Matrix.vstack(sc.field, sc.coalgebra.dim, [r for _, r, _ in rows]) if rows else Matrix.zeros(sc.field, 0, sc.coalgebra.dim)
    return basis, [p for _, _, p in rows]


def reduce(sc: SimplyColored) -> ReducedColored:
    check_retraction_or_raise(sc)
    c = sc.coalgebra
    basis, degrees = homogeneous_basis(sc)
    d = basis.rows
    coord = solve(basis, Matrix.identity(sc.field, d))
    if coord is None:
        raise VerificationError("homogeneous basis is not independent")
    left_inverse = coord.T
    bar = reduced_delta(sc) @ basis.T
    delta_bar = left_inverse.kron(left_inverse) @ bar
    names = tuple(c.describe(basis.row(k).T) for k in range(d))
    rc = ReducedColored(sc.field, names, sc.color_names, tuple(degrees), delta_bar)
    logger.debug("reduced", dim=d, colors=len(sc.colors))
    return rc


def reduction_isomorphism(sc: SimplyColored, rc: ReducedColored) -> CoalgebraMorphism:
    """unreduce(rc) → sc sending colors to colors and the reduced basis to the homogeneous basis of I."""
    basis, _ = homogeneous_basis(sc)
    matrix = Matrix.hstack(sc.field, sc.coalgebra.dim, [sc.color_matrix, basis.T])
    return CoalgebraMorphism(unreduce(rc).coalgebra, sc.coalgebra, matrix)


def check_reduced(rc: ReducedColored) -> ValidationReport:
    report = ValidationReport(subject="reduced colored")
    n = rc.dim
    ident = Matrix.identity(rc.field, n)
    bar = rc.delta_bar
    bad = None
    for k, (g, h) in enumerate(rc.degrees):
        for row, value in bar.columns.get(k, []):
            a, b = divmod(row, n)
            ga, ha = rc.degrees[a]
            gb, hb = rc.degrees[b]
            if ga != g or hb != h or ha != gb:
                bad = rc.basis_names[k]
                break
        if bad:
            break
    report.add("graded", bad is None, bad)
    column = (bar.kron(ident) @ bar).first_difference(ident.kron(bar) @ bar)
    report.add("coassociative", column is None, None if column is None else rc.basis_names[column])
    ok, _, index = kernel_chain(rc.field, bar, full(rc.field, n))
    stuck = next((rc.basis_names[k] for k, v in enumerate(index) if v is None), None)
    report.add("conilpotent", ok, None if ok else stuck)
    return report


def unreduce(rc: ReducedColored) -> SimplyColored:
    """Adjoin C[G]: Δ(g) = g ⊗ g and Δ(x) = g ⊗ x + Δ̄(x) + x ⊗ h for x of bidegree (g, h)."""
    report = check_reduced(rc)
    if not report.passed:
        failed = report.failures()[0]
        raise GradingError(f"invalid reduced colored coalgebra: {failed.name} fails", witness=failed.witness)
    m, d = len(rc.colors), rc.dim
    n = m + d
    names = tuple(rc.colors) + tuple(rc.basis_names)
    position = {g: k for k, g in enumerate(rc.colors)}
    terms = [(k, k, k, 1) for k in range(m)]
    for k, (g, h) in enumerate(rc.degrees):
        x = m + k
        terms.append((x, position[g], x, 1))
        terms.append((x, x, position[h], 1))
    for row, col, value in rc.delta_bar.items():
        a, b = divmod(row, d)
        terms.append((m + col, m + a, m + b, value))
    c = Coalgebra.from_structure_constants(rc.field, names, terms, {k: 1 for k in range(m)})
    colors = tuple(Matrix.unit_column(rc.field, n, k) for k in range(m))
    retraction = Matrix.from_entries(rc.field, n, n, ((k, k, 1) for k in range(m)))
    return SimplyColored(c, colors, retraction, tuple(rc.colors))


def check_colored_morphism(f: ColoredMorphism) -> ValidationReport:
    report = ValidationReport(subject="colored morphism")
    src, dst = f.source, f.target
    missing = next((g for g in src.colors if f.color_map.get(g) not in dst.colors), None)
    report.add("color_map_total", missing is None, missing)
    bad = None
    if missing is None:
        for k, (g, h) in enumerate(src.degrees):
            target = (f.color_map[g], f.color_map[h])
            if any(dst.degrees[row] != target for row, _ in f.fbar.columns.get(k, [])):
                bad = src.basis_names[k]
                break
    report.add("graded", missing is None and bad is None, bad)
    lhs = dst.delta_bar @ f.fbar
    rhs = f.fbar.kron(f.fbar) @ src.delta_bar
    column = lhs.first_difference(rhs)
    report.add("comultiplicative", column is None, None if column is None else src.basis_names[column])
    return report


def extend_morphism(f: ColoredMorphism) -> CoalgebraMorphism:
    """The coalgebra morphism with f(g) = i(g) on colors and f|_I = f̄."""
    report = check_colored_morphism(f)
    if not report.passed:
        failed = report.failures()[0]
        raise InvalidMorphismError(f"not a colored morphism: {failed.name} fails", witness=failed.witness)
    src, dst = unreduce(f.source), unreduce(f.target)
    ms, md = len(f.source.colors), len(f.target.colors)
    items = [(f.target.colors.index(f.color_map[g]), k, 1) for k, g in enumerate(f.source.colors)]
    items += [(md + r, ms + c, v) for r, c, v in f.fbar.items()]
    matrix = Matrix.from_entries(src.field, dst.coalgebra.dim, src.coalgebra.dim, items)
    morphism = CoalgebraMorphism(src.coalgebra, dst.coalgebra, matrix)
    if not check_morphism(morphism).passed:
        raise VerificationError("extension of a colored morphism is not a coalgebra morphism")
    return morphism


def restrict_morphism(f: CoalgebraMorphism, src: SimplyColored, dst: SimplyColored) -> ColoredMorphism:
    """The reduced pair (f̄, i) of a coalgebra morphism compatible with the splittings."""
    if not check_morphism(f).passed:
        raise InvalidMorphismError("not a coalgebra morphism")
    if dst.retraction @ f.matrix != f.matrix @ src.retraction:
        raise InvalidMorphismError("morphism does not commute with the retractions")
    color_map = {}
    for g, name in zip(src.colors, src.color_names):
        image_g = f.matrix @ g
        match = next((n for h, n in zip(dst.colors, dst.color_names) if h == image_g), None)
        if match is None:
            raise InvalidMorphismError("a color is not sent to a color", witness=name)
        color_map[name] = match
    rs, rd = reduce(src), reduce(dst)
    basis_s, _ = homogeneous_basis(src)
    basis_d, _ = homogeneous_basis(dst)
    coords = solve(basis_d.T, f.matrix @ basis_s.T)
    if coords is None:
        raise InvalidMorphismError("morphism does not map I into I")
    return ColoredMorphism(coords, color_map, rs, rd)


def assert_conilpotent(sc: SimplyColored) -> ConilpotencyResult:
    result = conilpotency(sc)
    if not result.conilpotent:
        stuck = next((name for name, v in result.index.items() if v is None), None)
        raise NotConilpotentError("coideal is not conilpotent", witness=stuck)
    return result


def is_simply_colored(sc: SimplyColored) -> ValidationReport:
    """Coalgebra axioms, retraction and conilpotency in one report."""
    report = ValidationReport(subject="simply colored")
    report.extend(check_coalgebra(sc.coalgebra), "coalgebra")
    retraction = check_retraction(sc)
    report.extend(retraction, "retraction")
    if retraction.passed:
        report.add("conilpotent", conilpotency(sc).conilpotent)
    return report
