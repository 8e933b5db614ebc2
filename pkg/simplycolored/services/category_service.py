"""Coproducts, equalizers, coequalizers and truncated products, with universal-property solves."""
from itertools import product as cartesian
from typing import Sequence

import structlog

from ..core.config import settings
from ..core.exactlin import (
    Matrix,
    Subspace,
    complement_section,
    contains,
    format_combination,
    image,
    intersect,
    kernel,
    quotient_map,
    solve,
    solve_matrix_equations,
    span,
    subspace_sum,
    tensor_apply,
    tensor_apply_all,
    tensor_from_column,
    zero,
)
from ..core.exceptions import (
    DimensionMismatchError,
    FieldMismatchError,
    GradingError,
    InvalidCoalgebraError,
    InvalidMorphismError,
    SearchLimitError,
    VerificationError,
)
from ..core.unionfind import UnionFind
from ..models.coalgebra import CoalgebraMorphism
from ..models.colored import ColoredMorphism, ReducedColored, SimplyColored
from ..models.structures import Bicomodule
from ..models.universal import Coequalizer, Coproduct, Equalizer, Factorization, Product, ProductSpace
from .coalgebra_service import (
    check_morphism,
    closure_under,
    direct_sum,
    same_coalgebra,
    setlike_coalgebra,
    subcoalgebra_closure,
)
from .colored_service import (
    check_colored_morphism,
    check_reduced,
    check_retraction_or_raise,
    reduced_delta,
    restrict_colored,
)
from .construction_service import cotensor_coalgebra, cotensor_words, word_name

logger = structlog.get_logger(__name__)


def _cap(*dims: int) -> None:
    cap = settings.MAX_UNIVERSAL_DIM
    if max(dims, default=0) > cap:
        raise SearchLimitError(f"universal-property solve is capped at dimension {cap}")


def _same_reduced(a: ReducedColored, b: ReducedColored) -> bool:
    return a is b or (
        a.basis_names == b.basis_names and a.colors == b.colors and a.degrees == b.degrees and a.delta_bar == b.delta_bar
    )


def _raise_if_invalid(f: ColoredMorphism) -> None:
    report = check_colored_morphism(f)
    if not report.passed:
        failed = report.failures()[0]
        raise InvalidMorphismError(f"not a colored morphism: {failed.name} fails", witness=failed.witness)


# ── Coproducts ───────────────────────────────────────────────────

def coproduct(scs: Sequence[SimplyColored]) -> Coproduct:
    """Direct sum with concatenated colors and block-diagonal retraction."""
    if not scs:
        raise InvalidCoalgebraError("coproduct of an empty family")
    c, injections = direct_sum([sc.coalgebra for sc in scs])
    colors = tuple(inj.matrix @ g for sc, inj in zip(scs, injections) for g in sc.colors)
    retraction = Matrix.block_diagonal(c.field, [sc.retraction for sc in scs])
    result = SimplyColored(c, colors, retraction)
    for sc, inj in zip(scs, injections):
        if result.retraction @ inj.matrix != inj.matrix @ sc.retraction:
            raise VerificationError("injection does not commute with the retractions")
    check_retraction_or_raise(result)
    logger.info("coproduct_built", factors=len(scs), dim=c.dim, colors=len(colors))
    return Coproduct(result, tuple(injections))


def coproduct_factorization(
    cp: Coproduct, target: SimplyColored, legs: Sequence[CoalgebraMorphism]
) -> Factorization:
    """The map out of the coproduct restricting to each leg."""
    c, t = cp.colored.coalgebra, target.coalgebra
    if len(legs) != len(cp.injections):
        raise DimensionMismatchError("one leg per coproduct factor is required")
    _cap(c.dim, t.dim)
    equations = [(lambda f, inj=inj: f @ inj.matrix, leg.matrix) for inj, leg in zip(cp.injections, legs)]
    solution = solve_matrix_equations(c.field, t.dim, c.dim, equations)
    if not solution.exists:
        return Factorization(False, False, detail="legs admit no common extension")
    f = solution.particular
    ok = check_morphism(CoalgebraMorphism(c, t, f)).passed and target.retraction @ f == f @ cp.colored.retraction
    if not ok:
        return Factorization(False, False, detail="induced map is not a morphism of simply colored coalgebras")
    return Factorization(True, solution.kernel.dim == 0, f)


# ── Equalizers ───────────────────────────────────────────────────

def equalizer(sc: SimplyColored, f: CoalgebraMorphism, g: CoalgebraMorphism) -> Equalizer:
    """Largest subcoalgebra inside ker(f - g), with the restricted splitting."""
    c = sc.coalgebra
    if not (same_coalgebra(f.source, c) and same_coalgebra(g.source, c)):
        raise DimensionMismatchError("morphisms do not start at this coalgebra")
    if not same_coalgebra(f.target, g.target):
        raise DimensionMismatchError("morphisms are not parallel")
    d = subcoalgebra_closure(c, kernel(f.matrix - g.matrix))
    sub = restrict_colored(sc, d)
    logger.info("equalizer_built", dim=c.dim, equalizer_dim=d.dim)
    return Equalizer(sub, CoalgebraMorphism(sub.coalgebra, c, d.columns))


def equalizer_factorization(
    eq: Equalizer, f: CoalgebraMorphism, g: CoalgebraMorphism, h: CoalgebraMorphism
) -> Factorization:
    """The map into the equalizer through which h factors."""
    if f.matrix @ h.matrix != g.matrix @ h.matrix:
        return Factorization(False, False, detail="test map does not equalize the pair")
    inclusion = eq.inclusion.matrix
    x = h.source
    _cap(inclusion.rows, inclusion.cols, x.dim)
    solution = solve_matrix_equations(x.field, inclusion.cols, x.dim, [(lambda m: inclusion @ m, h.matrix)])
    if not solution.exists:
        return Factorization(False, False, detail="test map leaves the equalizer")
    ok = check_morphism(CoalgebraMorphism(x, eq.colored.coalgebra, solution.particular)).passed
    if not ok:
        return Factorization(False, False, detail="factorization is not a coalgebra morphism")
    return Factorization(True, solution.kernel.dim == 0, solution.particular)


# ── Coequalizers of reduced colored coalgebras ───────────────────

def color_quotient(
    a: dict[str, str], b: dict[str, str], colors: Sequence[str]
) -> tuple[list[tuple[str, ...]], dict[str, str]]:
    """Classes of the relation generated by a(x) ~ b(x), and each color's merged name."""
    uf = UnionFind(colors)
    for x in a:
        uf.union(a[x], b[x])
    classes = [tuple(members) for members in uf.classes(colors)]
    merged = {member: "~".join(cls) for cls in classes for member in cls}
    return classes, merged


def _coordinate_span(rc: ReducedColored, indices: Sequence[int]) -> Subspace:
    rows = Matrix.from_entries(rc.field, len(indices), rc.dim, ((r, k, 1) for r, k in enumerate(indices)))
    return span(rc.field, rc.dim, rows)


def coequalizer_reduced(p: ColoredMorphism, q: ColoredMorphism) -> Coequalizer:
    """Quotient of the target by Im(f - g), regraded by the merged colors."""
    _raise_if_invalid(p)
    _raise_if_invalid(q)
    if not (_same_reduced(p.source, q.source) and _same_reduced(p.target, q.target)):
        raise DimensionMismatchError("colored morphisms are not parallel")
    d = p.target
    classes, merged = color_quotient(p.color_map, q.color_map, d.colors)
    degrees = [(merged[g], merged[h]) for g, h in d.degrees]

    w = image(p.fbar - q.fbar)
    groups: dict[tuple[str, str], list[int]] = {}
    for k, degree in enumerate(degrees):
        groups.setdefault(degree, []).append(k)
    graded = sum(intersect(w, _coordinate_span(d, idx)).dim for idx in groups.values())
    if graded != w.dim:
        raise VerificationError("image of f - g is not graded for the merged colors")
    qmap = quotient_map(w)
    if w.dim and not (qmap.kron(qmap) @ d.delta_bar @ w.columns).is_zero():
        raise VerificationError("image of f - g is not a coideal")

    pivots = set(w.pivots)
    kept = [k for k in range(d.dim) if k not in pivots]
    bar = qmap.kron(qmap) @ d.delta_bar @ complement_section(w)
    rc = ReducedColored(
        d.field,
        tuple(d.basis_names[k] for k in kept),
        tuple("~".join(cls) for cls in classes),
        tuple(degrees[k] for k in kept),
        bar,
    )
    projection = ColoredMorphism(qmap, dict(merged), d, rc)
    if not check_reduced(rc).passed or not check_colored_morphism(projection).passed:
        raise VerificationError("coequalizer is not a reduced colored coalgebra")
    logger.info("coequalizer_built", dim=d.dim, quotient_dim=rc.dim, colors=len(rc.colors))
    return Coequalizer(rc, projection, tuple(classes))


def coequalizer_factorization(
    co: Coequalizer, p: ColoredMorphism, q: ColoredMorphism, h: ColoredMorphism
) -> Factorization:
    """The morphism out of the coequalizer through which h factors."""
    if not _same_reduced(h.source, p.target):
        raise DimensionMismatchError("test morphism does not start at the common target")
    same_colors = all(h.color_map[p.color_map[g]] == h.color_map[q.color_map[g]] for g in p.source.colors)
    if h.fbar @ p.fbar != h.fbar @ q.fbar or not same_colors:
        return Factorization(False, False, detail="test morphism does not coequalize the pair")
    color_map = {}
    for cls in co.classes:
        images = {h.color_map[g] for g in cls}
        if len(images) != 1:
            return Factorization(False, False, detail=f"colors of class {'~'.join(cls)} have different images")
        color_map["~".join(cls)] = images.pop()
    e = h.target
    _cap(co.reduced.dim, e.dim)
    projection = co.projection.fbar
    solution = solve_matrix_equations(e.field, e.dim, co.reduced.dim, [(lambda x: x @ projection, h.fbar)])
    if not solution.exists:
        return Factorization(False, False, detail="test morphism does not vanish on Im(f - g)")
    candidate = ColoredMorphism(solution.particular, color_map, co.reduced, e)
    if not check_colored_morphism(candidate).passed:
        return Factorization(False, False, detail="factorization is not a colored morphism")
    return Factorization(True, solution.kernel.dim == 0, solution.particular)


# ── Truncated products ───────────────────────────────────────────

def _tuple_name(colors: tuple[str, ...]) -> str:
    return "(" + ",".join(colors) + ")"


def colored_product_space(rcs: Sequence[ReducedColored]) -> ProductSpace:
    """⊕ over pairs of color tuples of ∏_α ᵍᵅC̄_αʰᵅ, as a bicomodule over the product color set."""
    if not rcs:
        raise InvalidCoalgebraError("product of an empty family")
    field = rcs[0].field
    if any(rc.field != field for rc in rcs):
        raise FieldMismatchError("reduced colored coalgebras over different fields")
    tuples = [tuple(t) for t in cartesian(*[rc.colors for rc in rcs])]
    copies, names, bidegrees = {}, [], {}
    for lt in tuples:
        for rt in tuples:
            for alpha, rc in enumerate(rcs):
                for k, (g, h) in enumerate(rc.degrees):
                    if g != lt[alpha] or h != rt[alpha]:
                        continue
                    name = f"{alpha}:{rc.basis_names[k]}{_tuple_name(lt)}{_tuple_name(rt)}"
                    copies[(alpha, k, lt, rt)] = len(names)
                    names.append(name)
                    bidegrees[name] = (_tuple_name(lt), _tuple_name(rt))
    base = setlike_coalgebra([_tuple_name(t) for t in tuples], field)
    bicomodule = Bicomodule.from_bidegrees(base, tuple(names), bidegrees)
    projections = tuple(
        Matrix.from_entries(field, rc.dim, len(names), ((k, idx, 1) for (a, k, _, _), idx in copies.items() if a == alpha))
        for alpha, rc in enumerate(rcs)
    )
    return ProductSpace(tuple(tuples), bicomodule, copies, projections)


def _homogeneous_part(rc: ReducedColored, w: Subspace) -> Subspace:
    out = zero(rc.field, rc.dim)
    for component in rc.components().values():
        out = subspace_sum(out, intersect(w, component))
    return out


def _graded_closure(rc: ReducedColored, w: Subspace) -> Subspace:
    """Largest Δ̄-closed graded subspace of w."""
    for _ in range(settings.MAX_FILTRATION_STEPS):
        closed = closure_under(rc.delta_bar, _homogeneous_part(rc, w))
        if closed == w:
            return closed
        w = closed
    raise VerificationError("graded closure did not stabilise")


def _homogeneous_rows(rc: ReducedColored, e: Subspace) -> tuple[Matrix, list[tuple[str, str]]]:
    rows = []
    for pair, component in rc.components().items():
        piece = intersect(e, component)
        for k in range(piece.dim):
            rows.append((piece.pivots[k], piece.basis.row(k), pair))
    rows.sort(key=lambda r: r[0])
    if len(rows) != e.dim:
        raise VerificationError("product subspace is not graded")
    basis = Matrix.vstack(rc.field, rc.dim, [r for _, r, _ in rows])
    return basis, [p for _, _, p in rows]


def product_truncated(rcs: Sequence[ReducedColored], max_words: int) -> Product:
    """Largest graded Δ̄-closed subspace of the truncated cotensor coalgebra on which every projection is a Δ̄-map."""
    if max_words < 1:
        raise GradingError("max_words must be at least 1")
    space = colored_product_space(rcs)
    m = space.bicomodule
    field = m.field
    colors = m.base.basis_names
    t = cotensor_coalgebra(colors, m, max_words)
    nc, n = len(colors), t.coalgebra.dim

    words = [w for length in range(1, max_words + 1) for w in cotensor_words(m, length)]
    position = {w: k for k, w in enumerate(words)}
    idx = list(range(nc, n))
    bar = reduced_delta(t).select_rows([a * n + b for a in idx for b in idx]).select_cols(idx)
    degrees = m.bidegrees()
    ambient = ReducedColored(
        field,
        tuple(word_name(m, w) for w in words),
        colors,
        tuple((degrees[w[0]][0], degrees[w[-1]][1]) for w in words),
        bar,
    )

    d = len(words)
    length_one = Matrix.from_entries(field, m.dim, d, ((k, position[(k,)], 1) for k in range(m.dim)))
    phis = [proj @ length_one for proj in space.projections]
    constraints = [rc.delta_bar @ phi - phi.kron(phi) @ bar for rc, phi in zip(rcs, phis)]
    w = kernel(Matrix.vstack(field, d, constraints))
    e = _graded_closure(ambient, w)

    if e.dim:
        basis, pairs = _homogeneous_rows(ambient, e)
        left_inverse = solve(basis, Matrix.identity(field, e.dim)).T
        delta_e = left_inverse.kron(left_inverse) @ bar @ basis.T
    else:
        basis, pairs = Matrix.zeros(field, 0, d), []
        delta_e = Matrix.zeros(field, 0, 0)
    names = tuple(format_combination(field, ambient.basis_names, basis.row(k).T) for k in range(e.dim))
    reduced = ReducedColored(field, names, colors, tuple(pairs), delta_e)

    projections = []
    for alpha, (rc, phi) in enumerate(zip(rcs, phis)):
        color_map = {_tuple_name(tp): tp[alpha] for tp in space.color_tuples}
        projection = ColoredMorphism(phi @ basis.T, color_map, reduced, rc)
        _raise_if_invalid(projection)
        projections.append(projection)
    logger.info("product_built", factors=len(rcs), max_words=max_words, ambient_dim=d, dim=e.dim, approximate=True)
    return Product(reduced, tuple(projections), space, ambient, basis.T, position, max_words)


def product_factorization(product: Product, test: ReducedColored, legs: Sequence[ColoredMorphism]) -> Factorization:
    """The pairing map into the truncated product, built word by word, and its uniqueness among graded deformations."""
    if len(legs) != len(product.projections):
        raise DimensionMismatchError("one leg per product factor is required")
    for leg, projection in zip(legs, product.projections):
        _raise_if_invalid(leg)
        if not (_same_reduced(leg.source, test) and _same_reduced(leg.target, projection.target)):
            raise DimensionMismatchError("leg does not run from the test object to its factor")
    p = product.reduced
    _cap(p.dim, test.dim)
    field = test.field
    space = product.space

    color_map = {g: _tuple_name(tuple(leg.color_map[g] for leg in legs)) for g in test.colors}
    items = []
    for j, (g, h) in enumerate(test.degrees):
        lt = tuple(leg.color_map[g] for leg in legs)
        rt = tuple(leg.color_map[h] for leg in legs)
        for alpha, leg in enumerate(legs):
            for k, v in leg.fbar.columns.get(j, []):
                items.append((space.copies[(alpha, k, lt, rt)], j, v))
    f = Matrix.from_entries(field, space.bicomodule.dim, test.dim, items)

    ambient_items = []
    for j in range(test.dim):
        t = tensor_from_column(Matrix.unit_column(field, test.dim, j))
        for length in range(1, product.max_words + 2):
            if not t:
                break
            word_tensor = tensor_apply_all(t, f)
            if length > product.max_words:
                if word_tensor:
                    return Factorization(False, False, detail="test object exceeds the truncation degree")
                break
            for key, v in word_tensor.items():
                if key not in product.words:
                    return Factorization(False, False, detail="pairing map leaves the cotensor subspace")
                ambient_items.append((product.words[key], j, v))
            t = tensor_apply(t, test.delta_bar, 0, (test.dim, test.dim))
    pairing = Matrix.from_entries(field, product.ambient.dim, test.dim, ambient_items)
    e = span(field, product.ambient.dim, product.embedding.T) if p.dim else zero(field, product.ambient.dim)
    if not contains(e, pairing):
        return Factorization(False, False, detail="pairing map leaves the product")
    h = solve(product.embedding, pairing) if p.dim else Matrix.zeros(field, 0, test.dim)
    candidate = ColoredMorphism(h, color_map, test, p)
    if not check_colored_morphism(candidate).passed:
        return Factorization(False, False, detail="pairing map is not a colored morphism")
    if any(proj.fbar @ h != leg.fbar for proj, leg in zip(product.projections, legs)):
        return Factorization(False, False, detail="pairing map does not recover the legs")

    target_degree = {j: (color_map[g], color_map[hh]) for j, (g, hh) in enumerate(test.degrees)}
    zero_pp = Matrix.zeros(field, p.dim * p.dim, test.dim)
    equations = [(lambda x, pr=proj: pr.fbar @ x, Matrix.zeros(field, proj.target.dim, test.dim)) for proj in product.projections]
    equations.append((lambda x: p.delta_bar @ x - (h.kron(x) + x.kron(h)) @ test.delta_bar, zero_pp))
    solution = solve_matrix_equations(field, p.dim, test.dim, equations, mask=lambda i, j: p.degrees[i] == target_degree[j])
    return Factorization(True, solution.kernel.dim == 0, h)
