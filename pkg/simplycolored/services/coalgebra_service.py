"""Coalgebra axioms, morphisms, duals, quotients, closures and the basic constructions."""
from typing import Optional, Sequence

import structlog

from ..core.config import settings
from ..core.exactlin import (
    Field,
    Matrix,
    Subspace,
    complement_section,
    full,
    image,
    intersect,
    kernel,
    quotient_map,
    span,
    tensor_swap,
)
from ..core.exceptions import (
    DimensionMismatchError,
    FieldMismatchError,
    InvalidCoalgebraError,
    InvalidMorphismError,
    NotCoidealError,
    VerificationError,
)
from ..models.coalgebra import Algebra, Coalgebra, CoalgebraMorphism
from ..models.report import ValidationReport

logger = structlog.get_logger(__name__)


def _witness(c: Coalgebra, lhs: Matrix, rhs: Matrix) -> Optional[str]:
    column = lhs.first_difference(rhs)
    return None if column is None else c.basis_names[column]


def compare(report: ValidationReport, name: str, c: Coalgebra, lhs: Matrix, rhs: Matrix) -> bool:
    """Record an identity between two maps out of C, witnessed by the first basis element where they differ."""
    witness = _witness(c, lhs, rhs)
    report.add(name, witness is None, witness)
    return witness is None


# ── Axioms ───────────────────────────────────────────────────────

def check_coalgebra(c: Coalgebra) -> ValidationReport:
    report = ValidationReport(subject="coalgebra")
    ident = c.identity()
    compare(report, "coassociativity", c, c.delta.kron(ident) @ c.delta, ident.kron(c.delta) @ c.delta)
    compare(report, "left_counit", c, c.counit.kron(ident) @ c.delta, ident)
    compare(report, "right_counit", c, ident.kron(c.counit) @ c.delta, ident)
    logger.debug("coalgebra_checked", dim=c.dim, passed=report.passed)
    return report


def check_algebra(a: Algebra) -> ValidationReport:
    report = ValidationReport(subject="algebra")
    ident = Matrix.identity(a.field, a.dim)
    lhs = a.mult @ a.mult.kron(ident)
    rhs = a.mult @ ident.kron(a.mult)
    column = lhs.first_difference(rhs)
    report.add("associativity", column is None, _triple_name(a, column))
    for name, unit_map in (("left_unit", a.unit.kron(ident)), ("right_unit", ident.kron(a.unit))):
        column = (a.mult @ unit_map).first_difference(ident)
        report.add(name, column is None, None if column is None else a.basis_names[column])
    return report


def _triple_name(a: Algebra, column: Optional[int]) -> Optional[str]:
    if column is None:
        return None
    n = a.dim
    i, rest = divmod(column, n * n)
    j, k = divmod(rest, n)
    return f"{a.basis_names[i]}*{a.basis_names[j]}*{a.basis_names[k]}"


def check_morphism(f: CoalgebraMorphism) -> ValidationReport:
    report = ValidationReport(subject="morphism")
    c, d, m = f.source, f.target, f.matrix
    if c.field != d.field:
        raise FieldMismatchError(f"{c.field.name} vs {d.field.name}")
    compare(report, "comultiplicative", c, d.delta @ m, m.kron(m) @ c.delta)
    compare(report, "counital", c, d.counit @ m, c.counit)
    return report


# ── Morphisms ────────────────────────────────────────────────────

def identity_morphism(c: Coalgebra) -> CoalgebraMorphism:
    return CoalgebraMorphism(c, c, c.identity())


def compose(g: CoalgebraMorphism, f: CoalgebraMorphism) -> CoalgebraMorphism:
    """g ∘ f."""
    if f.target is not g.source and f.target.basis_names != g.source.basis_names:
        raise DimensionMismatchError("morphisms are not composable")
    return CoalgebraMorphism(f.source, g.target, g.matrix @ f.matrix)


def ground_coalgebra(field: Field) -> Coalgebra:
    """The one-dimensional coalgebra k."""
    return setlike_coalgebra(["1"], field)


def counit_morphism(c: Coalgebra) -> CoalgebraMorphism:
    return CoalgebraMorphism(c, ground_coalgebra(c.field), c.counit)


def image_coalgebra(f: CoalgebraMorphism) -> Subspace:
    return image(f.matrix)


def image_coideal(f: CoalgebraMorphism, i: Subspace) -> Subspace:
    return span(f.target.field, f.target.dim, (f.matrix @ i.columns).T)


# ── Constructions ────────────────────────────────────────────────

def setlike_coalgebra(names: Sequence[str], field: Optional[Field] = None) -> Coalgebra:
    field = field or Field()
    names = tuple(names)
    if len(set(names)) != len(names):
        dup = next(n for n in names if names.count(n) > 1)
        raise InvalidCoalgebraError("duplicate set-like name", witness=dup)
    n = len(names)
    return Coalgebra.from_structure_constants(field, names, [(i, i, i, 1) for i in range(n)], {i: 1 for i in range(n)})


def matrix_coalgebra(n: int, field: Optional[Field] = None) -> Coalgebra:
    """Δ(e_ij) = Σ_t e_it ⊗ e_tj and ε(e_ij) = δ_ij."""
    if n < 1:
        raise InvalidCoalgebraError("matrix coalgebra needs n >= 1")
    field = field or Field()
    sep = "" if n < 10 else "_"
    names = [f"e{i + 1}{sep}{j + 1}" for i in range(n) for j in range(n)]
    terms = [(i * n + j, i * n + t, t * n + j, 1) for i in range(n) for j in range(n) for t in range(n)]
    return Coalgebra.from_structure_constants(field, names, terms, {i * n + i: 1 for i in range(n)})


def divided_power_coalgebra(n: int, field: Optional[Field] = None) -> Coalgebra:
    """Basis g, x1 … xn with Δ(x_k) = Σ_{i+j=k} x_i ⊗ x_j and x_0 = g."""
    field = field or Field()
    names = ["g"] + [f"x{k}" for k in range(1, n + 1)]
    terms = [(k, i, k - i, 1) for k in range(n + 1) for i in range(k + 1)]
    return Coalgebra.from_structure_constants(field, names, terms, {0: 1})


def _disjoint_names(name_lists: Sequence[Sequence[str]]) -> list[str]:
    flat = [name for names in name_lists for name in names]
    if len(set(flat)) == len(flat):
        return flat
    return [f"{k}:{name}" for k, names in enumerate(name_lists) for name in names]


def _same_field(cs: Sequence) -> Field:
    fields = {c.field for c in cs}
    if len(fields) > 1:
        raise FieldMismatchError("coalgebras over different fields")
    return next(iter(fields)) if fields else Field()


def direct_sum(cs: Sequence[Coalgebra]) -> tuple[Coalgebra, list[CoalgebraMorphism]]:
    field = _same_field(cs)
    names = _disjoint_names([c.basis_names for c in cs])
    total = len(names)
    terms, counit = [], {}
    offset = 0
    for c in cs:
        for i, j, k, v in c.structure_constants():
            terms.append((offset + i, offset + j, offset + k, v))
        for _, j, v in c.counit.items():
            counit[offset + j] = v
        offset += c.dim
    result = Coalgebra.from_structure_constants(field, names, terms, counit)
    injections, offset = [], 0
    for c in cs:
        matrix = Matrix.from_entries(field, total, c.dim, ((offset + i, i, 1) for i in range(c.dim)))
        injections.append(CoalgebraMorphism(c, result, matrix))
        offset += c.dim
    return result, injections


def tensor_coalgebra(c: Coalgebra, d: Coalgebra) -> Coalgebra:
    """Δ_{C⊗D} = (id ⊗ τ ⊗ id)(Δ_C ⊗ Δ_D), ε_{C⊗D} = ε_C ⊗ ε_D."""
    field = _same_field([c, d])
    n, m = c.dim, d.dim
    middle = Matrix.identity(field, n).kron(tensor_swap(field, n, m)).kron(Matrix.identity(field, m))
    delta = middle @ c.delta.kron(d.delta)
    names = tuple(f"{a}*{b}" for a in c.basis_names for b in d.basis_names)
    return Coalgebra(field, names, delta, c.counit.kron(d.counit))


def dual_algebra(c: Coalgebra) -> Algebra:
    """C* with e*_i · e*_j read off Δ: multiplication is Δᵀ and the unit is ε."""
    return Algebra(c.field, tuple(f"{name}*" for name in c.basis_names), c.delta.T, c.counit.T)


# ── Elements and subspaces ───────────────────────────────────────

def is_setlike(c: Coalgebra, x: Matrix) -> bool:
    if x.shape != (c.dim, 1):
        raise DimensionMismatchError(f"vector of shape {x.shape} in a {c.dim}-dimensional coalgebra")
    return c.delta @ x == x.kron(x) and (c.counit @ x).get(0, 0) == c.field.one


def coideal_check(c: Coalgebra, i: Subspace) -> bool:
    """Δ(I) ⊆ I⊗C + C⊗I, tested as (π_I ⊗ π_I) Δ = 0 on I, and ε(I) = 0."""
    if i.ambient != c.dim:
        raise DimensionMismatchError(f"subspace of a {i.ambient}-dimensional space")
    if i.dim == 0:
        return True
    q = quotient_map(i)
    return (q.kron(q) @ c.delta @ i.columns).is_zero() and (c.counit @ i.columns).is_zero()


def quotient_coalgebra(c: Coalgebra, i: Subspace) -> tuple[Coalgebra, CoalgebraMorphism]:
    """C/I on the basis of cosets of non-pivot basis elements."""
    if not coideal_check(c, i):
        raise NotCoidealError("subspace is not a coideal")
    q = quotient_map(i)
    s = complement_section(i)
    kept = [k for k in range(c.dim) if k not in set(i.pivots)]
    names = tuple(c.basis_names[k] for k in kept)
    quotient = Coalgebra(c.field, names, q.kron(q) @ c.delta @ s, c.counit @ s)
    projection = CoalgebraMorphism(c, quotient, q)
    logger.debug("quotient_built", dim=c.dim, quotient_dim=quotient.dim)
    return quotient, projection


def is_subcoalgebra(c: Coalgebra, w: Subspace) -> bool:
    if w.dim == 0:
        return True
    q = quotient_map(w)
    ident = c.identity()
    images = c.delta @ w.columns
    return (q.kron(ident) @ images).is_zero() and (ident.kron(q) @ images).is_zero()


def closure_under(delta: Matrix, w: Subspace) -> Subspace:
    """Largest D ⊆ w with delta(D) ⊆ D ⊗ D, for any (possibly counit-free) comultiplication."""
    field = w.field
    n = w.ambient
    ident = Matrix.identity(field, n)
    for step in range(settings.MAX_FILTRATION_STEPS):
        if w.dim == 0:
            return w
        q = quotient_map(w)
        images = delta @ w.columns
        constraints = Matrix.vstack(field, w.dim, [q.kron(ident) @ images, ident.kron(q) @ images])
        coefficients = kernel(constraints)
        smaller = span(field, n, coefficients.basis @ w.basis)
        logger.debug("closure_step", step=step, dim=smaller.dim)
        if smaller.dim == w.dim:
            return w
        w = smaller
    raise VerificationError("subcoalgebra closure did not stabilise")


def subcoalgebra_closure(c: Coalgebra, w: Subspace) -> Subspace:
    if w.ambient != c.dim:
        raise DimensionMismatchError(f"subspace of a {w.ambient}-dimensional space")
    return closure_under(c.delta, w)


def restrict_coalgebra(c: Coalgebra, d: Subspace) -> tuple[Coalgebra, CoalgebraMorphism]:
    """A subcoalgebra D as a coalgebra on its echelon basis, with the inclusion morphism."""
    if not is_subcoalgebra(c, d):
        raise InvalidCoalgebraError("subspace is not a subcoalgebra")
    n = c.dim
    inclusion = d.columns
    rows = [p * n + r for p in d.pivots for r in d.pivots]
    delta = (c.delta @ inclusion).select_rows(rows)
    names = tuple(c.describe(d.vector(k)) for k in range(d.dim))
    if len(set(names)) != len(names):
        names = tuple(f"d{k + 1}" for k in range(d.dim))
    sub = Coalgebra(c.field, names, delta, c.counit @ inclusion)
    return sub, CoalgebraMorphism(sub, c, inclusion)


def whole(c: Coalgebra) -> Subspace:
    return full(c.field, c.dim)


def check_surjective(f: CoalgebraMorphism) -> bool:
    return f.matrix.rank() == f.target.dim


def same_coalgebra(a: Coalgebra, b: Coalgebra) -> bool:
    """Structural equality: same basis names, Δ and ε."""
    return a is b or (a.basis_names == b.basis_names and a.delta == b.delta and a.counit == b.counit)


def check_morphism_or_raise(f: CoalgebraMorphism) -> CoalgebraMorphism:
    report = check_morphism(f)
    if not report.passed:
        failed = report.failures()[0]
        raise InvalidMorphismError(f"not a coalgebra morphism: {failed.name} fails", witness=failed.witness)
    return f


def intersect_all(spaces: Sequence[Subspace], ambient: Subspace) -> Subspace:
    out = ambient
    for s in spaces:
        out = intersect(out, s)
    return out
