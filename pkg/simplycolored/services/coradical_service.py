"""Wedge products, the Jacobson radical of the dual, coradicals, filtrations and pointedness."""
from typing import Optional

import structlog

from ..core.config import settings
from ..core.exactlin import (
    Matrix,
    Scalar,
    Subspace,
    charpoly_linear_roots,
    coordinates,
    full,
    image,
    inverse,
    is_subspace,
    kernel,
    preimage,
    quotient_map,
    span,
    subspace_sum,
    tensor_subspace,
    tensor_swap,
)
from ..core.exceptions import UnsupportedCharacteristicError, VerificationError
from ..models.coalgebra import Algebra, Coalgebra, CoalgebraMorphism
from ..models.colored import Filtration, PointedResult, PointedVerdict
from ..models.report import ValidationReport
from .coalgebra_service import check_surjective, dual_algebra, image_coalgebra, is_setlike, is_subcoalgebra, restrict_coalgebra

logger = structlog.get_logger(__name__)


# ── Wedges ───────────────────────────────────────────────────────

def wedge(c: Coalgebra, x: Subspace, y: Subspace) -> Subspace:
    """X ∧ Y as the kernel of C → C⊗C → C/X ⊗ C/Y."""
    return kernel(quotient_map(x).kron(quotient_map(y)) @ c.delta)


def wedge_preimage(c: Coalgebra, x: Subspace, y: Subspace) -> Subspace:
    """X ∧ Y as Δ⁻¹(C ⊗ Y + X ⊗ C)."""
    whole = full(c.field, c.dim)
    return preimage(c.delta, subspace_sum(tensor_subspace(whole, y), tensor_subspace(x, whole)))


def wedge_power(c: Coalgebra, x: Subspace, n: int) -> Subspace:
    """∧ⁿX, with ∧¹X = X."""
    out = x
    for _ in range(n - 1):
        out = wedge(c, out, x)
    return out


# ── Radical and coradical ────────────────────────────────────────

def _trace(m: Matrix) -> Scalar:
    total = m.field.zero
    for i in range(m.rows):
        total += m.get(i, i)
    return total


def _products(a: Algebra, left: Subspace, right: Subspace) -> Subspace:
    columns = [a.product(left.vector(i), right.vector(j)) for i in range(left.dim) for j in range(right.dim)]
    if not columns:
        return span(a.field, a.dim, Matrix.zeros(a.field, 0, a.dim))
    return span(a.field, a.dim, Matrix.hstack(a.field, a.dim, columns).T)


def jacobson_radical(a: Algebra) -> Subspace:
    """Radical as the kernel of the trace form (x, y) ↦ tr(L_x L_y).

    Valid over Q and over GF(p) with p > dim; the result is re-verified to be
    a nilpotent two-sided ideal.
    """
    p = a.field.characteristic
    if p and p <= a.dim:
        raise UnsupportedCharacteristicError(
            f"trace-form radical needs characteristic 0 or p > {a.dim}, got {a.field.name}"
        )
    n = a.dim
    traces = Matrix.from_entries(
        a.field, 1, n, ((0, k, _trace(a.left_multiplication(Matrix.unit_column(a.field, n, k)))) for k in range(n))
    )
    form_row = traces @ a.mult
    form = Matrix.from_entries(a.field, n, n, ((r // n, r % n, v) for _, r, v in form_row.items()))
    radical = kernel(form)

    whole = full(a.field, n)
    if not (is_subspace(_products(a, radical, whole), radical) and is_subspace(_products(a, whole, radical), radical)):
        raise VerificationError("trace-form kernel is not a two-sided ideal")
    power = radical
    for _ in range(n + 1):
        if power.dim == 0:
            break
        power = _products(a, power, radical)
    if power.dim != 0:
        raise VerificationError("trace-form kernel is not nilpotent")
    logger.debug("radical_computed", dim=n, radical_dim=radical.dim)
    return radical


def coradical(c: Coalgebra) -> Subspace:
    """Annihilator in C of the radical of the dual algebra."""
    radical = jacobson_radical(dual_algebra(c))
    c0 = kernel(radical.basis) if radical.dim else full(c.field, c.dim)
    if not is_subcoalgebra(c, c0):
        raise VerificationError("coradical is not a subcoalgebra")
    logger.info("coradical_computed", dim=c.dim, coradical_dim=c0.dim)
    return c0


def coradical_filtration(c: Coalgebra) -> Filtration:
    """C₀ = coradical, Cₙ = Cₙ₋₁ ∧ C₀ until the chain stops growing."""
    c0 = coradical(c)
    terms = [c0]
    for _ in range(settings.MAX_FILTRATION_STEPS):
        nxt = wedge(c, terms[-1], c0)
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    else:
        raise VerificationError("coradical filtration did not stabilise")
    exhaustive = terms[-1].dim == c.dim
    logger.info("filtration_computed", dims=[t.dim for t in terms], exhaustive=exhaustive)
    return Filtration(c, tuple(terms), exhaustive)


# ── Pointedness ──────────────────────────────────────────────────

def _is_commutative(a: Algebra) -> bool:
    return a.mult @ tensor_swap(a.field, a.dim, a.dim) == a.mult


def _restricted_operator(a: Algebra, b: Matrix, block: Subspace) -> Matrix:
    images = a.left_multiplication(b) @ block.columns
    return coordinates(block, images)


def _primitive_idempotents(a: Algebra) -> Optional[list[Matrix]]:
    """Split the unit of a commutative semisimple algebra into primitive idempotents.

    Returns None when some block only splits over an extension field.
    """
    pending = [a.unit]
    done: list[Matrix] = []
    while pending:
        e = pending.pop(0)
        block = image(a.left_multiplication(e))
        if block.dim == 0:
            continue
        if block.dim == 1:
            done.append(e)
            continue
        split = None
        for k in range(a.dim):
            b = a.product(e, Matrix.unit_column(a.field, a.dim, k))
            roots = charpoly_linear_roots(_restricted_operator(a, b, block))
            if roots is None:
                return None
            if len(roots) > 1:
                split = (b, roots)
                break
        if split is None:
            raise VerificationError("semisimple block with scalar multiplication operators")
        b, roots = split
        for lam in roots:
            x = e
            for mu in roots:
                if mu == lam:
                    continue
                factor = (b - e.scale(mu)).scale(a.field.one / (lam - mu))
                x = a.product(x, factor)
            if a.product(x, x) != x:
                raise VerificationError("eigenprojection is not idempotent")
            pending.append(x)
    return done


def _leading(m: Matrix) -> int:
    rows = [i for i, _ in m.columns.get(0, [])]
    return min(rows) if rows else -1


def is_pointed(c: Coalgebra) -> PointedResult:
    c0 = coradical(c)
    sub, inclusion = restrict_coalgebra(c, c0)
    dual = dual_algebra(sub)
    if not _is_commutative(dual):
        logger.info("pointedness_decided", verdict=PointedVerdict.NOT_POINTED.value)
        return PointedResult(PointedVerdict.NOT_POINTED, c0)
    idempotents = _primitive_idempotents(dual)
    if idempotents is None:
        logger.info("pointedness_decided", verdict=PointedVerdict.NOT_SPLIT.value)
        return PointedResult(PointedVerdict.NOT_SPLIT, c0)

    functionals = Matrix.hstack(c.field, sub.dim, idempotents).T
    dual_basis = inverse(functionals)
    if dual_basis is None:
        raise VerificationError("primitive idempotents are not a basis of the dual")
    setlikes = []
    for j in range(sub.dim):
        g = inclusion.matrix @ dual_basis.col(j)
        if not is_setlike(c, g):
            raise VerificationError("dual vector of a primitive idempotent is not set-like", witness=c.describe(g))
        setlikes.append(g)
    setlikes.sort(key=lambda g: (_leading(g), c.describe(g)))
    logger.info("pointedness_decided", verdict=PointedVerdict.POINTED.value, setlikes=len(setlikes))
    return PointedResult(PointedVerdict.POINTED, c0, tuple(setlikes))


# ── Properties checked on instances ──────────────────────────────

def check_surjective_image(f: CoalgebraMorphism) -> ValidationReport:
    """For surjective f: C → D with C pointed, D is pointed and f(C₀) = D₀."""
    report = ValidationReport(subject="surjective image")
    report.add("surjective", check_surjective(f))
    source = is_pointed(f.source)
    report.add("source_pointed", source.pointed, detail=source.verdict.value)
    target = is_pointed(f.target)
    report.add("target_pointed", target.pointed, detail=target.verdict.value)
    mapped = span(f.target.field, f.target.dim, (f.matrix @ source.coradical.columns).T)
    report.add("coradical_image", mapped == target.coradical, detail=f"dim {mapped.dim} vs {target.coradical.dim}")
    return report


def check_containment(c: Coalgebra, colors: Subspace) -> ValidationReport:
    """C₀ ⊆ span(G), checked on the instance."""
    report = ValidationReport(subject="coradical containment")
    c0 = coradical(c)
    report.add("coradical_in_color_span", is_subspace(c0, colors), detail=f"dim C0 = {c0.dim}, dim span(G) = {colors.dim}")
    return report


def image_is_subcoalgebra(f: CoalgebraMorphism) -> bool:
    return is_subcoalgebra(f.target, image_coalgebra(f))
