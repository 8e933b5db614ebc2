"""Convolution algebras Hom(C, A), convolution inverses, bialgebras and antipodes."""
from math import comb
from typing import Optional, Sequence

import structlog

from ..core.config import settings
from ..core.exactlin import (
    Field,
    Matrix,
    Subspace,
    inverse,
    intersect,
    operator_matrix,
    solve,
    solve_matrix_equations,
    tensor_apply,
    tensor_apply_all,
    tensor_from_column,
    tensor_swap,
)
from ..core.exceptions import (
    DimensionMismatchError,
    InvalidCoalgebraError,
    NotAGroupError,
    NotConilpotentError,
    NotInvertibleError,
    SearchLimitError,
    VerificationError,
)
from ..models.coalgebra import Algebra, Bialgebra, Coalgebra
from ..models.colored import SimplyColored
from ..models.report import ValidationReport
from ..models.structures import ConvMap
from .coalgebra_service import check_algebra, check_coalgebra, is_subcoalgebra, restrict_coalgebra, same_coalgebra
from .colored_service import check_retraction_or_raise, conilpotency

logger = structlog.get_logger(__name__)


def _same_algebra(a: Algebra, b: Algebra) -> bool:
    return a is b or (a.basis_names == b.basis_names and a.mult == b.mult and a.unit == b.unit)


# ── The convolution algebra ──────────────────────────────────────

def convolve(f: ConvMap, g: ConvMap) -> ConvMap:
    """(f ⋆ g) = m ∘ (f ⊗ g) ∘ Δ."""
    if not (same_coalgebra(f.source, g.source) and _same_algebra(f.target, g.target)):
        raise DimensionMismatchError("convolution factors live in different Hom spaces")
    a, c = f.target, f.source
    return ConvMap(c, a, a.mult @ f.matrix.kron(g.matrix) @ c.delta)


def conv_unit(c: Coalgebra, a: Algebra) -> ConvMap:
    """u = η ∘ ε."""
    return ConvMap(c, a, a.unit @ c.counit)


def conv_add(f: ConvMap, g: ConvMap) -> ConvMap:
    return ConvMap(f.source, f.target, f.matrix + g.matrix)


def conv_sub(f: ConvMap, g: ConvMap) -> ConvMap:
    return ConvMap(f.source, f.target, f.matrix - g.matrix)


def convolution_operator(f: ConvMap, side: str = "left") -> Matrix:
    """h ↦ f ⋆ h (side="left") or h ↦ h ⋆ f (side="right") on vec(Hom(C, A))."""
    c, a = f.source, f.target
    if side == "left":
        fn = lambda h: convolve(f, ConvMap(c, a, h)).matrix
    elif side == "right":
        fn = lambda h: convolve(ConvMap(c, a, h), f).matrix
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return operator_matrix(c.field, a.dim, c.dim, fn)


def solve_convolution_inverse(f: ConvMap) -> Optional[ConvMap]:
    """Exhaustive exact solve of f ⋆ h = u = h ⋆ f over all of Hom(C, A)."""
    c, a = f.source, f.target
    cap = settings.MAX_BRUTE_FORCE_DIM
    if c.dim > cap or a.dim > cap:
        raise SearchLimitError(f"exhaustive convolution solve is capped at dimension {cap}")
    u = conv_unit(c, a).matrix
    solution = solve_matrix_equations(
        c.field,
        a.dim,
        c.dim,
        [
            (lambda h: convolve(f, ConvMap(c, a, h)).matrix, u),
            (lambda h: convolve(ConvMap(c, a, h), f).matrix, u),
        ],
    )
    if not solution.exists:
        return None
    return ConvMap(c, a, solution.particular)


# ── Convolution inverses through the coradical splitting ─────────

def element_inverse(a: Algebra, y: Matrix) -> Optional[Matrix]:
    """Two-sided inverse of y in A from the systems y·z = 1 and z·y = 1."""
    right = solve(a.left_multiplication(y), a.unit)
    if right is None:
        return None
    left = solve(a.right_multiplication(y), a.unit)
    if left is None or left != right:
        return None
    return right


def _geometric_inverse(f: ConvMap, g: ConvMap, steps: int) -> ConvMap:
    """h = g ⋆ Σ_{n=0}^{steps} (u - f ⋆ g)^{⋆n}, verified two-sided."""
    u = conv_unit(f.source, f.target)
    r = conv_sub(u, convolve(f, g))
    power, total = u, u
    for _ in range(steps):
        power = convolve(power, r)
        total = conv_add(total, power)
    h = convolve(g, total)
    if convolve(f, h).matrix != u.matrix or convolve(h, f).matrix != u.matrix:
        raise VerificationError("geometric series did not produce a two-sided convolution inverse")
    return h


def conv_inverse(sc: SimplyColored, f: ConvMap) -> ConvMap:
    """Invert f from its values on the colors; refuses with the first color where f(g) is not a unit."""
    if not same_coalgebra(f.source, sc.coalgebra):
        raise DimensionMismatchError("convolution map is not defined on this coalgebra")
    check_retraction_or_raise(sc)
    a = f.target
    coords = solve(sc.color_matrix, sc.retraction)
    inverses = []
    for color, name in zip(sc.colors, sc.color_names):
        y = element_inverse(a, f.matrix @ color)
        if y is None:
            logger.info("conv_inverse_refused", color=name)
            raise NotInvertibleError("f(g) is not invertible in the target algebra", color=name)
        inverses.append(y)
    g0 = Matrix.hstack(a.field, a.dim, inverses) @ coords
    result = conilpotency(sc)
    if not result.conilpotent:
        stuck = next((n for n, v in result.index.items() if v is None), None)
        raise NotConilpotentError("coideal is not conilpotent", witness=stuck)
    h = _geometric_inverse(f, ConvMap(f.source, a, g0), result.bound)
    logger.info("conv_inverse_computed", colors=len(sc.colors), bound=result.bound)
    return h


def vanishing_index(c: Coalgebra, pi_m: Matrix) -> Optional[int]:
    """Least n ≤ dim C with π_M^{⊗(n+1)} Δⁿ = 0, iterating Δ on the left factor."""
    tensors = [tensor_from_column(c.basis_vector(k)) for k in range(c.dim)]
    for n in range(c.dim + 1):
        if all(not tensor_apply_all(t, pi_m) for t in tensors):
            return n
        tensors = [tensor_apply(t, c.delta, 0, (c.dim, c.dim)) for t in tensors]
    return None


def conv_inverse_general(c: Coalgebra, f: ConvMap, f0: Subspace, m: Subspace) -> ConvMap:
    """Invert f given a subcoalgebra F₀ and a complement M with π_M^{⊗(n+1)}Δⁿ = 0 for some n."""
    if f0.dim + m.dim != c.dim or intersect(f0, m).dim != 0:
        raise DimensionMismatchError("F0 and M do not decompose the coalgebra")
    if not is_subcoalgebra(c, f0):
        raise InvalidCoalgebraError("F0 is not a subcoalgebra")
    basis = Matrix.hstack(c.field, c.dim, [f0.columns, m.columns])
    change = inverse(basis)
    coord_f0 = change.select_rows(range(f0.dim))
    pi_m = m.columns @ change.select_rows(range(f0.dim, c.dim))
    steps = vanishing_index(c, pi_m)
    if steps is None:
        raise NotConilpotentError("projection onto M never annihilates the iterated comultiplication")

    sub, inclusion = restrict_coalgebra(c, f0)
    restricted = ConvMap(sub, f.target, f.matrix @ inclusion.matrix)
    inv0 = solve_convolution_inverse(restricted)
    if inv0 is None:
        raise NotInvertibleError("f restricted to F0 is not convolution invertible")
    g = ConvMap(c, f.target, inv0.matrix @ coord_f0)
    return _geometric_inverse(f, g, steps)


# ── Bialgebras ───────────────────────────────────────────────────

def _pair_witness(c: Coalgebra, lhs: Matrix, rhs: Matrix) -> Optional[str]:
    column = lhs.first_difference(rhs)
    if column is None:
        return None
    i, j = divmod(column, c.dim)
    return f"{c.basis_names[i]}*{c.basis_names[j]}"


def check_bialgebra(b: Bialgebra) -> ValidationReport:
    c, a = b.coalgebra, b.algebra
    n = c.dim
    report = ValidationReport(subject=b.name or "bialgebra")
    report.extend(check_coalgebra(c), "coalgebra")
    report.extend(check_algebra(a), "algebra")

    ident = c.identity()
    middle = ident.kron(tensor_swap(c.field, n, n)).kron(ident)
    lhs = c.delta @ a.mult
    rhs = a.mult.kron(a.mult) @ middle @ c.delta.kron(c.delta)
    witness = _pair_witness(c, lhs, rhs)
    report.add("delta_multiplicative", witness is None, witness)
    witness = _pair_witness(c, c.counit @ a.mult, c.counit.kron(c.counit))
    report.add("counit_multiplicative", witness is None, witness)
    report.add("unit_setlike", c.delta @ a.unit == a.unit.kron(a.unit))
    report.add("counit_unit", (c.counit @ a.unit).get(0, 0) == c.field.one)
    logger.debug("bialgebra_checked", dim=n, passed=report.passed)
    return report


def identity_conv_map(b: Bialgebra) -> ConvMap:
    return ConvMap(b.coalgebra, b.algebra, b.coalgebra.identity())


def _color_position(sc: SimplyColored, x: Matrix) -> Optional[int]:
    return next((k for k, g in enumerate(sc.colors) if g == x), None)


def check_group(b: Bialgebra, sc: SimplyColored) -> None:
    """Raise NotAGroupError naming the first failing axiom of the set-likes under multiplication."""
    a = b.algebra
    names = sc.color_names
    for g, gn in zip(sc.colors, names):
        for h, hn in zip(sc.colors, names):
            if _color_position(sc, a.product(g, h)) is None:
                raise NotAGroupError("set-likes are not closed under multiplication", "closure", f"{gn}*{hn}")
    if _color_position(sc, a.unit) is None:
        raise NotAGroupError("the unit is not a set-like color", "unit")
    for g, gn in zip(sc.colors, names):
        if not any(a.product(g, h) == a.unit and a.product(h, g) == a.unit for h in sc.colors):
            raise NotAGroupError("set-like without an inverse among the set-likes", "inverse", gn)


def antipode(b: Bialgebra, sc: SimplyColored) -> ConvMap:
    """The convolution inverse of id, which exists exactly when the set-likes form a group."""
    if not same_coalgebra(b.coalgebra, sc.coalgebra):
        raise DimensionMismatchError("splitting is not on the bialgebra's coalgebra")
    report = check_bialgebra(b)
    if not report.passed:
        failed = report.failures()[0]
        raise InvalidCoalgebraError(f"not a bialgebra: {failed.name} fails", witness=failed.witness)
    check_group(b, sc)
    s = conv_inverse(sc, identity_conv_map(b))
    logger.info("antipode_computed", dim=b.coalgebra.dim)
    return s


# ── Bialgebra builders ───────────────────────────────────────────

def monoid_bialgebra(
    names: Sequence[str],
    table: dict[tuple[str, str], str],
    field: Optional[Field] = None,
    name: Optional[str] = None,
) -> Bialgebra:
    """k[M] for a finite monoid given by its multiplication table; elements are set-like."""
    field = field or Field()
    names = tuple(names)
    index = {x: k for k, x in enumerate(names)}
    n = len(names)
    for x in names:
        for y in names:
            if (x, y) not in table or table[(x, y)] not in index:
                raise InvalidCoalgebraError("multiplication table is incomplete", witness=f"{x}*{y}")
    unit = next((e for e in names if all(table[(e, x)] == x and table[(x, e)] == x for x in names)), None)
    if unit is None:
        raise NotAGroupError("multiplication table has no identity element", "unit")
    c = Coalgebra.from_structure_constants(field, names, [(k, k, k, 1) for k in range(n)], {k: 1 for k in range(n)})
    mult = [(index[x], index[y], index[table[(x, y)]], 1) for x in names for y in names]
    a = Algebra.from_structure_constants(field, names, mult, {index[unit]: 1})
    return Bialgebra(c, a, name)


def group_bialgebra(
    names: Sequence[str],
    table: dict[tuple[str, str], str],
    field: Optional[Field] = None,
    name: Optional[str] = None,
) -> Bialgebra:
    b = monoid_bialgebra(names, table, field, name)
    unit = b.algebra.basis_names[next(i for i, _, _ in b.algebra.unit.items())]
    for x in names:
        if not any(table[(x, y)] == unit and table[(y, x)] == unit for y in names):
            raise NotAGroupError("element without an inverse", "inverse", x)
    return b


def cyclic_group_bialgebra(n: int, field: Optional[Field] = None) -> Bialgebra:
    """k[Z/n] on 1, g, g2, …"""
    if n < 1:
        raise InvalidCoalgebraError("cyclic group order must be positive")
    names = ["1", "g"] + [f"g{k}" for k in range(2, n)]
    names = names[:n]
    table = {(names[i], names[j]): names[(i + j) % n] for i in range(n) for j in range(n)}
    return group_bialgebra(names, table, field, f"k[Z/{n}]")


def truncated_polynomial_bialgebra(field: Field, n: int) -> Bialgebra:
    """k[x]/(xⁿ) with x primitive: Δ(xᵏ) = Σ binom(k, i) xⁱ ⊗ xᵏ⁻ⁱ.

    A bialgebra exactly when the binomials binom(n, i), 0 < i < n, vanish in the field.
    """
    if n < 1:
        raise InvalidCoalgebraError("truncation degree must be positive")
    names = ["1", "x"] + [f"x{k}" for k in range(2, n)]
    names = names[:n]
    delta = [(k, i, k - i, comb(k, i)) for k in range(n) for i in range(k + 1)]
    c = Coalgebra.from_structure_constants(field, names, delta, {0: 1})
    mult = [(i, j, i + j, 1) for i in range(n) for j in range(n) if i + j < n]
    a = Algebra.from_structure_constants(field, names, mult, {0: 1})
    return Bialgebra(c, a, f"k[x]/(x^{n})")
