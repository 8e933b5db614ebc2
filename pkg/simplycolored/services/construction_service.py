"""Path coalgebras, space-like gradings, cotensor products and the cofree cotensor coalgebra.

Paths and words deconcatenate with the later segment on the left: a path
p from u to w has Δ(p) = w ⊗ p + Σ (later) ⊗ (earlier) + p ⊗ u, and a word
[x1|…|xn] has Δ = left(x1) ⊗ w + Σ [x1…xi] ⊗ [xi+1…xn] + w ⊗ right(xn).
"""
from typing import Optional, Sequence

import structlog

from ..core.config import settings
from ..core.exactlin import (
    Field,
    Matrix,
    Subspace,
    contains,
    image,
    intersect,
    inverse,
    kernel,
    solve,
    solve_matrix_equations,
    tensor_apply,
    tensor_apply_all,
    tensor_from_column,
)
from ..core.exceptions import (
    DimensionMismatchError,
    GradingError,
    InvalidCoalgebraError,
    InvalidMorphismError,
    SearchLimitError,
    VerificationError,
)
from ..models.coalgebra import Coalgebra, CoalgebraMorphism
from ..models.colored import SimplyColored
from ..models.report import ValidationReport
from ..models.structures import Bicomodule, GradedCoalgebra, Quiver
from .coalgebra_service import check_coalgebra, check_morphism, is_setlike, same_coalgebra
from .colored_service import bigraded_decomposition, coideal, reduced_delta

logger = structlog.get_logger(__name__)


def _projection(field: Field, n: int, indices: Sequence[int]) -> Matrix:
    return Matrix.from_entries(field, n, n, ((k, k, 1) for k in indices))


# ── Path coalgebras ──────────────────────────────────────────────

def enumerate_paths(q: Quiver, max_len: int) -> list[tuple[int, ...]]:
    """Paths of length 1..max_len as tuples of arrow indices, first arrow first, breadth-first in arrow order."""
    if max_len < 0:
        raise GradingError("max_len must be non-negative")
    layer = [(k,) for k in range(len(q.arrows))] if max_len >= 1 else []
    paths = list(layer)
    for _ in range(2, max_len + 1):
        layer = [
            p + (k,)
            for p in layer
            for k, a in enumerate(q.arrows)
            if a.source == q.arrows[p[-1]].target
        ]
        paths.extend(layer)
    return paths


def path_name(q: Quiver, path: tuple[int, ...]) -> str:
    names = [q.arrows[k].name for k in reversed(path)]
    sep = "" if all(len(n) == 1 for n in names) else "."
    return sep.join(names)


def path_coalgebra(q: Quiver, max_len: int, field: Optional[Field] = None) -> SimplyColored:
    """Paths of length ≤ max_len with the deconcatenation coproduct, split onto the vertices."""
    field = field or Field()
    paths = enumerate_paths(q, max_len)
    nv = len(q.vertices)
    vertex = {v: k for k, v in enumerate(q.vertices)}
    position = {p: nv + k for k, p in enumerate(paths)}
    names = list(q.vertices) + [path_name(q, p) for p in paths]
    if len(set(names)) != len(names):
        dup = next(n for n in names if names.count(n) > 1)
        raise InvalidCoalgebraError("path names collide", witness=dup)

    terms = [(k, k, k, 1) for k in range(nv)]
    for p, idx in position.items():
        source = vertex[q.arrows[p[0]].source]
        target = vertex[q.arrows[p[-1]].target]
        terms.append((idx, target, idx, 1))
        terms.append((idx, idx, source, 1))
        for split in range(1, len(p)):
            terms.append((idx, position[p[split:]], position[p[:split]], 1))

    c = Coalgebra.from_structure_constants(field, names, terms, {k: 1 for k in range(nv)})
    colors = tuple(Matrix.unit_column(field, c.dim, k) for k in range(nv))
    sc = SimplyColored(c, colors, _projection(field, c.dim, range(nv)), tuple(q.vertices))
    logger.info("path_coalgebra_built", vertices=nv, arrows=len(q.arrows), max_len=max_len, dim=c.dim)
    return sc


def path_grading(q: Quiver, max_len: int, field: Optional[Field] = None) -> GradedCoalgebra:
    sc = path_coalgebra(q, max_len, field)
    degrees = [0] * len(q.vertices) + [len(p) for p in enumerate_paths(q, max_len)]
    return GradedCoalgebra(sc.coalgebra, tuple(degrees))


def count_paths(q: Quiver, max_len: int) -> int:
    """#vertices + #paths of length 1..max_len, from powers of the adjacency matrix."""
    field = Field()
    n = len(q.vertices)
    vertex = {v: k for k, v in enumerate(q.vertices)}
    adjacency = Matrix.from_entries(field, n, n, ((vertex[a.target], vertex[a.source], 1) for a in q.arrows))
    total = n
    power = Matrix.identity(field, n)
    for _ in range(max_len):
        power = adjacency @ power
        total += sum(int(v) for _, _, v in power.items())
    return total


# ── Graded coalgebras ────────────────────────────────────────────

def check_grading(g: GradedCoalgebra) -> ValidationReport:
    """Δ(C(n)) ⊆ Σ C(i) ⊗ C(n-i) and ε(C(n)) = 0 for n > 0."""
    c = g.coalgebra
    n = c.dim
    report = ValidationReport(subject="grading")
    bad = None
    for row, col, _ in c.delta.items():
        j, k = divmod(row, n)
        if g.degrees[j] + g.degrees[k] != g.degrees[col]:
            bad = c.basis_names[col]
            break
    report.add("comultiplication_graded", bad is None, bad)
    positive = next((c.basis_names[j] for _, j, _ in c.counit.items() if g.degrees[j] > 0), None)
    report.add("counit_degree_zero", positive is None, positive)
    return report


def space_like_check(g: GradedCoalgebra) -> SimplyColored:
    """A non-negatively graded coalgebra with set-like degree-zero basis, split onto degree zero."""
    report = check_grading(g)
    if not report.passed:
        failed = report.failures()[0]
        raise GradingError(f"grading violation: {failed.name} fails", witness=failed.witness)
    c = g.coalgebra
    zero_degree = [k for k, d in enumerate(g.degrees) if d == 0]
    colors = []
    for k in zero_degree:
        vector = Matrix.unit_column(c.field, c.dim, k)
        if not is_setlike(c, vector):
            raise GradingError("degree-zero basis element is not set-like", witness=c.basis_names[k])
        colors.append(vector)
    names = tuple(c.basis_names[k] for k in zero_degree)
    return SimplyColored(c, tuple(colors), _projection(c.field, c.dim, zero_degree), names)


def check_index_bound(g: GradedCoalgebra) -> ValidationReport:
    """Every homogeneous x of degree i > 0 has Δ̄ⁱ(x) = 0."""
    sc = space_like_check(g)
    c = sc.coalgebra
    bar = reduced_delta(sc)
    report = ValidationReport(subject="index bound")
    bad = None
    for k, degree in enumerate(g.degrees):
        if degree == 0:
            continue
        t = tensor_from_column(c.basis_vector(k))
        for _ in range(degree):
            t = tensor_apply(t, bar, 0, (c.dim, c.dim))
        if t:
            bad = c.basis_names[k]
            break
    report.add("index_at_most_degree", bad is None, bad)
    return report


# ── Bicomodules and cotensor products ────────────────────────────

def _bicomodule_witness(m: Bicomodule, lhs: Matrix, rhs: Matrix) -> Optional[str]:
    column = lhs.first_difference(rhs)
    return None if column is None else m.basis_names[column]


def check_bicomodule(m: Bicomodule) -> ValidationReport:
    s = m.base
    ident_m = Matrix.identity(m.field, m.dim)
    ident_s = s.identity()
    report = ValidationReport(subject="bicomodule")
    pairs = [
        ("left_coassociative", s.delta.kron(ident_m) @ m.rho_l, ident_s.kron(m.rho_l) @ m.rho_l),
        ("left_counital", s.counit.kron(ident_m) @ m.rho_l, ident_m),
        ("right_coassociative", m.rho_r.kron(ident_s) @ m.rho_r, ident_m.kron(s.delta) @ m.rho_r),
        ("right_counital", ident_m.kron(s.counit) @ m.rho_r, ident_m),
        ("coactions_commute", m.rho_l.kron(ident_s) @ m.rho_r, ident_s.kron(m.rho_r) @ m.rho_l),
    ]
    for name, lhs, rhs in pairs:
        witness = _bicomodule_witness(m, lhs, rhs)
        report.add(name, witness is None, witness)
    return report


def check_bicomodule_or_raise(m: Bicomodule) -> Bicomodule:
    report = check_bicomodule(m)
    if not report.passed:
        failed = report.failures()[0]
        raise InvalidCoalgebraError(f"invalid bicomodule: {failed.name} fails", witness=failed.witness)
    return m


def _setlike_base(m: Bicomodule) -> None:
    s = m.base
    bad = next((name for k, name in enumerate(s.basis_names) if not is_setlike(s, s.basis_vector(k))), None)
    if bad is not None:
        raise GradingError("bicomodule base is not set-like on its basis", witness=bad)


def homogeneous_components(m: Bicomodule) -> dict[tuple[str, str], Subspace]:
    """(g, h) ↦ {x : ρ_l(x) = g ⊗ x, ρ_r(x) = x ⊗ h} over a set-like base."""
    _setlike_base(m)
    s = m.base
    ident = Matrix.identity(m.field, m.dim)
    out = {}
    for g in s.basis_names:
        left = Matrix.unit_column(m.field, s.dim, s.index(g)).T.kron(ident) @ m.rho_l
        for h in s.basis_names:
            right = ident.kron(Matrix.unit_column(m.field, s.dim, s.index(h)).T) @ m.rho_r
            out[(g, h)] = image(left @ right)
    return out


def homogeneous_bicomodule(m: Bicomodule) -> tuple[Bicomodule, Matrix]:
    """An isomorphic bicomodule on a basis of homogeneous vectors, with the change of coordinates old → new."""
    if m.bidegrees() is not None:
        return m, Matrix.identity(m.field, m.dim)
    check_bicomodule_or_raise(m)
    columns, names, bidegrees = [], [], {}
    for (g, h), piece in sorted(homogeneous_components(m).items()):
        for k in range(piece.dim):
            v = piece.vector(k)
            name = f"({g},{h}){k + 1}" if piece.dim > 1 else f"({g},{h})"
            columns.append(v)
            names.append(name)
            bidegrees[name] = (g, h)
    basis = Matrix.hstack(m.field, m.dim, columns)
    change = inverse(basis)
    if change is None:
        raise VerificationError("homogeneous components do not span the bicomodule")
    return Bicomodule.from_bidegrees(m.base, tuple(names), bidegrees), change


def cotensor(m: Bicomodule, n: Bicomodule, base: Optional[Coalgebra] = None) -> Subspace:
    """M □ N = ker(ρ_r ⊗ id - id ⊗ ρ_l) inside M ⊗ N."""
    base = base or m.base
    if not (same_coalgebra(m.base, base) and same_coalgebra(n.base, base)):
        raise DimensionMismatchError("cotensor factors are comodules over different base coalgebras")
    right = m.rho_r.kron(Matrix.identity(m.field, n.dim))
    left = Matrix.identity(m.field, m.dim).kron(n.rho_l)
    return kernel(right - left)


def cotensor_words(m: Bicomodule, n: int) -> list[tuple[int, ...]]:
    """Words x1…xn of homogeneous basis vectors with right(x_i) = left(x_{i+1}), lexicographic."""
    degrees = m.bidegrees()
    if degrees is None:
        raise GradingError("bicomodule is not homogeneous on its basis")
    if n == 0:
        return [()]
    words = [(k,) for k in range(m.dim)]
    for _ in range(n - 1):
        words = [w + (k,) for w in words for k in range(m.dim) if degrees[w[-1]][1] == degrees[k][0]]
    return words


def word_name(m: Bicomodule, word: tuple[int, ...]) -> str:
    return "[" + "|".join(m.basis_names[k] for k in word) + "]"


def cotensor_coalgebra(colors: Sequence[str], m: Bicomodule, max_words: int) -> SimplyColored:
    """C[G] ⊕ M ⊕ M□M ⊕ … ⊕ M^{□max_words}, split onto word length zero."""
    if max_words < 0:
        raise GradingError("max_words must be non-negative")
    if tuple(colors) != m.base.basis_names:
        raise GradingError("colors differ from the bicomodule base", witness=",".join(colors))
    _setlike_base(m)
    check_bicomodule_or_raise(m)
    m, _ = homogeneous_bicomodule(m)
    degrees = m.bidegrees()
    field = m.field
    nc = len(colors)
    color_index = {g: k for k, g in enumerate(colors)}

    words = [w for length in range(1, max_words + 1) for w in cotensor_words(m, length)]
    position = {w: nc + k for k, w in enumerate(words)}
    names = list(colors) + [word_name(m, w) for w in words]
    terms = [(k, k, k, 1) for k in range(nc)]
    for w, idx in position.items():
        terms.append((idx, color_index[degrees[w[0]][0]], idx, 1))
        terms.append((idx, idx, color_index[degrees[w[-1]][1]], 1))
        for split in range(1, len(w)):
            terms.append((idx, position[w[:split]], position[w[split:]], 1))
    c = Coalgebra.from_structure_constants(field, names, terms, {k: 1 for k in range(nc)})
    if not check_coalgebra(c).passed:
        raise VerificationError("truncated cotensor coalgebra is not a coalgebra")
    colors_v = tuple(Matrix.unit_column(field, c.dim, k) for k in range(nc))
    logger.info("cotensor_coalgebra_built", colors=nc, generators=m.dim, max_words=max_words, dim=c.dim)
    return SimplyColored(c, colors_v, _projection(field, c.dim, range(nc)), tuple(colors))


def word_grading(sc: SimplyColored, m: Bicomodule, max_words: int) -> GradedCoalgebra:
    """Word-length grading of a truncated cotensor coalgebra."""
    m, _ = homogeneous_bicomodule(m)
    degrees = [0] * len(sc.colors) + [
        length for length in range(1, max_words + 1) for _ in cotensor_words(m, length)
    ]
    return GradedCoalgebra(sc.coalgebra, tuple(degrees))


# ── The cofree cotensor coalgebra ────────────────────────────────

def _check_graded_map(sc: SimplyColored, f: Matrix, phi: dict[str, str], m: Bicomodule) -> None:
    """f(ᵍC̄ʰ) ⊆ ^{φ(g)}M^{φ(h)}."""
    targets = homogeneous_components(m)
    i = coideal(sc)
    for (g, h), component in bigraded_decomposition(sc).items():
        piece = intersect(component, i)
        if piece.dim == 0:
            continue
        key = (phi[g], phi[h])
        if key not in targets or not contains(targets[key], f @ piece.columns):
            raise InvalidMorphismError("map does not respect the bigrading", witness=f"({g},{h})")


def cofree_universal_map(
    sc: SimplyColored,
    f: Matrix,
    phi: dict[str, str],
    m: Bicomodule,
    max_words: int,
) -> CoalgebraMorphism:
    """The coalgebra map F: C → CoT(M) truncated at max_words with π_M ∘ F = f on C̄.

    f is dim(M) x dim(C) and is read on I = ker δ; F(x) = φ(δx) + Σ_n f^{⊗n} Δ̄ⁿ⁻¹(πx).
    """
    c = sc.coalgebra
    if f.shape != (m.dim, c.dim):
        raise DimensionMismatchError(f"f has shape {f.shape}, expected {(m.dim, c.dim)}")
    missing = next((g for g in sc.color_names if phi.get(g) not in m.base.basis_names), None)
    if missing is not None:
        raise InvalidMorphismError("color map is not defined on every color", witness=missing)
    _check_graded_map(sc, f, phi, m)

    target = cotensor_coalgebra(m.base.basis_names, m, max_words)
    homogeneous, change = homogeneous_bicomodule(m)
    f_h = change @ f @ sc.projection
    nc = len(target.colors)
    position = {}
    for length in range(1, max_words + 1):
        for w in cotensor_words(homogeneous, length):
            position[w] = nc + len(position)

    coords = solve(sc.color_matrix, sc.retraction)
    items = []
    for k, name in enumerate(sc.color_names):
        t_index = m.base.index(phi[name])
        for _, col, v in coords.row(k).items():
            items.append((t_index, col, v))

    bar = reduced_delta(sc)
    for col in range(c.dim):
        t = tensor_from_column(sc.projection @ c.basis_vector(col))
        for length in range(1, max_words + 2):
            if not t:
                break
            word_tensor = tensor_apply_all(t, f_h)
            if length > max_words:
                if word_tensor:
                    raise InvalidMorphismError(
                        "max_words is below the conilpotency bound", witness=c.basis_names[col]
                    )
                break
            for key, v in word_tensor.items():
                if key not in position:
                    raise InvalidMorphismError("image leaves the cotensor subspace", witness=c.basis_names[col])
                items.append((position[key], col, v))
            t = tensor_apply(t, bar, 0, (c.dim, c.dim))

    matrix = Matrix.from_entries(c.field, target.coalgebra.dim, c.dim, items)
    morphism = CoalgebraMorphism(c, target.coalgebra, matrix)
    report = check_morphism(morphism)
    if not report.passed:
        failed = report.failures()[0]
        raise InvalidMorphismError(f"universal map is not a coalgebra morphism: {failed.name} fails", witness=failed.witness)
    if cogenerator_projection(target, homogeneous) @ matrix != f_h:
        raise VerificationError("universal map does not restrict to f on the cogenerators")
    logger.info("cofree_map_built", source_dim=c.dim, target_dim=target.coalgebra.dim)
    return morphism


def cogenerator_projection(target: SimplyColored, m: Bicomodule) -> Matrix:
    """π_M: CoT(M) → M, the identity on words of length one."""
    nc = len(target.colors)
    return Matrix.from_entries(target.field, m.dim, target.coalgebra.dim, ((k, nc + k, 1) for k in range(m.dim)))


def cofree_uniqueness_certificate(colors: Sequence[str], m: Bicomodule, max_words: int) -> bool:
    """Words of length n ≥ 2 are determined by their (π_M ⊗ id) Δ̄ component, so maps agreeing after π_M agree."""
    target = cotensor_coalgebra(colors, m, max_words)
    homogeneous, _ = homogeneous_bicomodule(m)
    c = target.coalgebra
    bar = reduced_delta(target)
    pi = cogenerator_projection(target, homogeneous)
    split = pi.kron(c.identity()) @ bar
    nc = len(target.colors)
    offset = nc + homogeneous.dim
    for length in range(2, max_words + 1):
        count = len(cotensor_words(homogeneous, length))
        block = split.select_cols(range(offset, offset + count))
        if block.rank() != count:
            return False
        offset += count
    return True


def deformation_space_dim(sc: SimplyColored, morphism: CoalgebraMorphism, m: Bicomodule) -> int:
    """Dimension of the deformations D of F with Dδ = 0, δ_T D = 0, π_M D = 0 and Δ D = (F ⊗ D + D ⊗ F) Δ.

    Zero means no other grading-compatible solution lies infinitesimally close to F.
    """
    c, t = sc.coalgebra, morphism.target
    if c.dim * t.dim > settings.MAX_BRUTE_FORCE_DIM ** 2:
        raise SearchLimitError("deformation system exceeds the brute-force cap")
    homogeneous, _ = homogeneous_bicomodule(m)
    nc = m.base.dim
    target_sc = SimplyColored(t, tuple(Matrix.unit_column(c.field, t.dim, k) for k in range(nc)), _projection(c.field, t.dim, range(nc)))
    pi = cogenerator_projection(target_sc, homogeneous)
    f = morphism.matrix
    zero_tt = Matrix.zeros(c.field, t.dim * t.dim, c.dim)
    equations = [
        (lambda d: t.delta @ d - (f.kron(d) + d.kron(f)) @ c.delta, zero_tt),
        (lambda d: d @ sc.retraction, Matrix.zeros(c.field, t.dim, c.dim)),
        (lambda d: target_sc.retraction @ d, Matrix.zeros(c.field, t.dim, c.dim)),
        (lambda d: pi @ d, Matrix.zeros(c.field, homogeneous.dim, c.dim)),
    ]
    solution = solve_matrix_equations(c.field, t.dim, c.dim, equations)
    return solution.kernel.dim
