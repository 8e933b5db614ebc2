"""Exact linear algebra over Q and GF(p).

Matrices are immutable sparse grids of sympy domain elements; elimination,
products and characteristic polynomials go through sympy's DomainMatrix.
Vectors are column matrices and a matrix acts on the left of the source's
columns. Tensor bases are ordered left factor major: e_i ⊗ f_j sits at
index i * dim(F) + j.
"""
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Iterable, Mapping, Optional, Sequence

from sympy import Poly, Symbol, isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

from .exceptions import DimensionMismatchError, FieldMismatchError

Scalar = Any
Tensor = dict[tuple[int, ...], Scalar]

_FRACTION = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+))?\s*$")


# ── Fields ───────────────────────────────────────────────────────

@dataclass(frozen=True)
class Field:
    """The ground field: Q when characteristic is 0, GF(p) otherwise."""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic < 0 or (self.characteristic != 0 and not isprime(self.characteristic)):
            raise ValueError(f"{self.characteristic} is not zero or a prime")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @cached_property
    def domain(self):
        if self.characteristic == 0:
            return QQ
        return GF(self.characteristic, symmetric=False)

    @property
    def name(self) -> str:
        return "Q" if self.characteristic == 0 else f"GF({self.characteristic})"

    @property
    def zero(self) -> Scalar:
        return self.domain.zero

    @property
    def one(self) -> Scalar:
        return self.domain.one

    def convert(self, value: int) -> Scalar:
        return self.domain.convert(value)

    def fraction(self, numerator: int, denominator: int = 1) -> Scalar:
        if denominator == 0:
            raise ValueError("zero denominator")
        if self.characteristic and denominator % self.characteristic == 0:
            raise ValueError(f"denominator {denominator} vanishes in {self.name}")
        return self.domain.quo(self.convert(numerator), self.convert(denominator))

    def parse(self, text: str) -> Scalar:
        """Parse an exact coefficient such as "3", "-2" or "3/2"."""
        match = _FRACTION.match(text)
        if not match:
            raise ValueError(f"malformed coefficient {text!r}")
        numerator = int(match.group(1))
        denominator = int(match.group(2)) if match.group(2) is not None else 1
        return self.fraction(numerator, denominator)

    def coerce(self, value: Any) -> Scalar:
        if isinstance(value, bool):
            raise TypeError("booleans are not scalars")
        if isinstance(value, int):
            return self.convert(value)
        if isinstance(value, str):
            return self.parse(value)
        return value

    def from_sympy(self, value) -> Scalar:
        return self.domain.from_sympy(value)

    def format(self, value: Scalar) -> str:
        number = self.domain.to_sympy(value)
        if self.characteristic:
            return str(int(number) % self.characteristic)
        return str(number)


def check_parse_coefficient(text: str) -> None:
    """Field-independent syntax check: raises ValueError on malformed or zero-denominator text."""
    match = _FRACTION.match(text)
    if not match:
        raise ValueError(f"malformed coefficient {text!r}")
    if match.group(2) is not None and int(match.group(2)) == 0:
        raise ValueError(f"zero denominator in {text!r}")


# ── Matrices ─────────────────────────────────────────────────────

def _clean(entries: Mapping[int, Mapping[int, Scalar]]) -> dict[int, dict[int, Scalar]]:
    out = {}
    for i, row in entries.items():
        kept = {j: v for j, v in row.items() if v}
        if kept:
            out[i] = kept
    return out


@dataclass(frozen=True, eq=False)
class Matrix:
    field: Field
    rows: int
    cols: int
    entries: Mapping[int, Mapping[int, Scalar]]

    # constructors

    @classmethod
    def build(cls, field: Field, rows: int, cols: int, entries: Mapping[int, Mapping[int, Scalar]]) -> "Matrix":
        return cls(field, rows, cols, _clean(entries))

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, rows, cols, {})

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, n, n, {i: {i: field.one} for i in range(n)})

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence[Any]], cols: Optional[int] = None) -> "Matrix":
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != width:
                raise DimensionMismatchError(f"row {i} has {len(row)} entries, expected {width}")
            entries[i] = {j: field.coerce(v) for j, v in enumerate(row)}
        return cls.build(field, len(rows), width, entries)

    @classmethod
    def from_entries(cls, field: Field, rows: int, cols: int, items: Iterable[tuple[int, int, Scalar]]) -> "Matrix":
        """Accumulates (i, j, value) triples; repeated positions add up."""
        entries: dict[int, dict[int, Scalar]] = {}
        for i, j, v in items:
            if not (0 <= i < rows and 0 <= j < cols):
                raise DimensionMismatchError(f"entry ({i}, {j}) outside {rows}x{cols}")
            row = entries.setdefault(i, {})
            row[j] = row.get(j, field.zero) + field.coerce(v)
        return cls.build(field, rows, cols, entries)

    @classmethod
    def column(cls, field: Field, values: Sequence[Any]) -> "Matrix":
        return cls.from_rows(field, [[v] for v in values], cols=1)

    @classmethod
    def unit_column(cls, field: Field, n: int, i: int) -> "Matrix":
        return cls(field, n, 1, {i: {0: field.one}})

    @classmethod
    def from_dm(cls, field: Field, dm: DomainMatrix) -> "Matrix":
        rows, cols = dm.shape
        rep = dm.to_sparse().rep
        return cls.build(field, rows, cols, {i: dict(row) for i, row in rep.items()})

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def get(self, i: int, j: int) -> Scalar:
        return self.entries.get(i, {}).get(j, self.field.zero)

    def items(self) -> Iterable[tuple[int, int, Scalar]]:
        for i in sorted(self.entries):
            row = self.entries[i]
            for j in sorted(row):
                yield i, j, row[j]

    @cached_property
    def columns(self) -> dict[int, list[tuple[int, Scalar]]]:
        cols: dict[int, list[tuple[int, Scalar]]] = {}
        for i, j, v in self.items():
            cols.setdefault(j, []).append((i, v))
        return cols

    @cached_property
    def dm(self) -> DomainMatrix:
        return DomainMatrix({i: dict(row) for i, row in self.entries.items()}, self.shape, self.field.domain)

    def is_zero(self) -> bool:
        return not self.entries

    def col(self, j: int) -> "Matrix":
        return Matrix(self.field, self.rows, 1, {i: {0: v} for i, v in self.columns.get(j, [])})

    def row(self, i: int) -> "Matrix":
        return Matrix(self.field, 1, self.cols, {0: dict(self.entries[i])} if i in self.entries else {})

    def select_rows(self, indices: Sequence[int]) -> "Matrix":
        entries = {k: dict(self.entries[i]) for k, i in enumerate(indices) if i in self.entries}
        return Matrix(self.field, len(indices), self.cols, entries)

    def select_cols(self, indices: Sequence[int]) -> "Matrix":
        position = {j: k for k, j in enumerate(indices)}
        entries = {}
        for i, row in self.entries.items():
            kept = {position[j]: v for j, v in row.items() if j in position}
            if kept:
                entries[i] = kept
        return Matrix(self.field, self.rows, len(indices), entries)

    def to_lists(self) -> list[list[str]]:
        return [[self.field.format(self.get(i, j)) for j in range(self.cols)] for i in range(self.rows)]

    # arithmetic

    def _same_field(self, other: "Matrix") -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field.name} vs {other.field.name}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.cols != other.rows:
            raise DimensionMismatchError(f"cannot compose {self.shape} with {other.shape}")
        if not self.entries or not other.entries:
            return Matrix.zeros(self.field, self.rows, other.cols)
        return Matrix.from_dm(self.field, self.dm.matmul(other.dm))

    def _combine(self, other: "Matrix", sign: int) -> "Matrix":
        self._same_field(other)
        if self.shape != other.shape:
            raise DimensionMismatchError(f"shapes {self.shape} and {other.shape} differ")
        entries = {i: dict(row) for i, row in self.entries.items()}
        for i, row in other.entries.items():
            target = entries.setdefault(i, {})
            for j, v in row.items():
                target[j] = target.get(j, self.field.zero) + (v if sign > 0 else -v)
        return Matrix.build(self.field, self.rows, self.cols, entries)

    def __add__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, 1)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, -1)

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, self.rows, self.cols, {i: {j: -v for j, v in row.items()} for i, row in self.entries.items()})

    def scale(self, c: Scalar) -> "Matrix":
        return Matrix.build(self.field, self.rows, self.cols, {i: {j: c * v for j, v in row.items()} for i, row in self.entries.items()})

    @property
    def T(self) -> "Matrix":
        entries: dict[int, dict[int, Scalar]] = {}
        for i, j, v in self.items():
            entries.setdefault(j, {})[i] = v
        return Matrix(self.field, self.cols, self.rows, entries)

    def kron(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        entries: dict[int, dict[int, Scalar]] = {}
        for i1, row1 in self.entries.items():
            for i2, row2 in other.entries.items():
                target = entries.setdefault(i1 * other.rows + i2, {})
                for j1, v1 in row1.items():
                    for j2, v2 in row2.items():
                        target[j1 * other.cols + j2] = v1 * v2
        return Matrix.build(self.field, self.rows * other.rows, self.cols * other.cols, entries)

    @staticmethod
    def hstack(field: Field, rows: int, blocks: Sequence["Matrix"]) -> "Matrix":
        entries: dict[int, dict[int, Scalar]] = {}
        offset = 0
        for block in blocks:
            if block.rows != rows:
                raise DimensionMismatchError(f"block with {block.rows} rows in a {rows}-row stack")
            for i, j, v in block.items():
                entries.setdefault(i, {})[offset + j] = v
            offset += block.cols
        return Matrix(field, rows, offset, entries)

    @staticmethod
    def vstack(field: Field, cols: int, blocks: Sequence["Matrix"]) -> "Matrix":
        entries: dict[int, dict[int, Scalar]] = {}
        offset = 0
        for block in blocks:
            if block.cols != cols:
                raise DimensionMismatchError(f"block with {block.cols} columns in a {cols}-column stack")
            for i, row in block.entries.items():
                entries[offset + i] = dict(row)
            offset += block.rows
        return Matrix(field, offset, cols, entries)

    @staticmethod
    def block_diagonal(field: Field, blocks: Sequence["Matrix"]) -> "Matrix":
        entries: dict[int, dict[int, Scalar]] = {}
        r = c = 0
        for block in blocks:
            for i, j, v in block.items():
                entries.setdefault(r + i, {})[c + j] = v
            r += block.rows
            c += block.cols
        return Matrix(field, r, c, entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and _clean(self.entries) == _clean(other.entries)

    __hash__ = None

    def first_difference(self, other: "Matrix") -> Optional[int]:
        """Smallest column index where two equally shaped matrices differ."""
        diff = self - other
        return min(diff.columns) if diff.entries else None

    def rank(self) -> int:
        return len(rref_pivots(self)[1])

    def __repr__(self) -> str:
        return f"Matrix({self.field.name}, {self.rows}x{self.cols}, nnz={sum(len(r) for r in self.entries.values())})"


def tensor_map(f: Matrix, g: Matrix) -> Matrix:
    """f ⊗ g on the left-factor-major tensor basis."""
    return f.kron(g)


def tensor_power(f: Matrix, n: int) -> Matrix:
    out = Matrix.identity(f.field, 1)
    for _ in range(n):
        out = out.kron(f)
    return out


def tensor_swap(field: Field, n: int, m: int) -> Matrix:
    """The flip V ⊗ W → W ⊗ V for dim V = n, dim W = m."""
    return Matrix.from_entries(field, n * m, n * m, ((j * n + i, i * m + j, 1) for i in range(n) for j in range(m)))


# ── Echelon forms and subspaces ──────────────────────────────────

def rref_pivots(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    if m.rows == 0 or m.cols == 0 or not m.entries:
        return Matrix.zeros(m.field, m.rows, m.cols), ()
    reduced, pivots = m.dm.rref()
    return Matrix.from_dm(m.field, reduced), tuple(pivots)


def rref(m: Matrix) -> Matrix:
    return rref_pivots(m)[0]


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace held by its reduced row-echelon basis (rows are basis vectors)."""

    field: Field
    ambient: int
    basis: Matrix
    pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def columns(self) -> Matrix:
        """Basis vectors as columns of an ambient x dim matrix."""
        return self.basis.T

    def vector(self, k: int) -> Matrix:
        return self.basis.row(k).T

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    __hash__ = None

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def span(field: Field, ambient: int, vectors: Matrix) -> Subspace:
    """Row space of `vectors` (each row a vector of the ambient space)."""
    if vectors.cols != ambient:
        raise DimensionMismatchError(f"vectors of length {vectors.cols} in a {ambient}-dimensional space")
    reduced, pivots = rref_pivots(vectors)
    return Subspace(field, ambient, reduced.select_rows(range(len(pivots))), pivots)


def span_columns(field: Field, ambient: int, columns: Matrix) -> Subspace:
    return span(field, ambient, columns.T)


def full(field: Field, n: int) -> Subspace:
    return Subspace(field, n, Matrix.identity(field, n), tuple(range(n)))


def zero(field: Field, n: int) -> Subspace:
    return Subspace(field, n, Matrix.zeros(field, 0, n), ())


def kernel(m: Matrix) -> Subspace:
    reduced, pivots = rref_pivots(m)
    pivot_set = set(pivots)
    rows = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vec = {free: m.field.one}
        for i, p in enumerate(pivots):
            value = reduced.get(i, free)
            if value:
                vec[p] = -value
        rows.append(vec)
    vectors = Matrix.build(m.field, len(rows), m.cols, dict(enumerate(rows)))
    return span(m.field, m.cols, vectors)


def image(m: Matrix) -> Subspace:
    return span(m.field, m.rows, m.T)


def _same_ambient(u: Subspace, v: Subspace) -> None:
    if u.ambient != v.ambient:
        raise DimensionMismatchError(f"ambient dimensions {u.ambient} and {v.ambient} differ")


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _same_ambient(u, v)
    return span(u.field, u.ambient, Matrix.vstack(u.field, u.ambient, [u.basis, v.basis]))


def quotient_map(w: Subspace) -> Matrix:
    """The projection V → V/W in the basis of non-pivot coordinates."""
    pivot_set = set(w.pivots)
    free = [c for c in range(w.ambient) if c not in pivot_set]
    position = {c: k for k, c in enumerate(free)}
    entries: dict[int, dict[int, Scalar]] = {k: {c: w.field.one} for k, c in enumerate(free)}
    for i, p in enumerate(w.pivots):
        for c, value in w.basis.entries.get(i, {}).items():
            if c in position:
                entries[position[c]][p] = -value
    return Matrix.build(w.field, len(free), w.ambient, entries)


def complement_section(w: Subspace) -> Matrix:
    """Inclusion of the non-pivot coordinates: a section of quotient_map(w)."""
    pivot_set = set(w.pivots)
    free = [c for c in range(w.ambient) if c not in pivot_set]
    return Matrix.from_entries(w.field, w.ambient, len(free), ((c, k, 1) for k, c in enumerate(free)))


def intersect(u: Subspace, v: Subspace) -> Subspace:
    _same_ambient(u, v)
    if u.dim == 0 or v.dim == 0:
        return zero(u.field, u.ambient)
    coefficients = kernel(quotient_map(v) @ u.columns)
    return span(u.field, u.ambient, coefficients.basis @ u.basis)


def preimage(m: Matrix, w: Subspace) -> Subspace:
    if w.ambient != m.rows:
        raise DimensionMismatchError(f"subspace of a {w.ambient}-dimensional space, map into {m.rows}")
    return kernel(quotient_map(w) @ m)


def tensor_subspace(u: Subspace, v: Subspace) -> Subspace:
    return span(u.field, u.ambient * v.ambient, u.basis.kron(v.basis))


def contains(u: Subspace, x: Matrix) -> bool:
    """True when every column of x lies in u."""
    if x.rows != u.ambient:
        raise DimensionMismatchError(f"vector of length {x.rows} in a {u.ambient}-dimensional space")
    return (quotient_map(u) @ x).is_zero()


def is_subspace(u: Subspace, v: Subspace) -> bool:
    _same_ambient(u, v)
    return contains(v, u.columns)


def coordinates(u: Subspace, x: Matrix) -> Matrix:
    """Coordinates of the columns of x in the echelon basis of u."""
    if not contains(u, x):
        raise ValueError("vector outside the subspace")
    return x.select_rows(u.pivots)


# ── Solving ──────────────────────────────────────────────────────

def solve(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """A particular X with a @ X = b, or None when inconsistent."""
    if a.rows != b.rows:
        raise DimensionMismatchError(f"system with {a.rows} equations, right-hand side has {b.rows}")
    augmented = Matrix.hstack(a.field, a.rows, [a, b])
    reduced, pivots = rref_pivots(augmented)
    if any(p >= a.cols for p in pivots):
        return None
    entries: dict[int, dict[int, Scalar]] = {}
    for i, p in enumerate(pivots):
        row = {j - a.cols: v for j, v in reduced.entries.get(i, {}).items() if j >= a.cols}
        if row:
            entries[p] = row
    return Matrix(a.field, a.cols, b.cols, entries)


def inverse(m: Matrix) -> Optional[Matrix]:
    if m.rows != m.cols:
        return None
    x = solve(m, Matrix.identity(m.field, m.rows))
    if x is None or m.rank() != m.rows:
        return None
    return x


def vec(m: Matrix) -> Matrix:
    """Row-major vectorisation: entry (i, j) goes to index i * cols + j."""
    return Matrix(m.field, m.rows * m.cols, 1, {i * m.cols + j: {0: v} for i, j, v in m.items()})


def unvec(v: Matrix, rows: int, cols: int) -> Matrix:
    entries: dict[int, dict[int, Scalar]] = {}
    for k, _, value in v.items():
        entries.setdefault(k // cols, {})[k % cols] = value
    return Matrix(v.field, rows, cols, entries)


def operator_matrix(field: Field, rows: int, cols: int, fn: Callable[[Matrix], Matrix]) -> Matrix:
    """Matrix of a linear map on rows x cols matrices, acting on vec(X)."""
    blocks = []
    for k in range(rows * cols):
        unit = Matrix(field, rows, cols, {k // cols: {k % cols: field.one}})
        blocks.append(vec(fn(unit)))
    height = blocks[0].rows if blocks else 0
    return Matrix.hstack(field, height, blocks)


@dataclass(frozen=True)
class LinearSolution:
    particular: Optional[Matrix]
    kernel: Subspace

    @property
    def exists(self) -> bool:
        return self.particular is not None

    @property
    def unique(self) -> bool:
        return self.particular is not None and self.kernel.dim == 0


def solve_matrix_equations(
    field: Field,
    rows: int,
    cols: int,
    equations: Sequence[tuple[Callable[[Matrix], Matrix], Matrix]],
    mask: Optional[Callable[[int, int], bool]] = None,
) -> LinearSolution:
    """Solve simultaneous linear equations fn(X) = rhs for a rows x cols matrix X.

    With a mask, only entries (i, j) where mask(i, j) is true are unknowns;
    the kernel is then expressed in those free entries, so its dimension
    measures non-uniqueness.
    """
    free = [k for k in range(rows * cols) if mask is None or mask(k // cols, k % cols)]
    ops = []
    rhs = []
    for fn, target in equations:
        full_op = operator_matrix(field, rows, cols, fn)
        ops.append(full_op.select_cols(free))
        rhs.append(vec(target))
    height = sum(op.rows for op in ops)
    system = Matrix.vstack(field, len(free), ops)
    target = Matrix.vstack(field, 1, rhs) if rhs else Matrix.zeros(field, 0, 1)
    if height == 0:
        return LinearSolution(Matrix.zeros(field, rows, cols), full(field, len(free)))
    x = solve(system, target)
    particular = None
    if x is not None:
        entries: dict[int, dict[int, Scalar]] = {}
        for k, _, value in x.items():
            idx = free[k]
            entries.setdefault(idx // cols, {})[idx % cols] = value
        particular = Matrix(field, rows, cols, entries)
    return LinearSolution(particular, kernel(system))


# ── Sparse tensors ───────────────────────────────────────────────

def tensor_from_column(m: Matrix, j: int = 0) -> Tensor:
    return {(i,): v for i, v in m.columns.get(j, [])}


def _digits(index: int, dims: Sequence[int]) -> tuple[int, ...]:
    out = []
    for d in reversed(dims):
        index, r = divmod(index, d)
        out.append(r)
    return tuple(reversed(out))


def tensor_apply(t: Tensor, m: Matrix, position: int, out_dims: Sequence[int]) -> Tensor:
    """Apply m to one tensor factor; its output index splits into factors of sizes out_dims."""
    field = m.field
    out: Tensor = {}
    cols = m.columns
    for key, coef in t.items():
        for i, v in cols.get(key[position], []):
            new_key = key[:position] + _digits(i, out_dims) + key[position + 1:]
            out[new_key] = out.get(new_key, field.zero) + coef * v
    return {k: v for k, v in out.items() if v}


def tensor_apply_all(t: Tensor, m: Matrix) -> Tensor:
    """Apply m to every factor."""
    if not t:
        return {}
    for position in range(len(next(iter(t)))):
        t = tensor_apply(t, m, position, (m.rows,))
    return t


def tensors_to_matrix(field: Field, tensors: Sequence[Tensor]) -> Matrix:
    """Columns are the given tensors, rows the union of their supports (sorted)."""
    keys = sorted({k for t in tensors for k in t})
    position = {k: r for r, k in enumerate(keys)}
    return Matrix.from_entries(field, len(keys), len(tensors), ((position[k], j, v) for j, t in enumerate(tensors) for k, v in t.items()))


def tensor_to_column(field: Field, t: Tensor, dims: Sequence[int]) -> Matrix:
    """Flatten onto the left-factor-major basis of the given factor sizes."""
    total = 1
    for d in dims:
        total *= d
    items = []
    for key, v in t.items():
        index = 0
        for k, d in zip(key, dims):
            index = index * d + k
        items.append((index, 0, v))
    return Matrix.from_entries(field, total, 1, items)


# ── Polynomials ──────────────────────────────────────────────────

def charpoly_linear_roots(m: Matrix) -> Optional[list[Scalar]]:
    """Distinct roots of the characteristic polynomial if it splits into linear factors."""
    field = m.field
    if m.rows == 0:
        return []
    coefficients = m.dm.to_dense().charpoly()
    t = Symbol("t")
    sympy_coeffs = [field.domain.to_sympy(c) for c in coefficients]
    if field.characteristic:
        poly = Poly(sympy_coeffs, t, modulus=field.characteristic)
    else:
        poly = Poly(sympy_coeffs, t, domain="QQ")
    roots: list[Scalar] = []
    for factor, _ in poly.factor_list()[1]:
        if factor.degree() != 1:
            return None
        lead, constant = factor.all_coeffs()
        root = field.domain.quo(field.from_sympy(-constant), field.from_sympy(lead))
        if root not in roots:
            roots.append(root)
    return roots


# ── Formatting ───────────────────────────────────────────────────

def format_combination(field: Field, names: Sequence[str], vector: Matrix) -> str:
    """Render a column vector as a linear combination such as "g+x" or "2*a-1/3*b"."""
    parts = []
    for i, v in vector.columns.get(0, []):
        text = field.format(v)
        negative = text.startswith("-")
        magnitude = text[1:] if negative else text
        term = names[i] if magnitude == "1" else f"{magnitude}*{names[i]}"
        if negative:
            parts.append(f"-{term}")
        elif parts:
            parts.append(f"+{term}")
        else:
            parts.append(term)
    return "".join(parts) if parts else "0"
