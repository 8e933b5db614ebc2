"""Coalgebras, algebras and coalgebra morphisms over an exact field."""
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from ..core.exactlin import Field, Matrix, Scalar, format_combination
from ..core.exceptions import DimensionMismatchError, InvalidCoalgebraError

__all__ = ["Coalgebra", "CoalgebraMorphism", "Algebra", "Bialgebra"]


def _check_names(names: tuple[str, ...], what: str) -> None:
    seen = set()
    for name in names:
        if name in seen:
            raise InvalidCoalgebraError(f"duplicate {what} name", witness=name)
        seen.add(name)


@dataclass(frozen=True, eq=False)
class Coalgebra:
    """Basis names in canonical order, Δ as a dim² x dim matrix and ε as 1 x dim.

    Column i of delta is Δ(b_i); row j * dim + k holds the b_j ⊗ b_k coefficient.
    """

    field: Field
    basis_names: tuple[str, ...]
    delta: Matrix
    counit: Matrix

    def __post_init__(self):
        n = len(self.basis_names)
        _check_names(self.basis_names, "basis")
        if self.delta.shape != (n * n, n):
            raise DimensionMismatchError(f"Δ has shape {self.delta.shape}, expected {(n * n, n)}")
        if self.counit.shape != (1, n):
            raise DimensionMismatchError(f"ε has shape {self.counit.shape}, expected {(1, n)}")

    @classmethod
    def from_structure_constants(
        cls,
        field: Field,
        names: Iterable[str],
        delta: Iterable[tuple[int, int, int, Scalar]],
        counit: Mapping[int, Scalar],
    ) -> "Coalgebra":
        """Build from (i, j, k, c): Δ(b_i) contains c · b_j ⊗ b_k."""
        names = tuple(names)
        n = len(names)
        delta_matrix = Matrix.from_entries(field, n * n, n, ((j * n + k, i, c) for i, j, k, c in delta))
        counit_matrix = Matrix.from_entries(field, 1, n, ((0, i, c) for i, c in counit.items()))
        return cls(field, names, delta_matrix, counit_matrix)

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    def index(self, name: str) -> int:
        try:
            return self.basis_names.index(name)
        except ValueError:
            raise InvalidCoalgebraError("unknown basis element", witness=name) from None

    def basis_vector(self, name_or_index) -> Matrix:
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        return Matrix.unit_column(self.field, self.dim, i)

    def identity(self) -> Matrix:
        return Matrix.identity(self.field, self.dim)

    def structure_constants(self) -> list[tuple[int, int, int, Scalar]]:
        n = self.dim
        return [(i, r // n, r % n, v) for r, i, v in sorted(self.delta.items(), key=lambda t: (t[1], t[0]))]

    def describe(self, vector: Matrix) -> str:
        return format_combination(self.field, self.basis_names, vector)


@dataclass(frozen=True, eq=False)
class CoalgebraMorphism:
    """A linear map source → target; matrix is dim(target) x dim(source)."""

    source: Coalgebra
    target: Coalgebra
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise DimensionMismatchError(
                f"morphism matrix {self.matrix.shape} between dims {self.source.dim} and {self.target.dim}"
            )


@dataclass(frozen=True, eq=False)
class Algebra:
    """mult is dim x dim²: column i * dim + j is b_i · b_j. unit is a dim x 1 column."""

    field: Field
    basis_names: tuple[str, ...]
    mult: Matrix
    unit: Matrix

    def __post_init__(self):
        n = len(self.basis_names)
        _check_names(self.basis_names, "basis")
        if self.mult.shape != (n, n * n):
            raise DimensionMismatchError(f"multiplication has shape {self.mult.shape}, expected {(n, n * n)}")
        if self.unit.shape != (n, 1):
            raise DimensionMismatchError(f"unit has shape {self.unit.shape}, expected {(n, 1)}")

    @classmethod
    def from_structure_constants(
        cls,
        field: Field,
        names: Iterable[str],
        mult: Iterable[tuple[int, int, int, Scalar]],
        unit: Mapping[int, Scalar],
    ) -> "Algebra":
        """Build from (i, j, k, c): b_i · b_j contains c · b_k."""
        names = tuple(names)
        n = len(names)
        mult_matrix = Matrix.from_entries(field, n, n * n, ((k, i * n + j, c) for i, j, k, c in mult))
        unit_matrix = Matrix.from_entries(field, n, 1, ((i, 0, c) for i, c in unit.items()))
        return cls(field, names, mult_matrix, unit_matrix)

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    def product(self, x: Matrix, y: Matrix) -> Matrix:
        return self.mult @ x.kron(y)

    def left_multiplication(self, x: Matrix) -> Matrix:
        """L_x as a dim x dim matrix."""
        return self.mult @ x.kron(Matrix.identity(self.field, self.dim))

    def right_multiplication(self, x: Matrix) -> Matrix:
        return self.mult @ Matrix.identity(self.field, self.dim).kron(x)

    def describe(self, vector: Matrix) -> str:
        return format_combination(self.field, self.basis_names, vector)


@dataclass(frozen=True, eq=False)
class Bialgebra:
    """A coalgebra and an algebra sharing one carrier."""

    coalgebra: Coalgebra
    algebra: Algebra
    name: Optional[str] = None

    def __post_init__(self):
        if self.coalgebra.basis_names != self.algebra.basis_names:
            raise DimensionMismatchError("coalgebra and algebra bases differ")
