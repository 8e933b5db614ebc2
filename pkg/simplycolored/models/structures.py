"""Quivers, graded coalgebras, bicomodules and convolution maps."""
from dataclasses import dataclass
from typing import Optional

from ..core.exactlin import Field, Matrix
from ..core.exceptions import DimensionMismatchError, GradingError, InvalidCoalgebraError
from .coalgebra import Algebra, Coalgebra

__all__ = ["Arrow", "Quiver", "GradedCoalgebra", "Bicomodule", "ConvMap"]


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        names = list(self.vertices) + [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            dup = next(n for n in names if names.count(n) > 1)
            raise InvalidCoalgebraError("quiver names must be distinct", witness=dup)
        known = set(self.vertices)
        for a in self.arrows:
            if a.source not in known or a.target not in known:
                raise InvalidCoalgebraError("arrow endpoint is not a vertex", witness=a.name)


@dataclass(frozen=True, eq=False)
class GradedCoalgebra:
    coalgebra: Coalgebra
    degrees: tuple[int, ...]

    def __post_init__(self):
        if len(self.degrees) != self.coalgebra.dim:
            raise DimensionMismatchError("one degree per basis vector is required")
        if any(d < 0 for d in self.degrees):
            raise GradingError("degrees must be non-negative")


@dataclass(frozen=True, eq=False)
class Bicomodule:
    """A bicomodule over a base coalgebra S.

    rho_l is (dim S · dim M) x dim M with values in S ⊗ M; rho_r is
    (dim M · dim S) x dim M with values in M ⊗ S.
    """

    base: Coalgebra
    basis_names: tuple[str, ...]
    rho_l: Matrix
    rho_r: Matrix

    def __post_init__(self):
        m, s = len(self.basis_names), self.base.dim
        if self.rho_l.shape != (s * m, m) or self.rho_r.shape != (m * s, m):
            raise DimensionMismatchError("coaction shapes do not match the carrier and base")

    @property
    def field(self) -> Field:
        return self.base.field

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    @classmethod
    def from_bidegrees(
        cls,
        base: Coalgebra,
        names: tuple[str, ...],
        bidegrees: dict[str, tuple[str, str]],
    ) -> "Bicomodule":
        """Basis-homogeneous bicomodule over a set-like base: ρ_l(x) = g ⊗ x, ρ_r(x) = x ⊗ h for x of bidegree (g, h)."""
        s, m = base.dim, len(names)
        left, right = [], []
        for k, name in enumerate(names):
            if name not in bidegrees:
                raise GradingError("basis element without bidegree", witness=name)
            g, h = bidegrees[name]
            left.append((base.index(g) * m + k, k, 1))
            right.append((k * s + base.index(h), k, 1))
        return cls(
            base,
            tuple(names),
            Matrix.from_entries(base.field, s * m, m, left),
            Matrix.from_entries(base.field, m * s, m, right),
        )

    def bidegrees(self) -> Optional[list[tuple[str, str]]]:
        """(left, right) color names per basis vector when both coactions are basis-homogeneous, else None."""
        m, s = self.dim, self.base.dim
        out = []
        for k in range(m):
            left = self.rho_l.columns.get(k, [])
            right = self.rho_r.columns.get(k, [])
            if len(left) != 1 or len(right) != 1:
                return None
            (li, lv), (ri, rv) = left[0], right[0]
            if lv != self.field.one or rv != self.field.one or li % m != k or ri // s != k:
                return None
            out.append((self.base.basis_names[li // m], self.base.basis_names[ri % s]))
        return out


@dataclass(frozen=True, eq=False)
class ConvMap:
    """An element of Hom(C, A): matrix is dim(A) x dim(C)."""

    source: Coalgebra
    target: Algebra
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise DimensionMismatchError(f"convolution map has shape {self.matrix.shape}")
