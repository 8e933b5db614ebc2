"""Simply colored and reduced colored coalgebras, and the results computed on them."""
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from ..core.exactlin import Field, Matrix, Subspace, span, zero
from ..core.exceptions import DimensionMismatchError, GradingError
from .coalgebra import Coalgebra

__all__ = [
    "SimplyColored",
    "ReducedColored",
    "ColoredMorphism",
    "OrthoIdempotents",
    "Filtration",
    "PointedVerdict",
    "PointedResult",
    "ConilpotencyResult",
]


@dataclass(frozen=True, eq=False)
class SimplyColored:
    """The triple (C, G, δ): colors are carrier columns, retraction is δ as a dim x dim idempotent."""

    coalgebra: Coalgebra
    colors: tuple[Matrix, ...]
    retraction: Matrix
    color_names: tuple[str, ...] = ()

    def __post_init__(self):
        n = self.coalgebra.dim
        if self.retraction.shape != (n, n):
            raise DimensionMismatchError(f"retraction has shape {self.retraction.shape} on a {n}-dimensional carrier")
        for g in self.colors:
            if g.shape != (n, 1):
                raise DimensionMismatchError(f"color of shape {g.shape} on a {n}-dimensional carrier")
        if not self.color_names:
            object.__setattr__(self, "color_names", tuple(self.coalgebra.describe(g) for g in self.colors))
        elif len(self.color_names) != len(self.colors):
            raise DimensionMismatchError("one name per color is required")

    @property
    def field(self):
        return self.coalgebra.field

    @property
    def color_matrix(self) -> Matrix:
        """Colors as the columns of a dim x |G| matrix."""
        return Matrix.hstack(self.field, self.coalgebra.dim, list(self.colors))

    @property
    def color_span(self) -> Subspace:
        if not self.colors:
            return zero(self.field, self.coalgebra.dim)
        return span(self.field, self.coalgebra.dim, self.color_matrix.T)

    @property
    def projection(self) -> Matrix:
        """π = id - δ, the projection onto I = ker δ along span(G)."""
        return self.coalgebra.identity() - self.retraction


@dataclass(frozen=True, eq=False)
class ReducedColored:
    """A counit-free G-bigraded coalgebra held in a homogeneous basis.

    degrees[k] is the (left color, right color) of basis vector k and
    delta_bar is the dim² x dim matrix of the reduced comultiplication.
    """

    field: Field
    basis_names: tuple[str, ...]
    colors: tuple[str, ...]
    degrees: tuple[tuple[str, str], ...]
    delta_bar: Matrix

    def __post_init__(self):
        n = len(self.basis_names)
        if len(self.degrees) != n:
            raise DimensionMismatchError("one bidegree per basis vector is required")
        if self.delta_bar.shape != (n * n, n):
            raise DimensionMismatchError(f"Δ̄ has shape {self.delta_bar.shape}, expected {(n * n, n)}")
        known = set(self.colors)
        for name, (g, h) in zip(self.basis_names, self.degrees):
            if g not in known or h not in known:
                raise GradingError("bidegree uses an unknown color", witness=name)

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    def components(self) -> dict[tuple[str, str], Subspace]:
        """(g, h) -> span of the basis vectors of that bidegree, colors paired in file order."""
        out = {}
        for g in self.colors:
            for h in self.colors:
                idx = [k for k, d in enumerate(self.degrees) if d == (g, h)]
                rows = Matrix.from_entries(self.field, len(idx), self.dim, ((r, k, 1) for r, k in enumerate(idx)))
                out[(g, h)] = span(self.field, self.dim, rows)
        return out


@dataclass(frozen=True, eq=False)
class ColoredMorphism:
    """A pair (f̄, i): fbar is dim(target) x dim(source), color_map sends source colors to target colors."""

    fbar: Matrix
    color_map: dict[str, str]
    source: ReducedColored
    target: ReducedColored

    def __post_init__(self):
        if self.fbar.shape != (self.target.dim, self.source.dim):
            raise DimensionMismatchError(f"f̄ has shape {self.fbar.shape}")


@dataclass(frozen=True, eq=False)
class OrthoIdempotents:
    """e_g for each color, as 1 x dim functionals on the carrier."""

    functionals: dict[str, Matrix]


@dataclass(frozen=True, eq=False)
class Filtration:
    coalgebra: Coalgebra
    terms: tuple[Subspace, ...]
    exhaustive: bool

    @property
    def dims(self) -> list[int]:
        return [t.dim for t in self.terms]


class PointedVerdict(str, Enum):
    POINTED = "pointed"
    NOT_POINTED = "not pointed"
    NOT_SPLIT = "pointed only over an extension field"


@dataclass(frozen=True, eq=False)
class PointedResult:
    verdict: PointedVerdict
    coradical: Subspace
    setlikes: tuple[Matrix, ...] = ()

    @property
    def pointed(self) -> bool:
        return self.verdict is PointedVerdict.POINTED


@dataclass(frozen=True, eq=False)
class ConilpotencyResult:
    """kernel_chain holds K_1 ⊆ K_2 ⊆ … inside I; index maps names of I's basis to the least n with Δ̄ⁿ = 0."""

    conilpotent: bool
    coideal: Subspace
    kernel_chain: tuple[Subspace, ...]
    index: dict[str, Optional[int]] = field(default_factory=dict)

    @property
    def bound(self) -> int:
        return len(self.kernel_chain) if self.conilpotent else -1
