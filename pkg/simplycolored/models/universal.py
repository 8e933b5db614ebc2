"""Results of the categorical constructions and of universal-property solves."""
from dataclasses import dataclass, field
from typing import Optional

from ..core.exactlin import Matrix
from .coalgebra import CoalgebraMorphism
from .colored import ColoredMorphism, ReducedColored, SimplyColored
from .structures import Bicomodule

__all__ = ["Factorization", "Coproduct", "Equalizer", "Coequalizer", "ProductSpace", "Product"]


@dataclass(frozen=True, eq=False)
class Factorization:
    """Outcome of solving for the map through a universal object."""

    exists: bool
    unique: bool
    map: Optional[Matrix] = None
    detail: Optional[str] = None


@dataclass(frozen=True, eq=False)
class Coproduct:
    colored: SimplyColored
    injections: tuple[CoalgebraMorphism, ...]


@dataclass(frozen=True, eq=False)
class Equalizer:
    colored: SimplyColored
    inclusion: CoalgebraMorphism


@dataclass(frozen=True, eq=False)
class Coequalizer:
    reduced: ReducedColored
    projection: ColoredMorphism
    classes: tuple[tuple[str, ...], ...]


@dataclass(frozen=True, eq=False)
class ProductSpace:
    """The colored product of vector spaces over the product color set.

    copies maps (factor, basis index, left color tuple, right color tuple)
    to the index of that copy in V; projections[α] is dim C̄_α x dim V.
    """

    color_tuples: tuple[tuple[str, ...], ...]
    bicomodule: Bicomodule
    copies: dict[tuple[int, int, tuple[str, ...], tuple[str, ...]], int]
    projections: tuple[Matrix, ...]


@dataclass(frozen=True, eq=False)
class Product:
    """A product truncated at max_words; approximate beyond that word length."""

    reduced: ReducedColored
    projections: tuple[ColoredMorphism, ...]
    space: ProductSpace
    ambient: ReducedColored
    embedding: Matrix
    words: dict[tuple[int, ...], int] = field(default_factory=dict)
    max_words: int = 1
    approximate: bool = True
