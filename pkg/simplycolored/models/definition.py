"""Definition file models."""
from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..core.exactlin import check_parse_coefficient

__all__ = [
    "Coefficient",
    "Combination",
    "PrimeField",
    "CoalgebraBlock",
    "SplittingBlock",
    "AlgebraBlock",
    "ArrowBlock",
    "QuiverBlock",
    "BicomoduleBlock",
    "MorphismBlock",
    "ConvMapBlock",
    "DefinitionFile",
]

Coefficient = Union[int, str]
Combination = dict[str, Coefficient]


def _check_coefficient(value: Coefficient) -> Coefficient:
    if isinstance(value, str):
        check_parse_coefficient(value)
    return value


def _check_combination(combination: Combination) -> Combination:
    for value in combination.values():
        _check_coefficient(value)
    return combination


class _Block(BaseModel):
    model_config = ConfigDict(extra="forbid")


class PrimeField(_Block):
    """GF(p) selector."""
    Fp: int = Field(..., ge=2)


class CoalgebraBlock(_Block):
    """Basis names in canonical order; delta rows are [target, left, right, coefficient]."""
    basis: list[str]
    delta: list[tuple[str, str, str, Coefficient]] = Field(default_factory=list)
    counit: Combination = Field(default_factory=dict)

    @field_validator("delta")
    @classmethod
    def check_delta(cls, rows):
        for row in rows:
            _check_coefficient(row[3])
        return rows

    @field_validator("counit")
    @classmethod
    def check_counit(cls, counit):
        return _check_combination(counit)


class SplittingBlock(_Block):
    """Colors as basis names or combinations; retraction maps basis names to combinations."""
    colors: list[Union[str, Combination]]
    retraction: Optional[dict[str, Combination]] = None

    @field_validator("colors")
    @classmethod
    def check_colors(cls, colors):
        for color in colors:
            if isinstance(color, dict):
                _check_combination(color)
        return colors

    @field_validator("retraction")
    @classmethod
    def check_retraction(cls, retraction):
        for combination in (retraction or {}).values():
            _check_combination(combination)
        return retraction


class AlgebraBlock(_Block):
    """Multiplication rows are [left, right, product, coefficient]."""
    basis: list[str]
    mult: list[tuple[str, str, str, Coefficient]] = Field(default_factory=list)
    unit: Combination = Field(default_factory=dict)

    @field_validator("mult")
    @classmethod
    def check_mult(cls, rows):
        for row in rows:
            _check_coefficient(row[3])
        return rows

    @field_validator("unit")
    @classmethod
    def check_unit(cls, unit):
        return _check_combination(unit)


class ArrowBlock(_Block):
    name: str
    source: str
    target: str


class QuiverBlock(_Block):
    vertices: list[str]
    arrows: list[ArrowBlock] = Field(default_factory=list)
    max_len: int = Field(default=1, ge=0)


class BicomoduleBlock(_Block):
    """A basis-homogeneous bicomodule over the set-like coalgebra on `colors`."""
    colors: list[str]
    basis: list[str]
    bidegrees: dict[str, tuple[str, str]]
    max_words: int = Field(default=1, ge=0)


class MorphismBlock(_Block):
    """source/target are "self", "bicomodule" or a definition file path relative to this file."""
    source: str = "self"
    target: str = "self"
    images: dict[str, Combination] = Field(default_factory=dict)
    colors: dict[str, str] = Field(default_factory=dict)

    @field_validator("images")
    @classmethod
    def check_images(cls, images):
        for combination in images.values():
            _check_combination(combination)
        return images


class ConvMapBlock(_Block):
    """Images in the algebra of the coalgebra's basis elements."""
    images: dict[str, Combination] = Field(default_factory=dict)

    @field_validator("images")
    @classmethod
    def check_images(cls, images):
        for combination in images.values():
            _check_combination(combination)
        return images


class DefinitionFile(_Block):
    """One workbench input file."""
    comment: Optional[str] = None
    field: Union[Literal["Q"], PrimeField] = "Q"
    coalgebra: Optional[CoalgebraBlock] = None
    splitting: Optional[SplittingBlock] = None
    algebra: Optional[AlgebraBlock] = None
    quiver: Optional[QuiverBlock] = None
    grading: Optional[dict[str, int]] = None
    bicomodule: Optional[BicomoduleBlock] = None
    morphisms: Optional[dict[str, MorphismBlock]] = None
    conv_map: Optional[ConvMapBlock] = None
