"""Shared fixtures and hypothesis strategies."""
from pathlib import Path

import pytest
from hypothesis import strategies as st

from simplycolored.core.exactlin import Field, Matrix, span
from simplycolored.models import Arrow, Bicomodule, Coalgebra, Quiver, SimplyColored
from simplycolored.services import definition_service
from simplycolored.services.coalgebra_service import divided_power_coalgebra, setlike_coalgebra
from simplycolored.services.construction_service import path_coalgebra

FIXTURES = Path(__file__).parent / "fixtures"
Q = Field()


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


def load_fixture(name: str) -> definition_service.LoadedDefinition:
    return definition_service.load(FIXTURES / name)


@pytest.fixture
def load():
    return load_fixture


def chain_quiver(n: int) -> Quiver:
    """v0 -a1-> v1 -a2-> … -an-> vn."""
    vertices = tuple(f"v{k}" for k in range(n + 1))
    arrows = tuple(Arrow(f"a{k + 1}", f"v{k}", f"v{k + 1}") for k in range(n))
    return Quiver(vertices, arrows)


def gaussian_dual(field: Field) -> Coalgebra:
    """Dual of k[i]/(i² + 1): Δa = a⊗a - b⊗b, Δb = a⊗b + b⊗a."""
    return Coalgebra.from_structure_constants(
        field,
        ["a", "b"],
        [(0, 0, 0, 1), (0, 1, 1, -1), (1, 0, 1, 1), (1, 1, 0, 1)],
        {0: 1},
    )


def uvw_quiver() -> Quiver:
    return Quiver(("u", "v", "w"), (Arrow("α", "u", "v"), Arrow("β", "v", "w")))


def loop_bicomodule() -> Bicomodule:
    base = setlike_coalgebra(["g"])
    return Bicomodule.from_bidegrees(base, ("x",), {"x": ("g", "g")})


def arrows_bicomodule() -> Bicomodule:
    base = setlike_coalgebra(["u", "v", "w"])
    return Bicomodule.from_bidegrees(base, ("α", "β"), {"α": ("v", "u"), "β": ("w", "v")})


def mixed_bicomodule() -> Bicomodule:
    base = setlike_coalgebra(["u", "v"])
    return Bicomodule.from_bidegrees(base, ("x", "y", "z"), {"x": ("v", "u"), "y": ("u", "v"), "z": ("u", "u")})


def divided_power_colored(n: int) -> SimplyColored:
    c = divided_power_coalgebra(n)
    retraction = Matrix.from_entries(Q, c.dim, c.dim, [(0, 0, 1)])
    return SimplyColored(c, (c.basis_vector("g"),), retraction, ("g",))


def setlike_colored(names) -> SimplyColored:
    c = setlike_coalgebra(names)
    return SimplyColored(c, tuple(c.basis_vector(k) for k in range(c.dim)), c.identity(), tuple(names))


@pytest.fixture
def path_uvw() -> SimplyColored:
    return path_coalgebra(uvw_quiver(), 2)


def colored_suite() -> list[SimplyColored]:
    """Simply colored instances every structural law is checked on."""
    loop = Quiver(("g",), (Arrow("x", "g", "g"),))
    kronecker = Quiver(("u", "v"), (Arrow("a", "u", "v"), Arrow("b", "u", "v")))
    return [
        setlike_colored(["g"]),
        setlike_colored(["p", "q", "r"]),
        divided_power_colored(1),
        divided_power_colored(4),
        path_coalgebra(uvw_quiver(), 2),
        path_coalgebra(chain_quiver(3), 3),
        path_coalgebra(loop, 3),
        path_coalgebra(kronecker, 1),
    ]


# ── hypothesis strategies ────────────────────────────────────────

small_ints = st.integers(min_value=-3, max_value=3)


@st.composite
def matrices(draw, max_rows: int = 4, max_cols: int = 4, rows=None, cols=None):
    r = rows if rows is not None else draw(st.integers(min_value=1, max_value=max_rows))
    c = cols if cols is not None else draw(st.integers(min_value=1, max_value=max_cols))
    values = draw(st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix.from_rows(Q, values, cols=c)


@st.composite
def subspaces(draw, ambient: int):
    k = draw(st.integers(min_value=0, max_value=ambient))
    if k == 0:
        return span(Q, ambient, Matrix.zeros(Q, 0, ambient))
    return span(Q, ambient, draw(matrices(rows=k, cols=ambient)))
