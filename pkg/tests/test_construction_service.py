"""Tests for path coalgebras, gradings, bicomodules and the cofree cotensor coalgebra."""
import pytest

from simplycolored.core.exactlin import Matrix, inverse
from simplycolored.core.exceptions import GradingError, InvalidMorphismError
from simplycolored.models import Arrow, Bicomodule, GradedCoalgebra, Quiver
from simplycolored.services.coalgebra_service import (
    check_coalgebra,
    check_morphism,
    divided_power_coalgebra,
    setlike_coalgebra,
)
from simplycolored.services.colored_service import conilpotency, is_simply_colored
from simplycolored.services.construction_service import (
    check_bicomodule,
    check_grading,
    check_index_bound,
    cofree_uniqueness_certificate,
    cofree_universal_map,
    cogenerator_projection,
    cotensor,
    cotensor_coalgebra,
    cotensor_words,
    count_paths,
    enumerate_paths,
    homogeneous_bicomodule,
    path_coalgebra,
    path_grading,
    path_name,
    deformation_space_dim,
    space_like_check,
    word_grading,
)

from conftest import Q, arrows_bicomodule, chain_quiver, mixed_bicomodule, uvw_quiver

LOOP = Quiver(("g",), (Arrow("x", "g", "g"),))
KRONECKER = Quiver(("u", "v"), (Arrow("a", "u", "v"), Arrow("b", "u", "v")))
CYCLE = Quiver(("p", "q"), (Arrow("s", "p", "q"), Arrow("t", "q", "p")))


# ── Paths ────────────────────────────────────────────────────────

@pytest.mark.parametrize(
    "quiver, max_len, expected",
    [
        (uvw_quiver(), 2, 6),
        (chain_quiver(4), 4, 15),
        (LOOP, 3, 4),
        (KRONECKER, 1, 4),
        (CYCLE, 3, 8),
        (chain_quiver(3), 0, 4),
    ],
)
def test_path_coalgebra_dimension_counts_paths(quiver, max_len, expected):
    sc = path_coalgebra(quiver, max_len)
    assert sc.coalgebra.dim == expected
    assert count_paths(quiver, max_len) == expected
    assert is_simply_colored(sc).passed


def test_path_names():
    assert path_coalgebra(uvw_quiver(), 2).coalgebra.basis_names == ("u", "v", "w", "α", "β", "βα")
    q = chain_quiver(2)
    assert [path_name(q, p) for p in enumerate_paths(q, 2)] == ["a1", "a2", "a2.a1"]


def test_path_coalgebra_comultiplication(path_uvw):
    c = path_uvw.coalgebra
    expected = (
        c.basis_vector("w").kron(c.basis_vector("βα"))
        + c.basis_vector("β").kron(c.basis_vector("α"))
        + c.basis_vector("βα").kron(c.basis_vector("u"))
    )
    assert c.delta @ c.basis_vector("βα") == expected


def test_negative_length_is_rejected():
    with pytest.raises(GradingError):
        enumerate_paths(uvw_quiver(), -1)


# ── Gradings ─────────────────────────────────────────────────────

@pytest.mark.parametrize("quiver, max_len", [(uvw_quiver(), 2), (chain_quiver(4), 4), (CYCLE, 4)])
def test_path_length_grading(quiver, max_len):
    g = path_grading(quiver, max_len)
    assert check_grading(g).passed
    assert check_index_bound(g).passed


def test_divided_power_grading_is_space_like():
    c = divided_power_coalgebra(3)
    sc = space_like_check(GradedCoalgebra(c, (0, 1, 2, 3)))
    assert sc.color_names == ("g",)
    assert conilpotency(sc).bound == 3
    assert check_index_bound(GradedCoalgebra(c, (0, 1, 2, 3))).passed


def test_grading_violation_names_the_element():
    c = divided_power_coalgebra(2)
    report = check_grading(GradedCoalgebra(c, (0, 1, 1)))
    assert report.check("comultiplication_graded").witness == "x2"
    with pytest.raises(GradingError) as exc:
        space_like_check(GradedCoalgebra(c, (0, 1, 1)))
    assert exc.value.witness == "x2"


def test_degree_zero_must_be_setlike():
    c = divided_power_coalgebra(1)
    with pytest.raises(GradingError) as exc:
        space_like_check(GradedCoalgebra(c, (0, 0)))
    assert exc.value.witness == "x1"


# ── Bicomodules and cotensors ────────────────────────────────────

def test_homogeneous_bicomodule_axioms():
    assert check_bicomodule(arrows_bicomodule()).passed
    assert check_bicomodule(mixed_bicomodule()).passed


@pytest.mark.parametrize("m", [arrows_bicomodule(), mixed_bicomodule()], ids=["arrows", "mixed"])
def test_words_match_the_cotensor_kernel(m):
    assert cotensor(m, m).dim == len(cotensor_words(m, 2))


def test_mixed_words():
    m = mixed_bicomodule()
    assert len(cotensor_words(m, 2)) == 5
    assert cotensor_words(m, 0) == [()]


def test_loop_cotensor_coalgebra():
    base = setlike_coalgebra(["g"])
    m = Bicomodule.from_bidegrees(base, ("x",), {"x": ("g", "g")})
    sc = cotensor_coalgebra(["g"], m, 3)
    assert sc.coalgebra.basis_names == ("g", "[x]", "[x|x]", "[x|x|x]")
    assert is_simply_colored(sc).passed
    assert conilpotency(sc).bound == 3
    assert check_grading(word_grading(sc, m, 3)).passed


def test_non_homogeneous_basis_is_rebased():
    base = setlike_coalgebra(["g", "h"])
    m = Bicomodule.from_bidegrees(base, ("p", "q"), {"p": ("g", "g"), "q": ("h", "h")})
    change = Matrix.from_rows(Q, [[1, 0], [1, 1]])
    back = inverse(change)
    ident_s = base.identity()
    rebased = Bicomodule(
        base,
        ("r", "s"),
        ident_s.kron(back) @ m.rho_l @ change,
        back.kron(ident_s) @ m.rho_r @ change,
    )
    assert check_bicomodule(rebased).passed
    assert rebased.bidegrees() is None
    homogeneous, _ = homogeneous_bicomodule(rebased)
    assert homogeneous.bidegrees() == [("g", "g"), ("h", "h")]
    sc = cotensor_coalgebra(["g", "h"], rebased, 2)
    assert sc.coalgebra.dim == 6
    assert check_coalgebra(sc.coalgebra).passed


def test_colors_must_match_the_base():
    with pytest.raises(GradingError):
        cotensor_coalgebra(["v", "u", "w"], arrows_bicomodule(), 2)


# ── The universal map ────────────────────────────────────────────

def test_cofree_map_from_a_path_coalgebra(path_uvw):
    m = arrows_bicomodule()
    c = path_uvw.coalgebra
    f = Matrix.from_entries(Q, 2, c.dim, [(0, c.index("α"), 1), (1, c.index("β"), 1)])
    phi = {"u": "u", "v": "v", "w": "w"}
    morphism = cofree_universal_map(path_uvw, f, phi, m, 2)
    target = morphism.target
    assert target.basis_names == ("u", "v", "w", "[α]", "[β]", "[β|α]")
    assert check_morphism(morphism).passed
    assert morphism.matrix.rank() == 6
    assert morphism.matrix @ c.basis_vector("βα") == target.basis_vector("[β|α]")
    assert cofree_uniqueness_certificate(["u", "v", "w"], m, 2)
    assert deformation_space_dim(path_uvw, morphism, m) == 0


def test_cofree_map_restricts_to_f(path_uvw):
    m = arrows_bicomodule()
    c = path_uvw.coalgebra
    f = Matrix.from_entries(Q, 2, c.dim, [(0, c.index("α"), 1), (1, c.index("β"), 1)])
    morphism = cofree_universal_map(path_uvw, f, {"u": "u", "v": "v", "w": "w"}, m, 3)
    target = cotensor_coalgebra(["u", "v", "w"], m, 3)
    assert morphism.target.dim == target.coalgebra.dim == 6
    projection = cogenerator_projection(target, m)
    assert projection @ morphism.matrix == f @ path_uvw.projection


def test_cofree_map_below_the_bound_is_refused(path_uvw):
    m = arrows_bicomodule()
    c = path_uvw.coalgebra
    f = Matrix.from_entries(Q, 2, c.dim, [(0, c.index("α"), 1), (1, c.index("β"), 1)])
    with pytest.raises(InvalidMorphismError) as exc:
        cofree_universal_map(path_uvw, f, {"u": "u", "v": "v", "w": "w"}, m, 1)
    assert exc.value.witness == "βα"


def test_cofree_map_must_respect_colors(path_uvw):
    m = arrows_bicomodule()
    c = path_uvw.coalgebra
    f = Matrix.from_entries(Q, 2, c.dim, [(1, c.index("α"), 1)])
    with pytest.raises(InvalidMorphismError):
        cofree_universal_map(path_uvw, f, {"u": "u", "v": "v", "w": "w"}, m, 2)
    with pytest.raises(InvalidMorphismError):
        cofree_universal_map(path_uvw, f, {"u": "u", "v": "v"}, m, 2)
