"""Tests for splittings, conilpotency, bigradings and the reduced form."""
import pytest

from simplycolored.core.exactlin import Matrix, span
from simplycolored.core.exceptions import (
    InvalidRetractionError,
    NotConilpotentError,
    NotPointedError,
    NotSplitError,
)
from simplycolored.models import SimplyColored
from simplycolored.services.coalgebra_service import (
    check_morphism,
    divided_power_coalgebra,
    identity_morphism,
    matrix_coalgebra,
    setlike_coalgebra,
)
from simplycolored.services.colored_service import (
    assert_conilpotent,
    bigraded_decomposition,
    check_idempotent_actions,
    check_reduced,
    check_reduced_coassoc,
    check_retraction,
    check_retraction_or_raise,
    color_wedge_filtration,
    conilpotency,
    extend_morphism,
    from_coaugmentation,
    from_pointed_with_splitting,
    is_simply_colored,
    projection_identity_check,
    reduce,
    reduction_isomorphism,
    restrict_colored,
    restrict_morphism,
    tensor_colored,
    unreduce,
    verify_bicomodule,
    verify_pointed,
)

from conftest import Q, colored_suite, divided_power_colored, gaussian_dual, setlike_colored

SUITE = colored_suite()
IDS = [f"colored{k}" for k in range(len(SUITE))]


# ── Laws on every instance ───────────────────────────────────────

@pytest.mark.parametrize("sc", SUITE, ids=IDS)
def test_instances_are_simply_colored(sc):
    report = is_simply_colored(sc)
    assert report.passed, report.failures()


@pytest.mark.parametrize("sc", SUITE, ids=IDS)
def test_induced_coactions_form_a_bicomodule(sc):
    report = verify_bicomodule(sc)
    assert report.passed, report.failures()


@pytest.mark.parametrize("sc", SUITE, ids=IDS)
def test_reduced_comultiplication_is_coassociative(sc):
    assert check_reduced_coassoc(sc)


@pytest.mark.parametrize("sc", SUITE, ids=IDS)
def test_projection_identity_up_to_the_bound(sc):
    bound = conilpotency(sc).bound
    assert bound >= 0
    for n in range(1, bound + 1):
        assert projection_identity_check(sc, n)


@pytest.mark.parametrize("sc", SUITE, ids=IDS)
def test_idempotent_actions(sc):
    report = check_idempotent_actions(sc)
    assert report.passed, report.failures()


@pytest.mark.parametrize("sc", SUITE, ids=IDS)
def test_bigrading_is_a_direct_sum(sc):
    components = bigraded_decomposition(sc)
    assert sum(s.dim for s in components.values()) == sc.coalgebra.dim
    assert len(components) == len(sc.colors) ** 2


@pytest.mark.parametrize("sc", SUITE, ids=IDS)
def test_reduce_then_unreduce_is_isomorphic(sc):
    rc = reduce(sc)
    assert check_reduced(rc).passed
    back = unreduce(rc)
    assert back.coalgebra.dim == sc.coalgebra.dim
    assert is_simply_colored(back).passed
    iso = reduction_isomorphism(sc, rc)
    assert check_morphism(iso).passed
    assert iso.matrix.rank() == sc.coalgebra.dim


# ── Conilpotency ─────────────────────────────────────────────────

def test_path_coalgebra_index(path_uvw):
    result = conilpotency(path_uvw)
    assert result.conilpotent
    assert result.index == {"α": 1, "β": 1, "βα": 2}
    assert result.bound == 2
    assert [k.dim for k in result.kernel_chain] == [2, 3]


def test_divided_power_index():
    result = conilpotency(divided_power_colored(4))
    assert result.index == {"x1": 1, "x2": 2, "x3": 3, "x4": 4}
    assert result.bound == 4


def test_one_color_of_two_setlikes_is_not_conilpotent():
    c = setlike_coalgebra(["g", "h"])
    sc = from_coaugmentation(c, c.basis_vector("g"))
    assert check_retraction(sc).passed
    result = conilpotency(sc)
    assert not result.conilpotent
    assert result.bound == -1
    with pytest.raises(NotConilpotentError) as exc:
        assert_conilpotent(sc)
    assert exc.value.witness is not None
    assert not is_simply_colored(sc).passed


# ── Corruptions ──────────────────────────────────────────────────

def test_corrupted_retraction_breaks_the_bicomodule():
    sc = divided_power_colored(2)
    bad = SimplyColored(sc.coalgebra, sc.colors, sc.retraction + Matrix.from_entries(Q, 3, 3, [(0, 1, 1)]), sc.color_names)
    report = verify_bicomodule(bad)
    assert not report.passed
    assert report.check("right_coaction_counital").witness == "x1"


def test_non_idempotent_retraction_is_rejected():
    c = setlike_coalgebra(["p", "q"])
    sc = SimplyColored(c, (c.basis_vector("p"),), Matrix.from_rows(Q, [[1, 1], [0, 0]]).scale(Q.convert(2)), ("p",))
    with pytest.raises(InvalidRetractionError):
        check_retraction_or_raise(sc)


# ── Bigrading ────────────────────────────────────────────────────

def test_path_coalgebra_bigrading(path_uvw):
    dims = {pair: s.dim for pair, s in bigraded_decomposition(path_uvw).items()}
    assert dims[("u", "u")] == 1
    assert dims[("v", "u")] == 1
    assert dims[("w", "v")] == 1
    assert dims[("w", "u")] == 1
    assert dims[("u", "v")] == 0
    assert list(dims) == sorted(dims)


def test_reduced_degrees_follow_arrows(path_uvw):
    rc = reduce(path_uvw)
    assert dict(zip(rc.basis_names, rc.degrees)) == {"α": ("v", "u"), "β": ("w", "v"), "βα": ("w", "u")}


# ── Constructions ────────────────────────────────────────────────

def test_tensor_of_simply_colored():
    sc = tensor_colored(divided_power_colored(1), setlike_colored(["p", "q"]))
    assert sc.color_names == ("g*p", "g*q")
    assert is_simply_colored(sc).passed


def test_coaugmentation_must_be_setlike():
    c = divided_power_coalgebra(2)
    assert is_simply_colored(from_coaugmentation(c, c.basis_vector("g"), "g")).passed
    with pytest.raises(InvalidRetractionError):
        from_coaugmentation(c, c.basis_vector("x1"))


def test_restrict_to_subcoalgebra(path_uvw):
    c = path_uvw.coalgebra
    rows = [[1 if name == keep else 0 for name in c.basis_names] for keep in ("u", "v", "α")]
    sub = restrict_colored(path_uvw, span(Q, c.dim, Matrix.from_rows(Q, rows)))
    assert sub.coalgebra.dim == 3
    assert sub.color_names == ("u", "v")


def test_identity_restricts_and_extends(path_uvw):
    f = restrict_morphism(identity_morphism(path_uvw.coalgebra), path_uvw, path_uvw)
    assert f.color_map == {"u": "u", "v": "v", "w": "w"}
    extended = extend_morphism(f)
    assert check_morphism(extended).passed
    assert extended.matrix == Matrix.identity(Q, 6)


def test_color_wedge_filtration():
    filtration = color_wedge_filtration(divided_power_colored(4))
    assert filtration.dims == [1, 2, 3, 4, 5]
    assert filtration.exhaustive


# ── Pointed coalgebras ───────────────────────────────────────────

def test_pointed_with_splitting():
    c = divided_power_coalgebra(3)
    g = c.basis_vector("g")
    sc = from_pointed_with_splitting(c, g @ c.counit)
    assert sc.coalgebra.describe(sc.colors[0]) == "g"
    assert verify_pointed(sc).passed


def test_verify_pointed_finds_an_uncolored_setlike():
    c = setlike_coalgebra(["g", "h"])
    sc = SimplyColored(c, (c.basis_vector("g"),), Matrix.from_entries(Q, 2, 2, [(0, 0, 1)]), ("g",))
    report = verify_pointed(sc)
    assert not report.passed
    assert not report.check("coradical_is_color_span").passed
    missing = report.check("all_setlikes_are_colors")
    assert not missing.passed
    assert missing.witness == "h"


def test_pointed_with_splitting_refusals():
    m = matrix_coalgebra(2)
    with pytest.raises(NotPointedError):
        from_pointed_with_splitting(m, m.identity())
    q = gaussian_dual(Q)
    with pytest.raises(NotSplitError):
        from_pointed_with_splitting(q, q.identity())
