"""Tests for coalgebra constructors and checks."""
from itertools import combinations

import pytest
from hypothesis import given, settings as hsettings

from simplycolored.core.exactlin import Matrix, image, is_subspace, span
from simplycolored.core.exceptions import InvalidCoalgebraError, NotCoidealError
from simplycolored.models import Coalgebra, CoalgebraMorphism
from simplycolored.services.coalgebra_service import (
    check_algebra,
    check_coalgebra,
    check_morphism,
    compose,
    counit_morphism,
    direct_sum,
    divided_power_coalgebra,
    dual_algebra,
    identity_morphism,
    is_setlike,
    is_subcoalgebra,
    matrix_coalgebra,
    quotient_coalgebra,
    restrict_coalgebra,
    setlike_coalgebra,
    subcoalgebra_closure,
    tensor_coalgebra,
)
from simplycolored.services.construction_service import cotensor_coalgebra, path_coalgebra

from conftest import (
    Q,
    arrows_bicomodule,
    chain_quiver,
    loop_bicomodule,
    mixed_bicomodule,
    subspaces,
    uvw_quiver,
)


def constructor_outputs() -> list[Coalgebra]:
    """Every constructor, over a spread of sizes."""
    out = []
    out += [setlike_coalgebra([f"g{k}" for k in range(n)]) for n in (1, 2, 5, 12, 20)]
    out += [matrix_coalgebra(n) for n in (1, 2, 3)]
    out += [divided_power_coalgebra(n) for n in (0, 1, 3, 6, 9)]
    out += [path_coalgebra(chain_quiver(n), n).coalgebra for n in (1, 2, 3, 4, 5)]
    out += [path_coalgebra(uvw_quiver(), 2).coalgebra]
    out += [cotensor_coalgebra(["g"], loop_bicomodule(), n).coalgebra for n in (1, 3)]
    out += [cotensor_coalgebra(["u", "v", "w"], arrows_bicomodule(), 2).coalgebra]
    out += [cotensor_coalgebra(["u", "v"], mixed_bicomodule(), n).coalgebra for n in (2, 3)]
    out += [tensor_coalgebra(divided_power_coalgebra(1), setlike_coalgebra(["p", "q"]))]
    out += [tensor_coalgebra(matrix_coalgebra(2), divided_power_coalgebra(2))]
    out += [tensor_coalgebra(setlike_coalgebra(["p", "q"]), path_coalgebra(chain_quiver(2), 2).coalgebra)]
    out += [direct_sum([matrix_coalgebra(2), divided_power_coalgebra(2), setlike_coalgebra(["g"])])[0]]
    out += [direct_sum([cotensor_coalgebra(["g"], loop_bicomodule(), 2).coalgebra, divided_power_coalgebra(2)])[0]]
    c = matrix_coalgebra(2)
    out += [quotient_coalgebra(c, span(Q, c.dim, Matrix.from_rows(Q, [[0, 1, 0, 0]])))[0]]
    out += [matrix_coalgebra(6), matrix_coalgebra(7)]
    return out


@pytest.mark.parametrize("c", constructor_outputs(), ids=lambda c: f"dim{c.dim}")
def test_constructor_axioms(c):
    report = check_coalgebra(c)
    assert report.passed, report.failures()


def test_suite_is_large_enough():
    cs = constructor_outputs()
    assert len(cs) >= 30
    assert max(c.dim for c in cs) >= 49


def test_corrupted_comultiplication_is_reported():
    c = divided_power_coalgebra(2)
    bad = Coalgebra(c.field, c.basis_names, c.delta + Matrix.from_entries(Q, 9, 3, [(5, 2, 1)]), c.counit)
    report = check_coalgebra(bad)
    assert not report.passed
    assert report.check("coassociativity").witness == "x2"


def test_setlike_elements():
    c = setlike_coalgebra(["p", "q"])
    assert is_setlike(c, c.basis_vector("p"))
    assert not is_setlike(c, c.basis_vector("p") + c.basis_vector("q"))


def test_duplicate_setlike_names():
    with pytest.raises(InvalidCoalgebraError):
        setlike_coalgebra(["p", "p"])


def test_matrix_coalgebra_names():
    assert matrix_coalgebra(2).basis_names == ("e11", "e12", "e21", "e22")


def test_direct_sum_prefixes_clashing_names():
    c, injections = direct_sum([setlike_coalgebra(["g"]), setlike_coalgebra(["g"])])
    assert c.basis_names == ("0:g", "1:g")
    assert all(check_morphism(inj).passed for inj in injections)


def test_tensor_names_and_counit():
    t = tensor_coalgebra(setlike_coalgebra(["p"]), divided_power_coalgebra(1))
    assert t.basis_names == ("p*g", "p*x1")
    assert is_setlike(t, t.basis_vector("p*g"))


def test_dual_algebra_is_an_algebra():
    a = dual_algebra(matrix_coalgebra(2))
    assert a.basis_names[0] == "e11*"
    assert check_algebra(a).passed


def test_morphisms_compose():
    c = divided_power_coalgebra(2)
    ident = identity_morphism(c)
    assert check_morphism(compose(ident, ident)).passed
    assert check_morphism(counit_morphism(c)).passed


def test_non_morphism_names_witness():
    c = setlike_coalgebra(["p", "q"])
    f = CoalgebraMorphism(c, c, Matrix.from_rows(Q, [[1, 1], [0, 0]]))
    assert not check_morphism(f).passed


def test_quotient_requires_coideal():
    c = divided_power_coalgebra(2)
    with pytest.raises(NotCoidealError):
        quotient_coalgebra(c, span(Q, c.dim, Matrix.from_rows(Q, [[1, 0, 0]])))


def test_subcoalgebras():
    c = divided_power_coalgebra(3)
    low = span(Q, c.dim, Matrix.from_rows(Q, [[1, 0, 0, 0], [0, 1, 0, 0]]))
    assert is_subcoalgebra(c, low)
    sub, inclusion = restrict_coalgebra(c, low)
    assert sub.basis_names == ("g", "x1")
    assert check_coalgebra(sub).passed and check_morphism(inclusion).passed
    only_top = span(Q, c.dim, Matrix.from_rows(Q, [[0, 0, 0, 1]]))
    assert subcoalgebra_closure(c, only_top).dim == 0
    assert subcoalgebra_closure(c, image(c.identity())).dim == c.dim


def coordinate_subcoalgebras(c: Coalgebra):
    """Subcoalgebras spanned by a subset of the basis."""
    found = []
    for k in range(c.dim + 1):
        for chosen in combinations(range(c.dim), k):
            rows = [[1 if j == i else 0 for j in range(c.dim)] for i in chosen]
            d = span(Q, c.dim, Matrix.from_rows(Q, rows, cols=c.dim))
            if is_subcoalgebra(c, d):
                found.append(d)
    return found


@pytest.mark.parametrize(
    "c",
    [divided_power_coalgebra(3), setlike_coalgebra(["p", "q", "r"])],
    ids=["divided_power", "setlike"],
)
def test_closure_is_the_largest_subcoalgebra_inside(c):
    # every subcoalgebra of these two is spanned by basis elements
    candidates = coordinate_subcoalgebras(c)

    @given(subspaces(c.dim))
    @hsettings(max_examples=50, deadline=None)
    def check(w):
        closure = subcoalgebra_closure(c, w)
        assert is_subcoalgebra(c, closure)
        assert is_subspace(closure, w)
        for d in candidates:
            if is_subspace(d, w):
                assert is_subspace(d, closure)

    check()
