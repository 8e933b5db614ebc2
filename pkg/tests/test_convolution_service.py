"""Tests for convolution inverses, bialgebras and antipodes."""
import pytest
from hypothesis import given, settings as hsettings

from simplycolored.core.exactlin import Field, Matrix, span
from simplycolored.core.exceptions import (
    InvalidCoalgebraError,
    NotAGroupError,
    NotInvertibleError,
    SearchLimitError,
)
from simplycolored.models import Algebra, ConvMap, SimplyColored
from simplycolored.services.coalgebra_service import (
    divided_power_coalgebra,
    dual_algebra,
    matrix_coalgebra,
)
from simplycolored.services.convolution_service import (
    antipode,
    check_bialgebra,
    conv_inverse,
    conv_inverse_general,
    conv_unit,
    convolution_operator,
    convolve,
    cyclic_group_bialgebra,
    element_inverse,
    identity_conv_map,
    monoid_bialgebra,
    solve_convolution_inverse,
    truncated_polynomial_bialgebra,
    vanishing_index,
)

from conftest import Q, divided_power_colored, matrices


def scalars(field: Field = Q) -> Algebra:
    return Algebra.from_structure_constants(field, ["1"], [(0, 0, 0, 1)], {0: 1})


def all_colors(c) -> SimplyColored:
    return SimplyColored(c, tuple(c.basis_vector(k) for k in range(c.dim)), c.identity(), c.basis_names)


def unit_colored(c) -> SimplyColored:
    one = c.basis_vector(0)
    return SimplyColored(c, (one,), one @ c.counit, (c.basis_names[0],))


# ── Convolution algebra ──────────────────────────────────────────

HOST = divided_power_coalgebra(2)
TARGET = dual_algebra(matrix_coalgebra(2))


@given(matrices(rows=4, cols=3), matrices(rows=4, cols=3), matrices(rows=4, cols=3))
@hsettings(max_examples=50, deadline=None)
def test_convolution_is_associative_and_unital(f, g, h):
    f, g, h = (ConvMap(HOST, TARGET, m) for m in (f, g, h))
    assert convolve(convolve(f, g), h).matrix == convolve(f, convolve(g, h)).matrix
    u = conv_unit(HOST, TARGET)
    assert convolve(u, f).matrix == f.matrix == convolve(f, u).matrix


def test_convolution_operator_side():
    f = conv_unit(HOST, TARGET)
    assert convolution_operator(f, "left") == Matrix.identity(Q, 12)
    with pytest.raises(ValueError):
        convolution_operator(f, "middle")


def test_element_inverse():
    a = dual_algebra(matrix_coalgebra(2))
    assert element_inverse(a, a.unit.scale(Q.convert(3))) == a.unit.scale(Q.fraction(1, 3))
    assert element_inverse(a, Matrix.unit_column(Q, 4, 1)) is None


# ── Convolution inverses ─────────────────────────────────────────

def test_scalar_inverse():
    sc = divided_power_colored(1)
    f = ConvMap(sc.coalgebra, scalars(), Matrix.from_rows(Q, [[2, 1]]))
    h = conv_inverse(sc, f)
    assert h.matrix == Matrix.from_rows(Q, [[Q.fraction(1, 2), Q.fraction(-1, 4)]])
    assert solve_convolution_inverse(f).matrix == h.matrix


def test_inverse_through_a_long_filtration():
    sc = divided_power_colored(4)
    f = ConvMap(sc.coalgebra, scalars(), Matrix.from_rows(Q, [[3, 1, -2, 5, 1]]))
    h = conv_inverse(sc, f)
    u = conv_unit(sc.coalgebra, scalars())
    assert convolve(f, h).matrix == u.matrix == convolve(h, f).matrix


def test_refusal_names_the_color():
    sc = divided_power_colored(1)
    f = ConvMap(sc.coalgebra, scalars(), Matrix.from_rows(Q, [[0, 1]]))
    with pytest.raises(NotInvertibleError) as exc:
        conv_inverse(sc, f)
    assert exc.value.color == "g"
    assert solve_convolution_inverse(f) is None


def test_general_decomposition_agrees():
    sc = divided_power_colored(2)
    c = sc.coalgebra
    f = ConvMap(c, scalars(), Matrix.from_rows(Q, [[2, 1, 1]]))
    f0 = span(Q, c.dim, Matrix.from_rows(Q, [[1, 0, 0]]))
    m = span(Q, c.dim, Matrix.from_rows(Q, [[0, 1, 0], [0, 0, 1]]))
    assert vanishing_index(c, m.columns @ Matrix.from_rows(Q, [[0, 1, 0], [0, 0, 1]])) == 2
    assert conv_inverse_general(c, f, f0, m).matrix == conv_inverse(sc, f).matrix

    not_sub = span(Q, c.dim, Matrix.from_rows(Q, [[0, 1, 0]]))
    rest = span(Q, c.dim, Matrix.from_rows(Q, [[1, 0, 0], [0, 0, 1]]))
    with pytest.raises(InvalidCoalgebraError):
        conv_inverse_general(c, f, not_sub, rest)


def test_exhaustive_solve_is_capped():
    c = matrix_coalgebra(4)
    with pytest.raises(SearchLimitError):
        solve_convolution_inverse(conv_unit(c, scalars()))


# ── Bialgebras and antipodes ─────────────────────────────────────

@pytest.mark.parametrize("n", [2, 3, 4])
def test_cyclic_group_antipode(n):
    b = cyclic_group_bialgebra(n)
    assert check_bialgebra(b).passed
    s = antipode(b, all_colors(b.coalgebra))
    expected = Matrix.from_entries(Q, n, n, [((n - k) % n, k, 1) for k in range(n)])
    assert s.matrix == expected


def test_monoid_has_no_antipode():
    table = {("1", "1"): "1", ("1", "z"): "z", ("z", "1"): "z", ("z", "z"): "z"}
    b = monoid_bialgebra(["1", "z"], table)
    assert check_bialgebra(b).passed
    with pytest.raises(NotAGroupError) as exc:
        antipode(b, all_colors(b.coalgebra))
    assert exc.value.axiom == "inverse"
    assert exc.value.witness == "z"
    assert solve_convolution_inverse(identity_conv_map(b)) is None


def test_truncated_polynomial_over_gf3():
    f3 = Field.prime(3)
    b = truncated_polynomial_bialgebra(f3, 3)
    assert check_bialgebra(b).passed
    s = antipode(b, unit_colored(b.coalgebra))
    assert s.matrix == Matrix.from_rows(f3, [[1, 0, 0], [0, -1, 0], [0, 0, 1]])


def test_truncated_polynomial_over_q_is_not_a_bialgebra():
    b = truncated_polynomial_bialgebra(Q, 3)
    report = check_bialgebra(b)
    assert not report.check("delta_multiplicative").passed
    with pytest.raises(InvalidCoalgebraError):
        antipode(b, unit_colored(b.coalgebra))
