from fractions import Fraction

import pytest

from csl.algebra import Poly
from csl.exterior import (
    AbstractGen, Chart, ChartError, DiffForm, FuncVar, MixedCharts, NonPolynomialField, VectorField, contract,
    contract_cleared, evaluate_at, ext_d, field_eq, form_eq, pair, standard_frame, wedge, wpow,
)

X, Y, Z = Poly.var("x"), Poly.var("y"), Poly.var("z")


@pytest.fixture
def r3():
    return Chart(coords=("x", "y", "z"), name="r3")


@pytest.fixture
def s2():
    return Chart(coords=("x", "y", "z"), relations=(("x", "y", "z"),), sphere=True, name="s2")


def test_chart_rejects_duplicates_and_bad_declarations():
    with pytest.raises(ChartError):
        Chart(coords=("x", "x"))
    with pytest.raises(ChartError):
        Chart(coords=("x", "y"), relations=(("x",),), sphere=True)  # host must cover all coordinates
    with pytest.raises(ChartError):
        Chart(gens=(AbstractGen("a", ((("a", "b"), Poly.const(1)),)), AbstractGen("b")))
    with pytest.raises(ChartError):
        Chart(coords=("x",), consts=("k",), relations=(("x", "k"),))  # mixes kinds
    with pytest.raises(ChartError):
        Chart(funcs=(FuncVar("s", (("dnope", Poly.const(1)),)),))


def test_generator_order_and_volume(r3):
    assert r3.generators == ("dx", "dy", "dz")
    vol = wedge(wedge(r3.d("x"), r3.d("y")), r3.d("z"))
    assert vol.coefficient(["dx", "dy", "dz"]) == Poly.const(1)
    assert vol.coefficient(["dz", "dy", "dx"]) == Poly.const(-1)


def test_exterior_derivative_basics(r3):
    w = r3.d("y") * X
    assert ext_d(w) == wedge(r3.d("x"), r3.d("y"))
    assert ext_d(r3.scalar(X * Y)) == r3.d("x") * Y + r3.d("y") * X
    with pytest.raises(ValueError):
        wpow(w, -1)


def test_abstract_generators_and_functions():
    s, c = Poly.var("s"), Poly.var("c")
    ch = Chart(funcs=(FuncVar("s", (("dt", c),)), FuncVar("c", (("dt", -s),))),
               gens=(AbstractGen("dt"), AbstractGen("du"), AbstractGen("a", ((("dt", "du"), Poly.const(3)),))),
               relations=(("s", "c"),))
    assert ext_d(ch.gen("a")) == wedge(ch.gen("dt"), ch.gen("du")) * 3
    assert ext_d(ch.scalar(s)) == ch.gen("dt") * c
    # s^2 + c^2 is constant on the chart
    assert ext_d(ch.scalar(s * s + c * c)).is_zero()


def test_form_equality_uses_the_differentiated_relation(s2):
    radial = s2.d("x") * X + s2.d("y") * Y + s2.d("z") * Z
    assert not radial.is_zero()
    assert form_eq(radial, s2.zero())
    res = form_eq(s2.d("x"), s2.zero())
    assert not res and not res.residue.is_zero()


def test_form_equality_clears_pivot_denominators(s2):
    # dz = -(x dx + y dy)/z on the sphere, so z dz + x dx + y dy = 0 but dz alone is not 0
    lhs = wedge(s2.d("x"), s2.d("z")) * Z
    rhs = wedge(s2.d("x"), s2.d("y")) * (-Y)
    assert form_eq(lhs, rhs)


def test_mixing_charts_is_an_error(r3, s2):
    with pytest.raises(MixedCharts):
        r3.d("x") + s2.d("x")


def test_vector_fields_and_contraction(r3):
    V = VectorField(r3, {"dx": Y, "dy": -X})
    w = r3.d("x") * X + r3.d("y") * Y
    assert not pair(w, V)
    assert contract(V, wedge(r3.d("x"), r3.d("y"))) == r3.d("y") * Y + r3.d("x") * X
    W = VectorField(r3, {"dx": 1}, den=Y)
    with pytest.raises(NonPolynomialField):
        contract(W, w)
    assert contract_cleared(W, w).scalar_part() == X
    assert field_eq(VectorField(r3, {"dx": X * Y}, den=Y), VectorField(r3, {"dx": X}))
    assert VectorField(r3, {"dx": 2}, den=2) == VectorField(r3, {"dx": 1})


def test_evaluation_on_frames(r3, s2):
    vol = wedge(wedge(r3.d("x"), r3.d("y")), r3.d("z")) * (X + 1)
    frame = standard_frame(r3)
    assert evaluate_at(vol, {"x": 2, "y": 0, "z": 0}, frame) == 3
    swapped = [frame[1], frame[0], frame[2]]
    assert evaluate_at(vol, {"x": 2, "y": 0, "z": 0}, swapped) == -3
    with pytest.raises(ValueError):
        evaluate_at(s2.d("x"), {"x": 1, "y": 1, "z": 0}, standard_frame(s2)[:1])
    with pytest.raises(ValueError):
        evaluate_at(s2.d("x"), {"x": 1}, standard_frame(s2)[:1])


def test_subs_and_chart_transfer(r3):
    w = r3.d("z") * (X * Y)
    assert w.subs({"x": Fraction(1, 2)}) == r3.d("z") * (Y / 2)
    ext = r3.extend(consts=("k",))
    assert w.on(ext).chart == ext
