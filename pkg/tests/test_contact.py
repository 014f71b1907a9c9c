from fractions import Fraction
import random

import numpy as np
import pytest
import sympy as sp

from csl.algebra import Poly
from csl.contact import (
    BoundHint, NotContact, Status, check_reeb, domain_points, nonvanishing_certificate, reeb_field,
    verify_hint, verify_witness, volume_coefficient,
)
from csl.dsl import parse_form
from csl.exterior import Chart, ChartError, VectorField, field_eq

from oracles import random_sphere_point, top_coefficient

X, Y, Z = Poly.var("x"), Poly.var("y"), Poly.var("z")
R3 = Chart(coords=("x", "y", "z"), name="r3")
S2 = Chart(coords=("x", "y", "z"), relations=(("x", "y", "z"),), sphere=True, name="s2")
S3 = Chart(coords=("q1", "q2", "q3", "q4"), relations=(("q1", "q2", "q3", "q4"),), sphere=True, name="s3")


def test_reeb_field_of_standard_forms():
    assert field_eq(reeb_field(parse_form(R3, "dz + x*dy")), VectorField(R3, {"dz": 1}))
    R = reeb_field(parse_form(R3, "(1 + x*x)*dz + y*dx"))
    assert check_reeb(parse_form(R3, "(1 + x*x)*dz + y*dx"), R)


def test_reeb_field_on_the_three_sphere_is_right_multiplication_by_i():
    w = parse_form(S3, "q1*dq2 - q2*dq1 + q4*dq3 - q3*dq4")
    q = [Poly.var(f"q{i}") for i in range(1, 5)]
    expected = VectorField(S3, {"dq1": -q[1], "dq2": q[0], "dq3": q[3], "dq4": -q[2]})
    assert field_eq(reeb_field(w), expected)


def test_closed_forms_have_no_reeb_field():
    with pytest.raises(NotContact):
        reeb_field(parse_form(R3, "dx"))


def test_coordinate_relations_need_sphere_mode():
    ch = Chart(coords=("x", "y", "z"), relations=(("x", "y"),))
    with pytest.raises(ChartError):
        reeb_field(parse_form(ch, "dz + x*dy"))


def test_volume_coefficient_simple():
    rep = volume_coefficient(parse_form(R3, "dz + x*dy"))
    assert rep.coefficient == Poly.const(1) and not rep.sphere


RANDOM_R5 = ["x2 + x1*x3", "x4 - x3*x3", "1 + x5*x1", "x2*x5", "x1"]


@pytest.mark.parametrize("seed", range(6))
def test_volume_coefficient_matches_pfaffian_oracle_on_r5(seed):
    rng = random.Random(seed)
    names = [f"x{i}" for i in range(1, 6)]
    ch = Chart(coords=tuple(names))
    coeffs = [f"{rng.randint(-2, 2)}*{rng.choice(names)}*{rng.choice(names)} + {rng.choice(RANDOM_R5)}"
              for _ in names]
    w = parse_form(ch, " + ".join(f"({c})*d{v}" for c, v in zip(coeffs, names)))
    coef = volume_coefficient(w).coefficient
    syms = sp.symbols(names)
    exprs = [sp.sympify(c, locals=dict(zip(names, syms))) for c in coeffs]
    for _ in range(3):
        pt = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in names]
        exact = float(coef.evaluate(dict(zip(names, pt))))
        approx = top_coefficient(exprs, syms, [float(p) for p in pt])
        assert exact == pytest.approx(approx, rel=1e-9, abs=1e-9)


def test_sphere_volume_matches_pfaffian_oracle():
    w = parse_form(S3, "q1*dq2 - q2*dq1 + q4*dq3 - q3*dq4")
    coef = volume_coefficient(w).coefficient
    assert coef == Poly.const(2)
    syms = sp.symbols("q1:5")
    exprs = [-syms[1], syms[0], syms[3], -syms[2]]
    rng = np.random.default_rng(0)
    for _ in range(5):
        assert top_coefficient(exprs, syms, random_sphere_point(rng, 4), sphere=True) == pytest.approx(2.0)


def test_certificate_ladder_rungs():
    c = nonvanishing_certificate(Poly.const(-3), R3)
    assert c.status is Status.CERTIFIED_CONSTANT and c.value == -3 and c.exit_code == 0
    c = nonvanishing_certificate(X + 2, S2)
    assert c.status is Status.CERTIFIED_SIGN and c.method == "coefficient-bound" and c.sign == 1
    c = nonvanishing_certificate(Poly(), R3)
    assert c.refuted and c.method == "identically-zero"
    c = nonvanishing_certificate(X, S2, grid_size=200)
    assert c.refuted and c.witness["kind"] == "sign-change" and verify_witness(X, S2, c.witness)
    c = nonvanishing_certificate(X * X - Y, R3, grid_size=200)
    assert c.refuted and c.witness["kind"] == "exact-zero" and verify_witness(X * X - Y, R3, c.witness)
    c = nonvanishing_certificate(X * X + 1, R3, grid_size=200)
    assert c.status is Status.NUMERIC_UNREFUTED and c.exit_code == 2 and c.samples == 200


def test_hints_are_checked_or_marked_as_assumed():
    c = (X + Y) * (X + Y) + 1
    good = nonvanishing_certificate(c, S2, (BoundHint(X + Y, -2, 2),), grid_size=100)
    assert good.status is Status.CERTIFIED_SIGN and good.method == "sturm-hint"
    assumed = nonvanishing_certificate(c, S2, (BoundHint(X + Y, -2, 2, assumed=True),), grid_size=100)
    assert assumed.status is Status.CONDITIONAL and assumed.exit_code == 2
    bad = nonvanishing_certificate(c, S2, (BoundHint(X + Y, -1, 1),), grid_size=100)
    assert bad.status is Status.NUMERIC_UNREFUTED
    assert verify_hint(BoundHint(X * Y, -1, 1), S2)[0] is False


def test_witness_verification_rejects_bogus_points():
    assert not verify_witness(X, S2, {"kind": "exact-zero", "point": {"x": "0", "y": "0", "z": "0"}})
    assert not verify_witness(X, S2, {"kind": "exact-zero", "point": {"x": "1", "y": "0", "z": "0"}})
    assert verify_witness(X, S2, {"kind": "exact-zero", "point": {"x": "0", "y": "1", "z": "0"}})


def test_domain_points_lie_on_the_variety():
    for pt in domain_points(S3, ["q1", "q2", "q3", "q4"], 50, seed=3):
        assert sum(v * v for v in pt.values()) == 1
