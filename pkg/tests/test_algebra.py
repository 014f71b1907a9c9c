from fractions import Fraction

import pytest

from csl.algebra import (
    Poly, RelationGroup, SingularSystem, UndeclaredVariable, Verdict, ZeroPolynomial, bareiss, check_disjoint,
    normal_form, rational_matrix_is_psd, reduce_fraction, solve_linear, solve_rational, sturm_sign_on_interval,
)
from csl.algebra.poly import variables
from csl.algebra.sturm import cauchy_bound, ev

x, y, z = variables("x y z")


def test_poly_arithmetic_and_printing():
    p = (x + y) * (x - y)
    assert p == x * x - y * y
    assert str(-x * y + 1).startswith("-")
    assert (x + 1) ** 3 == x * x * x + 3 * x * x + 3 * x + 1
    assert Poly.const(0) == Poly()


def test_poly_calculus_and_substitution():
    p = x * x * y + 3 * y
    assert p.diff("x") == 2 * x * y
    assert p.diff("y") == x * x + 3
    assert p.subs({"x": y}) == y * y * y + 3 * y
    assert p.evaluate({"x": Fraction(1, 2), "y": 2}) == Fraction(13, 2)


def test_divexact_and_fraction_reduction():
    q = (x + y) * (x - 2 * z)
    assert q.divexact(x + y) == x - 2 * z
    with pytest.raises(ValueError):
        (x + 1).divexact(y)
    fr = reduce_fraction(x * x * y, x * y * 4)
    assert (fr.num, fr.den) == (x * Fraction(1, 4), Poly.const(1))


def test_normal_form_uses_last_variable_as_pivot():
    g = RelationGroup(("a", "b"))
    a, b = variables("a b")
    assert g.pivot == "b"
    assert normal_form(b * b, [g]) == 1 - a * a
    assert normal_form(b * b * b, [g]) == b - a * a * b
    assert normal_form(a * a + b * b, [g]) == Poly.const(1)


def test_normal_form_rejects_undeclared_variables():
    with pytest.raises(UndeclaredVariable):
        normal_form(x + y, [], declared={"x"})


def test_relation_groups_must_be_disjoint():
    with pytest.raises(ValueError):
        check_disjoint([RelationGroup(("a", "b")), RelationGroup(("b", "c"))])


def test_bareiss_two_by_two():
    M = [[x, Poly.const(1)], [Poly.const(1), x]]
    yv, D = bareiss(M, [Poly.const(1), Poly.const(0)])
    # x/(x^2-1), -1/(x^2-1)
    sol = [reduce_fraction(v, D) for v in yv]
    assert sol[0].num * (x * x - 1) == x * sol[0].den
    assert sol[1].num * (x * x - 1) == -sol[1].den
    with pytest.raises(SingularSystem):
        bareiss([[x, x], [x, x]], [Poly.const(1), Poly.const(1)])


def test_solve_linear_returns_reduced_fractions():
    sol = solve_linear([[Poly.const(2)]], [x * 4])
    assert sol[0].num == 2 * x and sol[0].den == Poly.const(1)


def test_solve_rational_free_variables_are_zero():
    assert solve_rational([{0: 1, 1: 1}], [3], 2) == [Fraction(3), Fraction(0)]
    assert solve_rational([{0: 1}, {0: 2}], [1, 3], 1) is None


def test_psd_test():
    assert rational_matrix_is_psd([[1, 1], [1, 1]])
    assert rational_matrix_is_psd([[2, 0], [0, 0]])
    assert not rational_matrix_is_psd([[1, 2], [2, 1]])
    assert not rational_matrix_is_psd([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        rational_matrix_is_psd([[1, 2], [0, 1]])


def test_sturm_sign_and_root_isolation():
    assert sturm_sign_on_interval(x * x + 1, -5, 5).verdict is Verdict.STRICTLY_POSITIVE
    assert sturm_sign_on_interval(-x * x - 1, -1, 1).sign == -1
    res = sturm_sign_on_interval(x * x - 2, 0, 2, width=Fraction(1, 2 ** 30))
    assert res.verdict is Verdict.HAS_ZERO
    a, b = res.witness
    assert b - a <= Fraction(1, 2 ** 30) and a * a < 2 < b * b
    exact = sturm_sign_on_interval(x * x - 1, 0, 3)
    assert exact.verdict is Verdict.HAS_ZERO
    with pytest.raises(ZeroPolynomial):
        sturm_sign_on_interval(Poly(), 0, 1)


def test_cauchy_bound_contains_roots():
    p = [Fraction(-6), Fraction(1), Fraction(1)]  # (t+3)(t-2)
    B = cauchy_bound(p)
    assert B >= 3 and ev(p, Fraction(2)) == 0
