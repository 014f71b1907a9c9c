"""Randomised identities of the exact engine (at least 200 cases each)."""
from fractions import Fraction
import random

from hypothesis import given, settings, strategies as st

from csl.algebra import Poly, RelationGroup, Verdict, bareiss, normal_form, solve_rational, sturm_sign_on_interval
from csl.algebra.sturm import ev
from csl.contact import domain_points
from csl.exterior import ext_d, wedge

from strategies import forms, mixed_chart, polys, small_rationals, sphere_chart

N = 250
MIXED = mixed_chart()
SPHERE = sphere_chart()


@settings(max_examples=N)
@given(st.integers(0, 2).flatmap(lambda k: forms(MIXED, k)))
def test_d_squared_is_zero(w):
    assert ext_d(ext_d(w)).is_zero()


@settings(max_examples=N)
@given(st.integers(0, 2).flatmap(lambda k: forms(SPHERE, k)))
def test_d_squared_is_zero_on_sphere_chart(w):
    assert ext_d(ext_d(w)).is_zero()


@settings(max_examples=N)
@given(polys(list(MIXED.variables)), polys(list(MIXED.variables)))
def test_leibniz_rule_for_functions(f, g):
    F, G = MIXED.scalar(f), MIXED.scalar(g)
    assert ext_d(F * G) == ext_d(F) * g + ext_d(G) * f


@settings(max_examples=N)
@given(st.integers(0, 2).flatmap(lambda k: forms(MIXED, k)), st.integers(0, 2).flatmap(lambda k: forms(MIXED, k)))
def test_d_is_an_antiderivation(a, b):
    if a.is_zero():
        return
    sign = -1 if a.degree % 2 else 1
    assert ext_d(wedge(a, b)) == wedge(ext_d(a), b) + wedge(a, ext_d(b)) * sign


@settings(max_examples=N)
@given(forms(MIXED, 1), forms(MIXED, 1))
def test_wedge_of_one_forms_is_antisymmetric(a, b):
    assert wedge(a, b) == -wedge(b, a)
    assert wedge(a, a).is_zero()


GROUPS = (RelationGroup(("a", "b", "e")), RelationGroup(("u", "v")))
NF_VARS = ["a", "b", "e", "u", "v", "t"]


def _nf(p):
    return normal_form(p, GROUPS)


@settings(max_examples=N)
@given(polys(NF_VARS, 5, 4))
def test_normal_form_is_idempotent(p):
    q = _nf(p)
    assert _nf(q) == q
    assert all(e < 2 for m in q.terms for v, e in m if v in ("e", "v"))


@settings(max_examples=N)
@given(polys(NF_VARS, 4, 3), polys(NF_VARS, 4, 3))
def test_normal_form_is_a_ring_map(p, q):
    assert _nf(p + q) == _nf(p) + _nf(q)
    assert _nf(p * q) == _nf(_nf(p) * _nf(q))


@settings(max_examples=N)
@given(polys(NF_VARS, 4, 4), st.integers(0, 10_000))
def test_normal_form_agrees_with_p_on_the_variety(p, seed):
    from csl.exterior import Chart
    ch = Chart(coords=("a", "b", "e"), consts=("u", "v", "t"), relations=(("a", "b", "e"), ("u", "v")))
    for pt in domain_points(ch, NF_VARS, 3, seed):
        pt = {**{v: Fraction(0) for v in NF_VARS}, **pt}
        assert p.evaluate(pt) == _nf(p).evaluate(pt)


def _matrix(draw_polys, n):
    return [[draw_polys[i * n + j] for j in range(n)] for i in range(n)]


@settings(max_examples=N)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(polys(["x", "y"], 3, 2), min_size=n * n + n, max_size=n * n + n))))
def test_bareiss_solution_substitutes_back(data):
    from csl.algebra import SingularSystem
    n, ps = data
    M = _matrix(ps, n)
    for i in range(n):
        M[i][i] = M[i][i] + 7  # keeps most draws nonsingular
    b = ps[n * n:]
    try:
        y, D = bareiss(M, b)
    except SingularSystem:
        return
    assert D
    for i in range(n):
        assert sum((M[i][j] * y[j] for j in range(n)), Poly()) == b[i] * D


@settings(max_examples=N)
@given(st.integers(1, 5), st.integers(1, 5), st.randoms(use_true_random=False))
def test_solve_rational_substitutes_back(m, n, rnd):
    A = [{j: Fraction(rnd.randint(-3, 3)) for j in range(n) if rnd.random() < 0.7} for _ in range(m)]
    x0 = [Fraction(rnd.randint(-4, 4), rnd.randint(1, 3)) for _ in range(n)]
    b = [sum(c * x0[j] for j, c in row.items()) for row in A]
    x = solve_rational(A, b, n)
    assert x is not None
    for row, bi in zip(A, b):
        assert sum(c * x[j] for j, c in row.items()) == bi
    # an inconsistent right-hand side is rejected
    if m >= 1:
        A2 = A + [dict(A[0])]
        b2 = b + [b[0] + 1]
        assert solve_rational(A2, b2, n) is None


@settings(max_examples=N)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6).filter(any),
       small_rationals, st.integers(1, 6))
def test_sturm_agrees_with_dense_sampling(coeffs, lo, span):
    p = [Fraction(c) for c in coeffs]
    hi = lo + span
    res = sturm_sign_on_interval(p, lo, hi)
    xs = [lo + (hi - lo) * Fraction(i, 400) for i in range(401)]
    vals = [ev(p, x) for x in xs]
    if res.verdict is Verdict.STRICTLY_POSITIVE:
        assert all(v > 0 for v in vals)
    elif res.verdict is Verdict.STRICTLY_NEGATIVE:
        assert all(v < 0 for v in vals)
    else:
        a, b = res.witness
        assert lo <= a <= b <= hi
        sq = list(res.certificate_poly)
        assert (a == b and ev(p, a) == 0) or ev(sq, a) * ev(sq, b) < 0
    if any(v == 0 for v in vals) or any(u * v < 0 for u, v in zip(vals, vals[1:])):
        assert res.verdict is Verdict.HAS_ZERO
