from fractions import Fraction
import json
import random

import numpy as np
import pytest
import sympy as sp

from csl.algebra import Poly
from csl.constructions import (
    CATALOG_NAMES, ConstructionError, HurwitzRadonFamily, NotFound, bundle_volume_formula,
    bundle_volume_formula_as_printed, entry, example_catalog, expr3_reduction_verify, family_check,
    hurwitz_radon_family, invariant_nondegeneracy_scan, lemma2_verify, matrix_contact_sphere, relation_check, rho,
    t3_circle, torus_bundle_circle,
)
from csl.contact import Status
from csl.exterior import form_eq, wedge, ext_d
from csl.psphere import lambda_extension, psphere_check

from oracles import random_sphere_point, top_coefficient


@pytest.mark.parametrize("n,expected", [(1, 0), (2, 1), (4, 3), (6, 1), (8, 7), (12, 3), (16, 8), (24, 7),
                                        (32, 9), (64, 11), (256, 16)])
def test_rho_table(n, expected):
    assert rho(n) == expected


@pytest.mark.parametrize("m", [2, 4, 6, 8, 12, 16, 24, 32])
def test_families_pass_the_exact_check_and_a_float_check(m):
    fam = hurwitz_radon_family(m)
    assert len(fam.matrices) == rho(m)
    assert family_check(m, fam.matrices).ok
    A = [np.array(M, dtype=float) for M in fam.matrices]
    eye = np.eye(m)
    for i, a in enumerate(A):
        assert np.allclose(a.T, -a) and np.allclose(a @ a, -eye)
        for b in A[i + 1:]:
            assert np.allclose(a @ b + b @ a, 0)


def test_family_json_round_trip_and_validation():
    fam = hurwitz_radon_family(8)
    data = json.loads(fam.to_json())
    assert data["m"] == 8 and len(data["matrices"]) == 7 and all(len(f) == 64 for f in data["matrices"])
    assert HurwitzRadonFamily.from_json(fam.to_json()) == fam
    with pytest.raises(ValueError):
        HurwitzRadonFamily.from_json(json.dumps({"m": 2, "matrices": [[0, 1, 1]]}))
    with pytest.raises(ConstructionError):
        HurwitzRadonFamily(2, (((0, 1), (1, 0)),))
    assert not family_check(2, [((1, 0), (0, 1))]).ok


def test_odd_sizes_are_rejected():
    with pytest.raises(ValueError):
        hurwitz_radon_family(5)


def test_relation_level_identities_for_sixteen():
    rc = relation_check(hurwitz_radon_family(16))
    assert rc.ok and rc.failures == ()


@pytest.mark.parametrize("m,value", [(4, -2), (8, 48)])
def test_matrix_spheres_have_constant_volume(m, value):
    fam = hurwitz_radon_family(m)
    cert = psphere_check(matrix_contact_sphere(fam))
    assert cert.status is Status.CERTIFIED_CONSTANT and cert.value == value
    # float oracle at a random unit combination and a random sphere point
    rng = np.random.default_rng(m)
    syms = sp.symbols(f"x1:{m + 1}")
    lam = rng.normal(size=len(fam.matrices))
    lam /= np.linalg.norm(lam)
    M = sum(l * np.array(a, dtype=float) for l, a in zip(lam, fam.matrices))
    exprs = [sum(M[r, s] * syms[s] for s in range(m)) for r in range(m)]
    assert top_coefficient(exprs, syms, random_sphere_point(rng, m), sphere=True) == pytest.approx(value)


def test_torus_bundle_parameters_are_validated():
    with pytest.raises(ValueError):
        torus_bundle_circle(-1, 0)
    with pytest.raises(ValueError):
        torus_bundle_circle(1, 1)
    torus_bundle_circle(0, 2)


@pytest.mark.parametrize("f,k", [(-1, 1), (-2, 3), (1, -1), (0, 5)])
def test_torus_bundle_reduced_coefficient(f, k):
    cert = psphere_check(torus_bundle_circle(f, k))
    assert cert.certified
    if "univariate" in cert.data:
        expected = bundle_volume_formula(f, k)
        assert cert.data["univariate"] == [Fraction(c) for c in expected.univariate_coeffs("u")]
        assert expected != bundle_volume_formula_as_printed(f, k)
    else:
        assert cert.value == bundle_volume_formula(f, k).constant_term()


def test_torus_bundle_wedge_before_substituting_the_curvature():
    # w ^ dw = -k dth1^dth2^alpha + k^2 u^2 alpha ^ d(alpha)
    f, k = Fraction(-2), Fraction(3)
    ext = lambda_extension(torus_bundle_circle(f, k))
    ch = ext.chart
    u = Poly.var("lam1") * Poly.var("s1") + Poly.var("lam2") * Poly.var("c1")
    alpha = ch.gen("alpha")
    lhs = wedge(ext.omega, ext_d(ext.omega))
    rhs = wedge(wedge(ch.gen("dth1"), ch.gen("dth2")), alpha) * (-k) + wedge(alpha, ext_d(alpha)) * (u * u * k * k)
    assert form_eq(lhs, rhs)


def test_circle_bundle_identity_over_the_sphere():
    assert lemma2_verify().equal
    assert lemma2_verify(lam=(1, 0, 0)).equal
    assert lemma2_verify(lam=(Fraction(3, 5), 0, Fraction(4, 5))).equal
    res = lemma2_verify(mutate=True)
    assert not res.equal and not res.cleared.is_zero()


def test_reduction_to_the_base_volume():
    assert expr3_reduction_verify().equal
    assert expr3_reduction_verify(f=0).equal
    assert expr3_reduction_verify(f=Fraction(-7, 2)).equal
    assert not expr3_reduction_verify(omit_c=True).equal


def test_nondegeneracy_scan():
    ch = t3_circle(1).chart
    s, c = Poly.var("s"), Poly.var("c")
    ok = invariant_nondegeneracy_scan([s, c], ch, 50)
    assert not ok.refuted and ok.minimum >= 1
    bad = invariant_nondegeneracy_scan([s, s], ch, 50)
    assert bad.refuted and bad.minimum == 0 and sum(bad.lam) == 0
    with pytest.raises(ValueError):
        invariant_nondegeneracy_scan([], ch)


def test_catalog_lookup():
    names = [e.name for e in example_catalog()]
    assert names == list(CATALOG_NAMES)
    assert entry("t3-circle(7)").spec.name == "t3-circle(7)"
    assert entry("t2-bundle-circle(-1/2,2)").expectation("taut").value is False
    for bad in ("nope", "t3-circle(0)", "t2-bundle-circle(1,1)", "hr-sphere(6)", "s3-hat(2)"):
        with pytest.raises(NotFound):
            entry(bad)
