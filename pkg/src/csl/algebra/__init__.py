"""Exact arithmetic substrate: polynomials, relation normal forms, linear
solving and Sturm sign analysis."""
from .linear import PolyFraction, SingularSystem, bareiss, rational_matrix_is_psd, reduce_fraction, solve_linear, solve_rational
from .poly import ONE, ZERO, Poly, as_rational, var, variables
from .relations import RelationGroup, UndeclaredVariable, check_disjoint, normal_form
from .sturm import SturmResult, Verdict, ZeroPolynomial, sturm_sign_on_interval

__all__ = [
    "ONE", "ZERO", "Poly", "PolyFraction", "RelationGroup", "SingularSystem", "SturmResult",
    "UndeclaredVariable", "Verdict", "ZeroPolynomial", "as_rational", "bareiss", "check_disjoint",
    "normal_form", "rational_matrix_is_psd", "reduce_fraction", "solve_linear", "solve_rational",
    "sturm_sign_on_interval", "var", "variables",
]
