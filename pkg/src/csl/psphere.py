"""Contact p-spheres: the lambda-family check, tautness, roundness, the
obstruction in dimensions 4n+1, and the dimension-7 identity systems."""
from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import ZERO, Poly, Verdict, sturm_sign_on_interval
from .algebra.sturm import cauchy_bound, ev
from .contact import (
    BoundHint, Certificate, Status, _group_point, _point_dict, domain_points, nonvanishing_certificate,
    reeb_field, sphere_normal, volume_coefficient,
)
from .exterior import (
    Chart, DiffForm, VectorField, contract_cleared, evaluate_on_frame, ext_d, field_eq, form_eq, pair,
    standard_frame, wedge, wpow,
)

WITNESS_WIDTH = Fraction(1, 2 ** 30)


class ConsistencyError(AssertionError):
    """Internal bookkeeping contradicted a structural fact (a bug, not a verdict)."""


@dataclass(frozen=True)
class PSphereSpec:
    chart: Chart
    generators: Tuple[DiffForm, ...]
    hints: Tuple[BoundHint, ...] = ()
    name: str = ""

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "hints", tuple(self.hints))
        if not gens:
            raise ValueError("a p-sphere needs at least one generator")
        for g in gens:
            if g.chart != self.chart:
                raise ValueError("all generators must live on the spec's chart")
            if g.degrees() - {1}:
                raise ValueError("generators must be 1-forms")

    @property
    def p(self) -> int:
        return len(self.generators) - 1

    @property
    def manifold_dimension(self) -> int:
        return self.chart.dimension - (1 if self.chart.sphere else 0)


@dataclass(frozen=True)
class LambdaExtension:
    base: Chart
    chart: Chart
    lambdas: Tuple[str, ...]
    generators: Tuple[DiffForm, ...]
    omega: DiffForm


def lambda_names(spec: PSphereSpec) -> Tuple[Tuple[str, ...], bool]:
    """Names for the coefficients; reuses an unused constant unit group of the
    right size declared on the chart (second value True in that case)."""
    ch = spec.chart
    k = len(spec.generators)
    used = set()
    for g in spec.generators:
        used |= g.variables()
    for grp in ch.relations:
        if (len(grp.variables) == k and all(ch.kind(v) == "const" for v in grp.variables)
                and not used & set(grp.variables)):
            return grp.variables, True
    taken = set(ch.variables) | set(ch.generators)
    prefix = "lam"
    while any(f"{prefix}{i}" in taken for i in range(1, k + 1)):
        prefix += "_"
    return tuple(f"{prefix}{i}" for i in range(1, k + 1)), False


def lambda_extension(spec: PSphereSpec) -> LambdaExtension:
    lams, reused = lambda_names(spec)
    ext = spec.chart if reused else spec.chart.extend(consts=lams, relations=[lams])
    gens = tuple(g.on(ext) for g in spec.generators)
    omega = ext.zero()
    for lam, g in zip(lams, gens):
        omega = omega + g * Poly.var(lam)
    return LambdaExtension(spec.chart, ext, lams, gens, omega)


def _lambda_degrees(c: Poly, lams) -> set:
    ls = set(lams)
    return {sum(e for v, e in m if v in ls) for m in c.terms}


def psphere_check(spec: PSphereSpec, hints: Optional[Sequence[BoundHint]] = None,
                  grid_size: int = 10_000, seed: int = 0) -> Certificate:
    """Is every member ``sum lam_i w_i`` (unit ``lam``) a contact form?"""
    ext = lambda_extension(spec)
    c = volume_coefficient(ext.omega).coefficient
    from .dsl import format_poly
    if spec.p >= 1 and c and all(d % 2 for d in _lambda_degrees(c, ext.lambdas)):
        cert = _antipodal_refutation(c, ext, seed)
    else:
        cert = nonvanishing_certificate(c, ext.chart, spec.hints if hints is None else hints, grid_size, seed)
    data = dict(cert.data)
    data["coefficient"] = format_poly(c)
    data["lambdas"] = list(ext.lambdas)
    return replace(cert, data=data)


def _circle_poly(cx: Poly, lams: Sequence[str]) -> Tuple[List[Fraction], int]:
    """``(1+t^2)^D * cx(lam(t))`` for ``lam(t) = ((1-t^2), 2t, 0, ...)/(1+t^2)``."""
    l1, l2 = lams[0], lams[1]
    D = max(_lambda_degrees(cx, lams))
    t = Poly.var("_t")
    one_m, two_t, one_p = 1 - t * t, t * 2, 1 + t * t
    h = ZERO
    for m, coef in cx.terms.items():
        e = dict(m)
        if any(e.get(v, 0) for v in lams[2:]):
            continue
        a, b = e.get(l1, 0), e.get(l2, 0)
        h = h + one_m ** a * two_t ** b * one_p ** (D - a - b) * Poly.const(coef)
    return [Fraction(x) for x in h.univariate_coeffs("_t")], D


def _lambda_point(lams, tau: Fraction) -> Dict[str, Fraction]:
    den = 1 + tau * tau
    pt = {v: Fraction(0) for v in lams}
    pt[lams[0]] = (1 - tau * tau) / den
    pt[lams[1]] = 2 * tau / den
    return pt


def _antipodal_refutation(c: Poly, ext: LambdaExtension, seed: int) -> Certificate:
    lams = ext.lambdas
    trace = ["coefficient is odd in the lambdas: value at -lam is minus the value at lam"]
    base_vars = sorted(c.variables() - set(lams))
    e1 = {v: Fraction(1 if i == 0 else 0) for i, v in enumerate(lams)}
    for x in domain_points(ext.chart, base_vars, 64, seed):
        cx = c.subs(x)
        v = Fraction(cx.evaluate(e1)) if not cx.variables() - set(lams) else None
        if v is None:
            continue
        if v == 0:
            pt = {**x, **e1}
            trace.append("exact zero at lam = e1")
            return Certificate(Status.REFUTED, method="lambda-parity",
                               witness={"kind": "exact-zero", "point": _point_dict(pt)}, trace=tuple(trace))
        h, D = _circle_poly(cx, lams)
        B = cauchy_bound(h)
        res = sturm_sign_on_interval(h, 0, B, width=WITNESS_WIDTH)
        if res.verdict is not Verdict.HAS_ZERO:
            raise ConsistencyError("odd lambda-polynomial without a zero on the half circle")
        lo, hi = res.witness
        trace.append(f"value {v} at lam = e1, {-v} at lam = -e1")
        trace.append(f"zero isolated on the lam1-lam2 circle: t in [{lo}, {hi}] with "
                     "lam = ((1-t^2), 2t)/(1+t^2)")
        if lo == hi:
            pt = {**x, **_lambda_point(lams, lo)}
            return Certificate(Status.REFUTED, method="lambda-parity",
                               witness={"kind": "exact-zero", "point": _point_dict(pt)}, trace=tuple(trace))
        return Certificate(Status.REFUTED, method="lambda-parity",
                           witness={"kind": "sign-change",
                                    "point_a": _point_dict({**x, **_lambda_point(lams, lo)}),
                                    "point_b": _point_dict({**x, **_lambda_point(lams, hi)}),
                                    "t_interval": [lo, hi]},
                           trace=tuple(trace))
    raise ConsistencyError("no base point assigns every non-lambda variable")


# -- tautness ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TautnessReport:
    lambda_coefficient: Poly
    taut: bool
    residual: Poly
    lambdas: Tuple[str, ...]
    cross_check: Optional[bool] = None

    def to_dict(self) -> dict:
        from .dsl import format_poly
        return {"taut": self.taut, "coefficient": format_poly(self.lambda_coefficient),
                "lambda_dependent_part": format_poly(self.residual), "cross_check": self.cross_check}


def _top_scalar(f: DiffForm) -> Poly:
    """Coefficient of a (manifold) top form: ambient, or after wedging with iota."""
    ch = f.chart
    if ch.sphere:
        f = wedge(f, sphere_normal(ch))
    return f.comps.get(tuple(range(ch.dimension)), ZERO)


def pairwise_taut_dim3(spec: PSphereSpec) -> bool:
    """In dimension 3: all ``w_i ^ dw_i`` agree and ``w_i ^ dw_j + w_j ^ dw_i = 0``."""
    ch = spec.chart
    gens = spec.generators
    d = [ext_d(g) for g in gens]
    vols = [_top_scalar(wedge(g, dg)) for g, dg in zip(gens, d)]
    if any(ch.nf(v - vols[0]) for v in vols[1:]):
        return False
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if ch.nf(_top_scalar(wedge(gens[i], d[j]) + wedge(gens[j], d[i]))):
                return False
    return True


def taut_check(spec: PSphereSpec) -> TautnessReport:
    """Taut iff the reduced volume coefficient of the generic member is lambda-free.

    Cross-checked against the pairwise 3-form identities in dimension 3 and
    against the four 7-form identities for pairs in dimension 7.
    """
    rep = _lambda_coefficient(spec)
    cross = None
    if spec.manifold_dimension == 3:
        cross = pairwise_taut_dim3(spec)
    elif spec.manifold_dimension == 7 and spec.p == 1:
        cross = taut7_check(spec, cross_validate=False).taut
    return replace(rep, cross_check=cross)


# -- roundness ----------------------------------------------------------------------------

@dataclass(frozen=True)
class RoundnessReport:
    condition_i: Mapping[Tuple[int, int], Poly]
    condition_ii: Mapping[Tuple[int, int], DiffForm]
    round: bool
    first_failure: Optional[Tuple[str, int, int]]
    reeb_fields: Tuple[VectorField, ...] = ()

    def to_dict(self) -> dict:
        from .dsl import format_form, format_poly
        return {
            "round": self.round,
            "first_failure": list(self.first_failure) if self.first_failure else None,
            "condition_i": {f"{i + 1},{j + 1}": format_poly(p) for (i, j), p in sorted(self.condition_i.items())},
            "condition_ii": {f"{i + 1},{j + 1}": format_form(f) for (i, j), f in sorted(self.condition_ii.items())},
            "reeb_fields": [str(R) for R in self.reeb_fields],
        }


def round_check(spec: PSphereSpec) -> RoundnessReport:
    """Pairwise roundness conditions on the generators' Reeb fields:
    (i) ``w_i(R_j) + w_j(R_i) = 0`` for i != j and
    (ii) ``R_i ⌟ dw_j + R_j ⌟ dw_i = 0`` for all i, j (i = j as a sanity check)."""
    ch = spec.chart
    gens = spec.generators
    R = [reeb_field(g) for g in gens]
    d = [ext_d(g) for g in gens]
    cond_i: Dict[Tuple[int, int], Poly] = {}
    cond_ii: Dict[Tuple[int, int], DiffForm] = {}
    first = None
    k = len(gens)
    for i in range(k):
        for j in range(i, k):
            if i != j:
                # w_i(R_j) + w_j(R_i), cleared of the fields' denominators
                r = ch.nf(pair(gens[i], R[j]) * R[i].den + pair(gens[j], R[i]) * R[j].den)
                cond_i[(i, j)] = r
                if r and first is None:
                    first = ("i", i + 1, j + 1)
            form = contract_cleared(R[i], d[j]) * R[j].den + contract_cleared(R[j], d[i]) * R[i].den
            eq = form_eq(form, ch.zero())
            cond_ii[(i, j)] = eq.cleared if eq.cleared is not None else eq.residue
            if not eq.equal:
                if i == j:
                    raise ConsistencyError(f"R_{i + 1} ⌟ dw_{i + 1} does not vanish on the manifold")
                if first is None:
                    first = ("ii", i + 1, j + 1)
    return RoundnessReport(cond_i, cond_ii, first is None, first, tuple(R))


def reeb_linearity(spec: PSphereSpec, lam: Sequence[Fraction]) -> bool:
    """``reeb(sum lam_i w_i) == sum lam_i reeb(w_i)`` exactly."""
    if len(lam) != len(spec.generators) or sum(Fraction(x) ** 2 for x in lam) != 1:
        raise ValueError("lam must be a unit vector with one entry per generator")
    omega = spec.chart.zero()
    combo = None
    for x, g in zip(lam, spec.generators):
        omega = omega + g * Fraction(x)
        term = reeb_field(g) * Fraction(x)
        combo = term if combo is None else combo + term
    return field_eq(reeb_field(omega), combo)


def rational_unit_vector(k: int, rng: random.Random) -> List[Fraction]:
    return _group_point(k, rng)


# -- Reeb independence --------------------------------------------------------------------

def reeb_independence_check(spec: PSphereSpec, grid_size: int = 2_000, seed: int = 0) -> Certificate:
    """Are the generators' Reeb fields linearly independent everywhere?
    Decided on the sum of squared 2x2 minors with the certificate ladder."""
    if spec.p != 1:
        raise ValueError("reeb_independence_check takes a pair of forms")
    ch = spec.chart
    R1, R2 = (reeb_field(g) for g in spec.generators)
    a, b = R1.as_list(), R2.as_list()
    n = ch.dimension
    S = ZERO
    for i in range(n):
        for j in range(i + 1, n):
            m = a[i] * b[j] - a[j] * b[i]
            if m:
                S = S + m * m
    S = ch.nf(S)
    cert = nonvanishing_certificate(S, ch, (), grid_size, seed)
    from .dsl import format_poly
    return replace(cert, data={**cert.data, "sum_of_squared_minors": format_poly(S)})


# -- obstruction in dimension 4n+1 ------------------------------------------------------------

@dataclass(frozen=True)
class ObstructionReport:
    point: Mapping[str, Fraction]
    frame: Tuple[Tuple[Fraction, ...], ...]
    circle_poly: Poly
    circle_vars: Tuple[str, str]
    degree: int
    parity: bool
    witness: Tuple[Fraction, Fraction]
    witness_kind: str
    univariate: Tuple[Fraction, ...] = ()

    def verify(self) -> bool:
        """Re-check the witness from the stored data alone."""
        c, s = self.circle_vars
        if self.witness_kind == "exact-zero":
            pc, ps = self.witness
            return self.circle_poly.evaluate({c: pc, s: ps}) == 0 and (pc, ps) != (0, 0)
        lo, hi = self.witness
        g = list(self.univariate)
        if lo == hi:
            return ev(g, lo) == 0
        return hi - lo <= WITNESS_WIDTH and ev(g, lo) * ev(g, hi) < 0

    def to_dict(self) -> dict:
        from .dsl import format_poly
        return {"point": _point_dict(self.point), "frame": [[str(x) for x in v] for v in self.frame],
                "circle_poly": format_poly(self.circle_poly), "circle_vars": list(self.circle_vars),
                "degree": self.degree, "parity_all_odd": self.parity, "witness_kind": self.witness_kind,
                "witness": [str(self.witness[0]), str(self.witness[1])],
                "univariate_in_t": [str(x) for x in self.univariate]}


def default_point(chart: Chart) -> Dict[str, Fraction]:
    zero = {v: Fraction(0) for v in chart.variables}
    if chart.satisfies_relations(zero):
        return zero
    pt = domain_points(chart, chart.variables, 1)[0]
    return {v: pt.get(v, Fraction(0)) for v in chart.variables}


def odd_dim_obstruction(spec: PSphereSpec, point: Optional[Mapping[str, object]] = None,
                        frame: Optional[Sequence[VectorField]] = None) -> ObstructionReport:
    """Evaluate ``sum lam_i lam_j lam_k (w_i ^ dw_j ^ dw_k ...)`` on a frame at a
    point, restrict to the circle ``lam = (c, s)`` and isolate a zero."""
    ch = spec.chart
    if spec.p != 1:
        raise ValueError("the obstruction takes a pair of forms")
    if ch.sphere:
        raise ValueError("the obstruction is evaluated on ambient charts")
    N = ch.dimension
    if N % 4 != 1:
        raise ValueError(f"chart dimension {N} is not 1 mod 4")
    point = {v: Fraction(x) for v, x in (point if point is not None else default_point(ch)).items()}
    if not ch.satisfies_relations({**{v: Fraction(0) for v in ch.variables}, **point}):
        raise ValueError("point violates the chart relations")
    frame = list(frame) if frame is not None else standard_frame(ch)
    if len(frame) != N:
        raise ValueError(f"frame needs {N} vectors")
    taken = set(ch.variables) | set(ch.generators)
    cname, sname = "c", "s"
    while cname in taken or sname in taken:
        cname, sname = cname + "_", sname + "_"
    ext = ch.extend(consts=(cname, sname))
    w1, w2 = (g.on(ext) for g in spec.generators)
    omega = w1 * Poly.var(cname) + w2 * Poly.var(sname)
    n = (N - 1) // 2
    top = wedge(omega, wpow(ext_d(omega), n))
    ext_frame = [VectorField(ext, V.coeffs, V.den) for V in frame]
    P = evaluate_on_frame(top, point, ext_frame)
    if P.variables() - {cname, sname}:
        raise ValueError(f"point leaves symbols unassigned: {sorted(P.variables() - {cname, sname})}")
    d = n + 1
    degs = {sum(e for _, e in m) for m in P.terms}
    if degs - {d}:
        raise ConsistencyError(f"circle polynomial is not homogeneous of degree {d}: degrees {sorted(degs)}")
    parity = all(x % 2 for x in degs)
    if not parity:
        raise ConsistencyError("even-degree monomial in the circle polynomial")
    frame_t = tuple(tuple(Fraction(V.component(i).constant_term()) for i in range(N)) for V in frame)
    # g(t) = P(1, t): the coefficient of c^(d-i) s^i goes to t^i
    g = [Fraction(0)] * (d + 1)
    for m, coef in P.terms.items():
        g[dict(m).get(sname, 0)] = Fraction(coef)
    if not P or g[d] == 0:
        return ObstructionReport(point, frame_t, P, (cname, sname), d, parity,
                                 (Fraction(0), Fraction(1)), "exact-zero", tuple(g))
    B = cauchy_bound(g)
    res = sturm_sign_on_interval(g, -B, B, width=WITNESS_WIDTH)
    if res.verdict is not Verdict.HAS_ZERO:
        raise ConsistencyError("odd-degree univariate polynomial without a real root")
    return ObstructionReport(point, frame_t, P, (cname, sname), d, parity, res.witness,
                             "t-interval", tuple(g))


# -- dimension 7 systems -----------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityReport:
    residues: Tuple[DiffForm, ...]
    holds: Tuple[bool, ...]
    cross_check: Optional[bool] = None

    @property
    def taut(self) -> bool:
        return all(self.holds)

    @property
    def all_hold(self) -> bool:
        return all(self.holds)

    def to_dict(self) -> dict:
        from .dsl import format_form
        return {"holds": list(self.holds), "residues": [format_form(r) for r in self.residues],
                "cross_check": self.cross_check}


def _pair7(spec: PSphereSpec):
    if spec.p != 1:
        raise ValueError("needs a pair of forms")
    if spec.manifold_dimension != 7:
        raise ValueError("needs a 7-dimensional manifold")
    w1, w2 = spec.generators
    return w1, w2, ext_d(w1), ext_d(w2)


def _vanishes(f: DiffForm) -> Tuple[bool, DiffForm]:
    ch = f.chart
    if ch.sphere:
        top = _top_scalar(f)
        return (not top), f.chart.scalar(top)
    eq = form_eq(f, ch.zero())
    return eq.equal, (eq.cleared if eq.cleared is not None else eq.residue)


def taut7_check(spec: PSphereSpec, cross_validate: bool = True) -> IdentityReport:
    """The four 7-form identities expressing tautness of a pair in dimension 7."""
    w1, w2, d1, d2 = _pair7(spec)
    d1_2, d2_2 = wpow(d1, 2), wpow(d2, 2)
    d1_3, d2_3 = wedge(d1_2, d1), wedge(d2_2, d2)
    eqs = [
        wedge(w1, d1_3) - wedge(w2, d2_3),
        wedge(w2, wedge(d2, d1_2)) * 3 + wedge(w1, wedge(d1, d2_2)) * 3 - wedge(w1, d1_3) * 2,
        wedge(w1, d2_3) + wedge(w2, wedge(d1, d2_2)) * 3,
        wedge(w2, d1_3) + wedge(w1, wedge(d2, d1_2)) * 3,
    ]
    results = [_vanishes(e) for e in eqs]
    cross = None
    if cross_validate:
        cross = _lambda_coefficient(spec).taut
    return IdentityReport(tuple(r for _, r in results), tuple(ok for ok, _ in results), cross)


def _lambda_coefficient(spec: PSphereSpec) -> TautnessReport:
    ext = lambda_extension(spec)
    c = volume_coefficient(ext.omega).coefficient
    lams = set(ext.lambdas)
    residual = Poly._raw({m: x for m, x in c.terms.items() if any(v in lams for v, _ in m)})
    return TautnessReport(c, not residual, residual, ext.lambdas)


def roundtaut7_necessary(spec: PSphereSpec) -> IdentityReport:
    """The two 6-form identities necessary for a taut and round pair in dimension 7."""
    w1, w2, d1, d2 = _pair7(spec)
    d1_2, d2_2 = wpow(d1, 2), wpow(d2, 2)
    eqs = [wedge(d1_2, d1) - wedge(d1, d2_2) * 3, wedge(d2_2, d2) - wedge(d2, d1_2) * 3]
    results = []
    for e in eqs:
        eq = form_eq(e, e.chart.zero())
        results.append((eq.equal, eq.cleared if eq.cleared is not None else eq.residue))
    return IdentityReport(tuple(r for _, r in results), tuple(ok for ok, _ in results))
