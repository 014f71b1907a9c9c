"""Reeb fields, volume coefficients and exact nonvanishing certificates."""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import (
    ONE, ZERO, Poly, RelationGroup, SingularSystem, Verdict, as_rational, bareiss,
    rational_matrix_is_psd, solve_rational, sturm_sign_on_interval,
)
from .algebra.linear import _monomial_gcd
from .exterior import (
    Chart, ChartError, DiffForm, VectorField, contract_cleared, ext_d, form_eq, pair, wedge, wpow,
)


class NotContact(ValueError):
    """The Reeb system is singular: the form is not contact (anywhere on a dense set)."""


class NotContactOnSphere(NotContact):
    pass


class SelfCheckFailed(AssertionError):
    """A computed object failed its own defining equations; this is a bug."""


# -- Reeb fields ----------------------------------------------------------------

def _one_form_coeffs(omega: DiffForm) -> List[Poly]:
    if omega.degrees() - {1}:
        raise ValueError("a 1-form is required")
    return omega.as_vector()


def _dw_matrix(omega: DiffForm) -> List[List[Poly]]:
    n = omega.chart.dimension
    W = [[ZERO] * n for _ in range(n)]
    for key, p in ext_d(omega).comps.items():
        i, j = key
        W[i][j] = p
        W[j][i] = -p
    return W


def _field_from_solution(chart: Chart, y: Sequence[Poly], D: Poly) -> VectorField:
    ys = [chart.nf(v) for v in y]
    D = chart.nf(D)
    if not D.is_constant():
        try:
            ys = [v.divexact(D) for v in ys]
            D = ONE
        except ValueError:
            g = _monomial_gcd([p for p in ys if p] + [D])
            if g:
                gp = Poly._raw({g: 1})
                ys = [v.divexact(gp) for v in ys]
                D = D.divexact(gp)
    return VectorField(chart, dict(enumerate(ys)), D)


def check_reeb(omega: DiffForm, R: VectorField) -> bool:
    """``omega(R) == 1`` and ``R ⌟ d omega == 0`` modulo the relations
    (on the host sphere in sphere mode, with R tangent)."""
    chart = omega.chart
    if chart.nf(pair(omega, R) - R.den):
        return False
    inner = contract_cleared(R, ext_d(omega))
    if chart.sphere:
        return not R.tangency() and form_eq(inner, chart.zero()).equal
    return inner.is_zero()


def _reeb_ambient(omega: DiffForm) -> VectorField:
    chart = omega.chart
    if chart.rule_groups:
        raise ChartError("ambient Reeb computation needs a chart without coordinate relations; "
                         "declare the chart as a sphere")
    n = chart.dimension
    w = _one_form_coeffs(omega)
    W = _dw_matrix(omega)
    # unknowns (R_0..R_{n-1}, nu): R ⌟ dw = nu * w and w(R) = 1; nu vanishes for contact forms
    M = [[W[i][j] for i in range(n)] + [-w[j]] for j in range(n)]
    M.append(list(w) + [ZERO])
    b = [ZERO] * n + [ONE]
    try:
        y, D = bareiss(M, b)
    except SingularSystem as e:
        raise NotContact(f"Reeb system is singular (determinant {e.determinant})") from None
    if not chart.nf(D):
        raise NotContact("Reeb system determinant vanishes modulo the relations")
    return _field_from_solution(chart, y[:n], D)


def _nf_monomials(chart: Chart, names: Sequence[str], degree: int) -> List[Poly]:
    pivots = {g.pivot for g in chart.relations}
    out = [ONE]
    for d in range(1, degree + 1):
        for combo in combinations_with_replacement(sorted(names), d):
            if any(combo.count(p) > 1 for p in pivots):
                continue
            m = ONE
            for v in combo:
                m = m * Poly.var(v)
            out.append(m)
    return out


def _reeb_sphere_ansatz(omega: DiffForm, max_degree: int) -> Optional[VectorField]:
    chart = omega.chart
    host = chart.host
    n = chart.dimension
    xs = [Poly.var(v) for v in host.variables]
    w = _one_form_coeffs(omega)
    W = _dw_matrix(omega)
    names = sorted(set(host.variables) | set(omega.variables()))
    for deg in range(0, max_degree + 1):
        basis = _nf_monomials(chart, names, deg)
        nb = len(basis)
        nvars = n * nb + nb
        rows: Dict[tuple, Dict[int, Fraction]] = {}

        def add(eq, poly, col):
            for mono, c in chart.nf(poly).terms.items():
                row = rows.setdefault((eq, mono), {})
                row[col] = row.get(col, 0) + c

        for i in range(n):
            for k, m in enumerate(basis):
                col = i * nb + k
                add("w", m * w[i], col)
                add("x", m * xs[i], col)
                for j in range(n):
                    if W[i][j]:
                        add(("d", j), m * W[i][j], col)
        for k, m in enumerate(basis):
            for j in range(n):
                add(("d", j), -(m * xs[j]), n * nb + k)
        keys = list(rows)
        if ("w", ()) not in rows:
            keys.append(("w", ()))
        sol = solve_rational([rows.get(k, {}) for k in keys],
                             [1 if k == ("w", ()) else 0 for k in keys], nvars)
        if sol is None:
            continue
        coeffs = {}
        for i in range(n):
            p = ZERO
            for k, m in enumerate(basis):
                if sol[i * nb + k]:
                    p = p + m.scale(sol[i * nb + k])
            coeffs[i] = p
        return VectorField(chart, coeffs)
    return None


def _reeb_sphere_bordered(omega: DiffForm) -> VectorField:
    chart = omega.chart
    n = chart.dimension
    xs = [Poly.var(v) for v in chart.host.variables]
    w = _one_form_coeffs(omega)
    W = _dw_matrix(omega)
    # unknowns (R, mu, nu): R ⌟ dw - mu*x - nu*w = 0, <x, R> = 0, w(R) = 1
    M = [[W[i][j] for i in range(n)] + [-xs[j], -w[j]] for j in range(n)]
    M.append(list(xs) + [ZERO, ZERO])
    M.append(list(w) + [ZERO, ZERO])
    b = [ZERO] * (n + 1) + [ONE]
    try:
        y, D = bareiss(M, b)
    except SingularSystem:
        raise NotContactOnSphere("no tangent Reeb field: augmented system is singular") from None
    if not chart.nf(D):
        raise NotContactOnSphere("no tangent Reeb field: determinant vanishes on the sphere")
    return _field_from_solution(chart, y[:n], D)


def reeb_field(omega: DiffForm, *, self_check: bool = True) -> VectorField:
    """Reeb field of a 1-form: ``omega(R) = 1`` and ``R ⌟ d omega = 0``.

    In sphere mode the field is tangent to the host sphere and the second
    equation holds up to a multiple of ``sum x dx``.  The result is
    re-verified by substitution unless ``self_check`` is false.
    """
    chart = omega.chart
    _one_form_coeffs(omega)
    if chart.sphere:
        top = max((p.degree() for p in omega.comps.values()), default=0)
        R = _reeb_sphere_ansatz(omega, top + 1)
        if R is None:
            R = _reeb_sphere_bordered(omega)
    else:
        R = _reeb_ambient(omega)
    if self_check and not check_reeb(omega, R):
        raise SelfCheckFailed(f"computed Reeb field {R} fails its defining equations")
    return R


# -- volume coefficients ----------------------------------------------------------

@dataclass(frozen=True)
class VolumeReport:
    coefficient: Poly
    reference_volume: Tuple[str, ...]
    sphere: bool = False

    def to_dict(self) -> dict:
        from .dsl import format_poly
        return {"coefficient": format_poly(self.coefficient),
                "reference_volume": "^".join(self.reference_volume),
                "sphere_mode": self.sphere}


def sphere_normal(chart: Chart) -> DiffForm:
    """``iota = sum x dx`` over the host sphere."""
    out = chart.zero()
    for v in chart.host.variables:
        out = out + chart.d(v) * Poly.var(v)
    return out


def top_form(omega: DiffForm) -> DiffForm:
    """``omega ^ (d omega)^n`` (ambient) or ``omega ^ (d omega)^n ^ iota`` (sphere)."""
    chart = omega.chart
    if omega.degrees() - {1}:
        raise ValueError("volume_coefficient needs a 1-form")
    N = chart.dimension
    if chart.sphere:
        if N % 2:
            raise ValueError(f"host sphere S^{N - 1} is even-dimensional")
        n = (N - 2) // 2
        return wedge(wedge(omega, wpow(ext_d(omega), n)), sphere_normal(chart))
    if N % 2 == 0:
        raise ValueError(f"chart has even dimension {N}; contact forms live in odd dimension")
    return wedge(omega, wpow(ext_d(omega), (N - 1) // 2))


def volume_coefficient(omega: DiffForm) -> VolumeReport:
    chart = omega.chart
    top = top_form(omega)
    coeff = top.comps.get(tuple(range(chart.dimension)), ZERO)
    return VolumeReport(coeff, chart.generators, chart.sphere)


# -- certificates -------------------------------------------------------------------

class Status(enum.Enum):
    CERTIFIED_CONSTANT = "CertifiedConstant"
    CERTIFIED_SIGN = "CertifiedSign"
    CONDITIONAL = "Conditional"
    REFUTED = "Refuted"
    NUMERIC_UNREFUTED = "NumericUnrefuted"


@dataclass(frozen=True)
class BoundHint:
    """Claim ``lo <= auxiliary <= hi`` on the relation variety."""
    auxiliary: Poly
    lo: Fraction
    hi: Fraction
    assumed: bool = False
    name: str = "u"

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(as_rational(self.lo)))
        object.__setattr__(self, "hi", Fraction(as_rational(self.hi)))
        if not self.lo < self.hi:
            raise ValueError("hint range needs lo < hi")


def _frac_str(x) -> str:
    return str(Fraction(x))


@dataclass(frozen=True)
class Certificate:
    status: Status
    value: Optional[Fraction] = None
    sign: int = 0
    method: str = ""
    data: Mapping[str, object] = field(default_factory=dict)
    witness: Optional[Mapping[str, object]] = None
    samples: int = 0
    min_abs: Optional[Fraction] = None
    trace: Tuple[str, ...] = ()

    @property
    def certified(self) -> bool:
        return self.status in (Status.CERTIFIED_CONSTANT, Status.CERTIFIED_SIGN)

    @property
    def refuted(self) -> bool:
        return self.status is Status.REFUTED

    @property
    def exit_code(self) -> int:
        if self.certified:
            return 0
        return 1 if self.refuted else 2

    def to_dict(self) -> dict:
        out = {"status": self.status.value, "method": self.method, "trace": list(self.trace)}
        if self.value is not None:
            out["value"] = _frac_str(self.value)
        if self.sign:
            out["sign"] = self.sign
        if self.data:
            out["data"] = _jsonable(self.data)
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.status is Status.NUMERIC_UNREFUTED:
            out["samples"] = self.samples
            out["min_abs"] = _frac_str(self.min_abs) if self.min_abs is not None else None
        return out


def _jsonable(x):
    if isinstance(x, Mapping):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return _frac_str(x)
    if isinstance(x, Poly):
        from .dsl import format_poly
        return format_poly(x)
    return x


def verify_hint(hint: BoundHint, chart: Chart) -> Tuple[bool, str]:
    """Check ``|u| <= b`` with ``[-b, b]`` inside the hint range by Cauchy–Schwarz
    over one or two unit groups."""
    u = chart.nf(hint.auxiliary)
    b = min(-hint.lo, hint.hi)
    if b < 0:
        return False, "range does not contain a symmetric interval around 0"
    if not u:
        return True, "auxiliary is zero"
    owner = {}
    for gi, g in enumerate(chart.relations):
        for v in g.variables:
            owner[v] = gi
    if any(v not in owner for v in u.variables()):
        return False, "auxiliary uses variables outside the unit groups"
    groups = sorted({owner[v] for v in u.variables()})
    if len(groups) == 1:
        g = chart.relations[groups[0]]
        vec = []
        for mono, c in u.terms.items():
            if len(mono) != 1 or mono[0][1] != 1:
                return False, "auxiliary is not linear in its unit group"
            vec.append(Fraction(c))
        ok = sum(c * c for c in vec) <= b * b
        return ok, f"|u| <= |a| by Cauchy-Schwarz, |a|^2 = {sum(c * c for c in vec)} vs b^2 = {b * b}"
    if len(groups) == 2:
        g1, g2 = (chart.relations[i] for i in groups)
        B = [[Fraction(0)] * len(g2.variables) for _ in g1.variables]
        for mono, c in u.terms.items():
            vs = dict(mono)
            if len(mono) != 2 or any(e != 1 for e in vs.values()):
                return False, "auxiliary is not bilinear in two unit groups"
            a = [v for v in vs if v in g1.variables]
            bb = [v for v in vs if v in g2.variables]
            if len(a) != 1 or len(bb) != 1:
                return False, "auxiliary is not bilinear in two unit groups"
            B[g1.variables.index(a[0])][g2.variables.index(bb[0])] += c
        m = len(g2.variables)
        S = [[(b * b if i == j else 0) - sum(B[r][i] * B[r][j] for r in range(len(B))) for j in range(m)]
             for i in range(m)]
        ok = rational_matrix_is_psd(S)
        return ok, "|x^T B y| <= ||B|| by Cauchy-Schwarz; b^2 I - B^T B " + ("is" if ok else "is not") + " PSD"
    return False, "auxiliary spans more than two unit groups"


def univariate_representation(c: Poly, u: Poly, chart: Chart) -> Optional[List[Fraction]]:
    """Coefficients ``g`` with ``c == sum g_i u^i`` modulo the relations, if any."""
    u = chart.nf(u)
    if u.is_constant():
        return None
    top = max(c.degree(), 0) + 2
    powers = [ONE]
    for _ in range(top):
        powers.append(chart.nf(powers[-1] * u))
    rows: Dict[tuple, Dict[int, Fraction]] = {}
    for i, p in enumerate(powers):
        for mono, coef in p.terms.items():
            rows.setdefault(mono, {})[i] = coef
    for mono in c.terms:
        rows.setdefault(mono, {})
    keys = list(rows)
    sol = solve_rational([rows[k] for k in keys], [c.terms.get(k, 0) for k in keys], len(powers))
    if sol is None:
        return None
    while len(sol) > 1 and sol[-1] == 0:
        sol.pop()
    return sol


# -- sampling -------------------------------------------------------------------------

def _group_point(k: int, rng: random.Random) -> List[Fraction]:
    if k == 1:
        return [Fraction(rng.choice((1, -1)))]
    t = [Fraction(rng.randint(-12, 12), rng.randint(1, 6)) for _ in range(k - 1)]
    s = sum(x * x for x in t)
    pt = [2 * x / (1 + s) for x in t] + [(1 - s) / (1 + s)]
    rng.shuffle(pt)
    return [x * rng.choice((1, -1)) for x in pt]


def _axis_points(k: int) -> List[List[Fraction]]:
    pts = []
    for i in range(k):
        for sgn in (1, -1):
            pts.append([Fraction(sgn if j == i else 0) for j in range(k)])
    return pts


def domain_points(chart: Chart, names: Sequence[str], count: int, seed: int = 0):
    """Deterministic exact points of the relation variety restricted to ``names``:
    first structured (axis/zero) points, then random rational ones."""
    rng = random.Random(seed)
    names = set(names)
    groups = [g for g in chart.relations if names & set(g.variables)]
    grouped = {v for g in groups for v in g.variables}
    free = sorted(names - grouped)
    structured = []
    axis = [_axis_points(len(g.variables)) for g in groups]
    for r in range(max((len(a) for a in axis), default=1)):
        pt = {}
        for g, a in zip(groups, axis):
            pt.update(zip(g.variables, a[r % len(a)]))
        for v in free:
            pt[v] = Fraction(0)
        structured.append(pt)
    out = structured[: max(count // 10, 1)] if count else []
    while len(out) < count:
        pt = {}
        for g in groups:
            pt.update(zip(g.variables, _group_point(len(g.variables), rng)))
        for v in free:
            pt[v] = Fraction(rng.randint(-16, 16), rng.randint(1, 8))
        out.append(pt)
    return out


def _connected(chart: Chart, names) -> bool:
    return all(len(g.variables) >= 2 for g in chart.relations if set(names) & set(g.variables))


def _point_dict(pt: Mapping[str, Fraction]) -> Dict[str, str]:
    return {k: _frac_str(v) for k, v in sorted(pt.items())}


def verify_witness(c: Poly, chart: Chart, witness: Mapping[str, object]) -> bool:
    """Independent re-check of a refutation witness (as produced by the ladder)."""
    kind = witness.get("kind")

    def load(pt):
        return {k: Fraction(v) for k, v in pt.items()}

    def valid(pt):
        return all(g.holds_at(pt) for g in chart.relations if set(g.variables) <= set(pt))

    if kind == "exact-zero":
        pt = load(witness["point"])
        return valid(pt) and set(c.variables()) <= set(pt) and c.evaluate(pt) == 0
    if kind == "sign-change":
        a, b = load(witness["point_a"]), load(witness["point_b"])
        if not (valid(a) and valid(b) and _connected(chart, c.variables())):
            return False
        va, vb = Fraction(c.evaluate(a)), Fraction(c.evaluate(b))
        return va * vb < 0
    return False


# -- the ladder -----------------------------------------------------------------------

def _all_in_unit_groups(c: Poly, chart: Chart) -> bool:
    grouped = {v for g in chart.relations for v in g.variables}
    return c.variables() <= grouped


def nonvanishing_certificate(c: Poly, chart: Chart, hints: Sequence[BoundHint] = (),
                             grid_size: int = 10_000, seed: int = 0) -> Certificate:
    """Decide whether ``c`` vanishes somewhere on the relation variety.

    Strategies, in order: nonzero constant; coefficient bound over unit
    groups; Sturm on a verified univariate bound hint; exact rational grid.
    """
    c = chart.nf(c)
    trace: List[str] = [f"coefficient has {len(c)} term(s), degree {c.degree()}"]
    if not c:
        names = sorted({v for g in chart.relations for v in g.variables})
        pt = domain_points(chart, names, 1, seed)[0]
        trace.append("coefficient reduces to 0: vanishes identically")
        return Certificate(Status.REFUTED, method="identically-zero",
                           witness={"kind": "exact-zero", "point": _point_dict(pt)}, trace=tuple(trace))
    if c.is_constant():
        v = Fraction(c.constant_term())
        trace.append(f"constant {v}")
        return Certificate(Status.CERTIFIED_CONSTANT, value=v, sign=1 if v > 0 else -1,
                           method="constant", trace=tuple(trace))
    if _all_in_unit_groups(c, chart):
        K = Fraction(c.constant_term())
        rest = sum(abs(Fraction(x)) for m, x in c.terms.items() if m)
        trace.append(f"coefficient bound: constant term {K}, sum of other |coefficients| = {rest}")
        if rest < abs(K):
            sign = 1 if K > 0 else -1
            return Certificate(Status.CERTIFIED_SIGN, sign=sign, method="coefficient-bound",
                               data={"constant": K, "bound": rest}, trace=tuple(trace))
    else:
        trace.append("coefficient bound skipped: variables outside unit groups")
    for h in hints:
        if h.assumed:
            ok, why = True, "assumed by the user"
        else:
            ok, why = verify_hint(h, chart)
        trace.append(f"hint {h.name} in [{h.lo}, {h.hi}]: {'accepted' if ok else 'rejected'} ({why})")
        if not ok:
            continue
        g = univariate_representation(c, h.auxiliary, chart)
        if g is None:
            trace.append(f"coefficient is not a polynomial in {h.name}")
            continue
        from .dsl import format_poly
        gpoly = sum((Poly.var(h.name) ** i * Poly.const(a) for i, a in enumerate(g) if a), ZERO)
        trace.append(f"coefficient = {format_poly(gpoly)} in {h.name}")
        res = sturm_sign_on_interval(g, h.lo, h.hi)
        data = {"hint": h.name, "auxiliary": h.auxiliary, "range": [h.lo, h.hi],
                "univariate": [Fraction(a) for a in g], "sturm": res.verdict.value}
        if res.verdict is Verdict.HAS_ZERO:
            trace.append(f"Sturm: root of the univariate form in [{res.witness[0]}, {res.witness[1]}]; "
                         "the hint range may exceed the image, continuing")
            continue
        trace.append(f"Sturm: {res.verdict.value} on [{h.lo}, {h.hi}]")
        status = Status.CONDITIONAL if h.assumed else Status.CERTIFIED_SIGN
        return Certificate(status, sign=res.sign, method="sturm-hint", data=data, trace=tuple(trace))
    return _grid(c, chart, grid_size, seed, trace)


def _grid(c: Poly, chart: Chart, grid_size: int, seed: int, trace: List[str]) -> Certificate:
    names = sorted(c.variables())
    pos = neg = None
    best = None
    n = 0
    for pt in domain_points(chart, names, grid_size, seed):
        n += 1
        v = Fraction(c.evaluate(pt))
        if v == 0:
            trace.append(f"exact zero at grid point {n}")
            return Certificate(Status.REFUTED, method="grid-exact-zero",
                               witness={"kind": "exact-zero", "point": _point_dict(pt)},
                               samples=n, trace=tuple(trace))
        if v > 0 and pos is None:
            pos = pt
        if v < 0 and neg is None:
            neg = pt
        if best is None or abs(v) < best:
            best = abs(v)
        if pos is not None and neg is not None and _connected(chart, names):
            trace.append(f"opposite signs on a connected domain after {n} points")
            return Certificate(Status.REFUTED, method="grid-sign-change",
                               witness={"kind": "sign-change", "point_a": _point_dict(pos),
                                        "point_b": _point_dict(neg)},
                               samples=n, trace=tuple(trace))
    trace.append(f"{n} exact grid points, no zero, min |value| = {best}")
    return Certificate(Status.NUMERIC_UNREFUTED, method="grid", samples=n, min_abs=best, trace=tuple(trace))
