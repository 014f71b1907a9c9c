"""Concrete contact forms and families: Hurwitz–Radon matrix spheres, torus
examples, circle-bundle identities, and the example catalog."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import ZERO, Poly
from .contact import BoundHint, domain_points
from .exterior import (
    AbstractGen, Chart, DiffForm, FormEquality, FuncVar, _sort_sign, ext_d, form_eq, wedge,
)
from .psphere import PSphereSpec, rational_unit_vector

Matrix = Tuple[Tuple[int, ...], ...]


class NotFound(KeyError):
    pass


class ConstructionError(AssertionError):
    pass


# -- Adams' count, in the convention used for these families ----------------------------

def rho(n: int) -> int:
    """``2^c + 8d - 1`` for ``n = odd * 2^(c + 4d)``, ``0 <= c <= 3``."""
    if n < 1:
        raise ValueError("rho needs a positive integer")
    k = 0
    while n % 2 == 0:
        n //= 2
        k += 1
    d, c = divmod(k, 4)
    return 2 ** c + 8 * d - 1


# -- integer matrices ------------------------------------------------------------------------

def _mat(rows) -> Matrix:
    return tuple(tuple(int(x) for x in r) for r in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def matmul(A: Matrix, B: Matrix) -> Matrix:
    Bt = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A))


def kron(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a * b for a in ra for b in rb) for ra in A for rb in B)


def _scale(A: Matrix, c: int) -> Matrix:
    return tuple(tuple(c * x for x in r) for r in A)


def _add(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(A, B))


def _quat_mul(a, b):
    a1, a2, a3, a4 = a
    b1, b2, b3, b4 = b
    return (a1 * b1 - a2 * b2 - a3 * b3 - a4 * b4,
            a1 * b2 + a2 * b1 + a3 * b4 - a4 * b3,
            a1 * b3 - a2 * b4 + a3 * b1 + a4 * b2,
            a1 * b4 + a2 * b3 - a3 * b2 + a4 * b1)


def _quat_conj(a):
    return (a[0], -a[1], -a[2], -a[3])


def _oct_mul(x, y):
    # Cayley–Dickson: (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))
    a, b, c, d = x[:4], x[4:], y[:4], y[4:]
    left = tuple(p - q for p, q in zip(_quat_mul(a, c), _quat_mul(_quat_conj(d), b)))
    right = tuple(p + q for p, q in zip(_quat_mul(d, a), _quat_mul(b, _quat_conj(c))))
    return left + right


def _left_mult(mul, unit, n) -> Matrix:
    cols = []
    for j in range(n):
        e = tuple(1 if i == j else 0 for i in range(n))
        cols.append(mul(unit, e))
    return transpose(_mat(cols))


def _units(n):
    return [tuple(1 if i == j else 0 for i in range(n)) for j in range(1, n)]


J2: Matrix = ((0, -1), (1, 0))
SIGMA_X: Matrix = ((0, 1), (1, 0))
SIGMA_Z: Matrix = ((1, 0), (0, -1))


@lru_cache(maxsize=None)
def _base_family(c: int) -> Tuple[Matrix, ...]:
    if c == 0:
        return ()
    if c == 1:
        return (J2,)
    if c == 2:
        return tuple(_left_mult(_quat_mul, u, 4) for u in _units(4))
    if c == 3:
        return tuple(_left_mult(_oct_mul, u, 8) for u in _units(8))
    raise ValueError(c)


@lru_cache(maxsize=None)
def _period_block() -> Tuple[Tuple[Matrix, ...], Matrix]:
    """Eight anticommuting complex structures on R^16 and a symmetric
    involution anticommuting with all of them."""
    P = _base_family(3)
    D = [kron(p, SIGMA_Z) for p in P] + [kron(identity(8), J2)]
    return tuple(D), kron(identity(8), SIGMA_X)


@dataclass(frozen=True)
class FamilyCheck:
    ok: bool
    failures: Tuple[str, ...] = ()


def family_check(m: int, matrices: Sequence[Matrix]) -> FamilyCheck:
    """Exact check of antisymmetry, orthogonality, ``A^2 = -I`` and pairwise anticommutation."""
    I = identity(m)
    minus_I = _scale(I, -1)
    zero = _scale(I, 0)
    fails = []
    for i, A in enumerate(matrices):
        if len(A) != m or any(len(r) != m for r in A):
            fails.append(f"A{i + 1} is not {m}x{m}")
            continue
        if transpose(A) != _scale(A, -1):
            fails.append(f"A{i + 1} is not antisymmetric")
        if matmul(transpose(A), A) != I:
            fails.append(f"A{i + 1} is not orthogonal")
        if matmul(A, A) != minus_I:
            fails.append(f"A{i + 1}^2 != -I")
    for i in range(len(matrices)):
        for j in range(i + 1, len(matrices)):
            A, B = matrices[i], matrices[j]
            if _add(matmul(A, B), matmul(B, A)) != zero:
                fails.append(f"A{i + 1} and A{j + 1} do not anticommute")
    return FamilyCheck(not fails, tuple(fails))


@dataclass(frozen=True)
class HurwitzRadonFamily:
    m: int
    matrices: Tuple[Matrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "matrices", tuple(_mat(A) for A in self.matrices))
        res = family_check(self.m, self.matrices)
        if not res.ok:
            raise ConstructionError("; ".join(res.failures))

    def to_json(self) -> str:
        return json.dumps({"m": self.m, "matrices": [[x for row in A for x in row] for A in self.matrices]})

    @classmethod
    def from_json(cls, text: str) -> "HurwitzRadonFamily":
        data = json.loads(text)
        m = int(data["m"])
        mats = []
        for flat in data["matrices"]:
            if len(flat) != m * m:
                raise ValueError(f"matrix with {len(flat)} entries, expected {m * m}")
            mats.append(tuple(tuple(flat[r * m:(r + 1) * m]) for r in range(m)))
        return cls(m, tuple(mats))


@lru_cache(maxsize=None)
def hurwitz_radon_family(m: int) -> HurwitzRadonFamily:
    """``rho(m)`` anticommuting orthogonal complex structures on ``R^m``."""
    if m < 2 or m % 2:
        raise ValueError("matrix size must be a positive even integer")
    odd, k = m, 0
    while odd % 2 == 0:
        odd //= 2
        k += 1
    d, c = divmod(k, 4)
    fam = list(_base_family(c))
    size = 2 ** c
    D, G = _period_block()
    for _ in range(d):
        fam = [kron(A, G) for A in fam] + [kron(identity(size), Dj) for Dj in D]
        size *= 16
    if odd > 1:
        fam = [kron(A, identity(odd)) for A in fam]
    out = HurwitzRadonFamily(m, tuple(fam))
    if len(out.matrices) != rho(m):
        raise ConstructionError(f"built {len(out.matrices)} matrices, expected {rho(m)}")
    return out


def sphere_chart(m: int, name: str = "sphere") -> Chart:
    xs = tuple(f"x{i}" for i in range(1, m + 1))
    return Chart(coords=xs, relations=(xs,), sphere=True, name=name)


def matrix_form(chart: Chart, A: Matrix) -> DiffForm:
    """``<A x, dx>``."""
    xs = chart.coords
    out = chart.zero()
    for a, row in enumerate(A):
        coeff = sum((Poly.var(xs[b]) * c for b, c in enumerate(row) if c), ZERO)
        if coeff:
            out = out + chart.d(xs[a]) * coeff
    return out


def matrix_contact_sphere(family: HurwitzRadonFamily, count: Optional[int] = None) -> PSphereSpec:
    if family.m % 4:
        raise ValueError("contact spheres from matrix families need m divisible by 4")
    mats = family.matrices if count is None else family.matrices[:count]
    if not mats:
        raise ValueError("need at least one matrix")
    ch = sphere_chart(family.m, f"hr{family.m}")
    return PSphereSpec(ch, tuple(matrix_form(ch, A) for A in mats), name=f"hr-sphere({family.m})")


@dataclass(frozen=True)
class RelationCheck:
    """Identities that make ``<A_i x, dx>`` a round contact sphere, checked without
    expanding any top-degree wedge power."""
    clifford: bool          # family_check
    duality: bool           # w_i(A_j x) = delta_ij on the sphere
    contraction: bool       # (A_j x) _| dw_i + (A_i x) _| dw_j = 0 on the sphere
    failures: Tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.clifford and self.duality and self.contraction


def matrix_field(chart: Chart, A: Matrix):
    from .exterior import VectorField
    xs = chart.coords
    return VectorField(chart, {f"d{xs[a]}": sum((Poly.var(xs[b]) * c for b, c in enumerate(row) if c), ZERO)
                               for a, row in enumerate(A)})


def relation_check(family: HurwitzRadonFamily) -> RelationCheck:
    from .exterior import contract, pair
    fc = family_check(family.m, family.matrices)
    ch = sphere_chart(family.m, f"hr{family.m}")
    forms = [matrix_form(ch, A) for A in family.matrices]
    fields = [matrix_field(ch, A) for A in family.matrices]
    dforms = [ext_d(w) for w in forms]
    fails = list(fc.failures)
    duality = contraction = True
    for i in range(len(forms)):
        for j in range(len(forms)):
            if ch.nf(pair(forms[i], fields[j])) != Poly.const(1 if i == j else 0):
                duality = False
                fails.append(f"w{i + 1}(R{j + 1}) != delta")
            if j < i:
                continue
            # off the diagonal the sum vanishes identically; on it, R_i _| dw_i is a
            # multiple of sum x dx and vanishes on the sphere
            s = contract(fields[j], dforms[i]) + contract(fields[i], dforms[j])
            if not (s.is_zero() if i != j else form_eq(s, ch.zero()).equal):
                contraction = False
                fails.append(f"R{j + 1} _| dw{i + 1} + R{i + 1} _| dw{j + 1} != 0")
    return RelationCheck(fc.ok, duality, contraction, tuple(fails))


# -- torus examples ---------------------------------------------------------------------------

def _angle(name: str, gen: str, n: int = 1) -> Tuple[FuncVar, FuncVar]:
    s, c = Poly.var(f"s{name}"), Poly.var(f"c{name}")
    return (FuncVar(f"s{name}", ((gen, c * n),)), FuncVar(f"c{name}", ((gen, -s * n),)))


def t3_circle(n: int = 1) -> PSphereSpec:
    """``cos(n th1) dth2 + sin(n th1) dth3`` and ``-sin(n th1) dth2 + cos(n th1) dth3`` on T^3."""
    if n == 0:
        raise ValueError("n = 0 gives closed forms, not contact forms")
    ch = Chart(funcs=_angle("", "dth1", n), gens=(AbstractGen("dth1"), AbstractGen("dth2"), AbstractGen("dth3")),
               relations=(("s", "c"),), name=f"t3_{n}")
    s, c = Poly.var("s"), Poly.var("c")
    w1 = ch.gen("dth2") * c + ch.gen("dth3") * s
    w2 = ch.gen("dth2") * -s + ch.gen("dth3") * c
    return PSphereSpec(ch, (w1, w2), name=f"t3-circle({n})")


def torus_bundle_circle(f, k) -> PSphereSpec:
    """Invariant pair on a circle bundle over T^2 with connection ``alpha``,
    ``d alpha = f dth1 ^ dth2``."""
    f, k = Fraction(f), Fraction(k)
    if k == 0 or k * f > 0:
        raise ValueError(f"torus bundle construction needs k != 0 and k*f <= 0 (got k={k}, f={f})")
    gens = (AbstractGen("dth1"), AbstractGen("dth2"),
            AbstractGen("alpha", ((("dth1", "dth2"), Poly.const(f)),)))
    ch = Chart(funcs=_angle("1", "dth1") + _angle("2", "dth2"), gens=gens,
               relations=(("s1", "c1"), ("s2", "c2")), name="bundle")
    s1, c1 = Poly.var("s1"), Poly.var("c1")
    alpha = ch.gen("alpha") * k
    w1 = ch.gen("dth2") * c1 + alpha * s1
    w2 = ch.gen("dth2") * -s1 + alpha * c1
    spec = PSphereSpec(ch, (w1, w2), name=f"t2-bundle-circle({_fmt(f)},{_fmt(k)})")
    from .psphere import lambda_names
    l1, l2 = lambda_names(spec)[0]
    u = Poly.var(l1) * s1 + Poly.var(l2) * c1
    return PSphereSpec(ch, (w1, w2), (BoundHint(u, -1, 1, False, "u"),), spec.name)


def bundle_volume_formula(f, k) -> Poly:
    """``k (k f u^2 - 1)`` in the hint variable ``u``: the reduced volume coefficient
    of the torus-bundle pair."""
    f, k = Fraction(f), Fraction(k)
    u = Poly.var("u")
    return (u * u * (k * f) - 1) * k


def bundle_volume_formula_as_printed(f, k) -> Poly:
    """``k (k f u^2 - 2)``: the closed form as printed alongside the construction."""
    f, k = Fraction(f), Fraction(k)
    u = Poly.var("u")
    return (u * u * (k * f) - 2) * k


def _fmt(x: Fraction) -> str:
    return str(Fraction(x))


# -- quaternionic and R^7, R^5 examples --------------------------------------------------------

def s3_quaternionic() -> PSphereSpec:
    """Right multiplication by i, j, k paired with dq."""
    ch = Chart(coords=("q1", "q2", "q3", "q4"), relations=(("q1", "q2", "q3", "q4"),), sphere=True, name="s3")
    from .dsl import parse_form
    a = parse_form(ch, "q1*dq2 - q2*dq1 + q4*dq3 - q3*dq4")
    b = parse_form(ch, "q1*dq3 - q3*dq1 + q2*dq4 - q4*dq2")
    g = parse_form(ch, "q3*dq2 - q2*dq3 + q1*dq4 - q4*dq1")
    return PSphereSpec(ch, (a, b, g), name="s3-quaternionic")


def s3_hat() -> PSphereSpec:
    """``<iq, dq>, <jq, dq>, <kq, dq>`` with left multiplication."""
    ch = Chart(coords=("q1", "q2", "q3", "q4"), relations=(("q1", "q2", "q3", "q4"),), sphere=True, name="s3")
    from .dsl import parse_form
    forms = (parse_form(ch, "q1*dq2 - q2*dq1 + q3*dq4 - q4*dq3"),   # iq = (-q2, q1, -q4, q3)
             parse_form(ch, "q1*dq3 - q3*dq1 + q4*dq2 - q2*dq4"),   # jq = (-q3, q4, q1, -q2)
             parse_form(ch, "q1*dq4 - q4*dq1 + q2*dq3 - q3*dq2"))   # kq = (-q4, -q3, q2, q1)
    return PSphereSpec(ch, forms, name="s3-hat")


def _rn(n: int, name: str) -> Chart:
    return Chart(coords=tuple(f"x{i}" for i in range(1, n + 1)), name=name)


def r7_round_not_taut() -> PSphereSpec:
    from .dsl import parse_form
    ch = _rn(7, "r7")
    w1 = parse_form(ch, "x1*dx2 + x3*dx4 + x5*dx6 + dx7")
    w2 = parse_form(ch, "-(x5 + x6)*dx3 - x5*dx4 + (x1 + x3)*dx6 + x1*dx7 - dx2")
    return PSphereSpec(ch, (w1, w2), name="r7-round-not-taut")


def r7_taut_not_round() -> PSphereSpec:
    from .dsl import parse_form
    ch = _rn(7, "r7")
    w1 = parse_form(ch, "x1*dx2 + x3*dx4 + x5*dx6 + dx7")
    w2 = parse_form(ch, "x5*dx4 - x3*dx6 + (x1 + x3)*dx7 - dx2")
    return PSphereSpec(ch, (w1, w2), name="r7-taut-not-round")


def r5_pair() -> PSphereSpec:
    from .dsl import parse_form
    ch = _rn(5, "r5")
    w1 = parse_form(ch, "dx5 + x1*dx2 + x3*dx4")
    w2 = parse_form(ch, "dx5 - x1*dx2 + x3*dx4")
    return PSphereSpec(ch, (w1, w2), name="r5-pair")


# -- circle bundles over S^2: the identity behind the construction ------------------------------

PHI = ("phi1", "phi2", "phi3")
LAM = ("lam1", "lam2", "lam3")


def _bundle_chart(curvature, extra_consts=(), extra_gens=()) -> Chart:
    gens = tuple(extra_gens) + (AbstractGen("alpha", curvature),)
    return Chart(coords=PHI, consts=LAM + ("k",) + tuple(extra_consts), gens=gens,
                 relations=(PHI, LAM), name="s2bundle")


def _cyclic():
    return [(0, 1, 2), (1, 2, 0), (2, 0, 1)]


def _bundle_generators(ch: Chart, k: Poly) -> List[DiffForm]:
    p = [Poly.var(v) for v in PHI]
    dp = [ch.d(v) for v in PHI]
    alpha = ch.gen("alpha")
    out = []
    for i, j, l in _cyclic():
        out.append(dp[l] * p[j] - dp[j] * p[l] + alpha * (p[i] * k))
    return out


def _lam_pairs(ch: Chart) -> DiffForm:
    """``lam1 dphi2^dphi3 + lam2 dphi3^dphi1 + lam3 dphi1^dphi2``."""
    dp = [ch.d(v) for v in PHI]
    out = ch.zero()
    for i, j, l in _cyclic():
        out = out + wedge(dp[j], dp[l]) * Poly.var(LAM[i])
    return out


def _pullback_volume(ch: Chart) -> DiffForm:
    """``phi3 dphi1^dphi2 + phi1 dphi2^dphi3 + phi2 dphi3^dphi1``."""
    dp = [ch.d(v) for v in PHI]
    out = ch.zero()
    for i, j, l in _cyclic():
        out = out + wedge(dp[j], dp[l]) * Poly.var(PHI[i])
    return out


def _g() -> Poly:
    return sum((Poly.var(l) * Poly.var(p) for l, p in zip(LAM, PHI)), ZERO)


def lemma2_chart() -> Chart:
    # d(alpha) is an arbitrary horizontal 2-form n12 dphi1^dphi2 + n23 dphi2^dphi3 + n31 dphi3^dphi1
    curvature = ((("dphi1", "dphi2"), Poly.var("n12")), (("dphi2", "dphi3"), Poly.var("n23")),
                 (("dphi3", "dphi1"), Poly.var("n31")))
    return _bundle_chart(curvature, extra_consts=("n12", "n23", "n31"))


def lemma2_sides(mutate: bool = False) -> Tuple[DiffForm, DiffForm]:
    """``w ^ dw`` for ``w = sum lam_i w_i`` and the closed form claimed for it."""
    ch = lemma2_chart()
    k = Poly.var("k")
    gens = _bundle_generators(ch, k)
    omega = ch.zero()
    for lam, w in zip(LAM, gens):
        omega = omega + w * Poly.var(lam)
    lhs = wedge(omega, ext_d(omega))
    kr = k + 1 if mutate else k
    g = _g()
    alpha = ch.gen("alpha")
    rhs = (wedge(_lam_pairs(ch) * g, alpha) * kr + wedge(_pullback_volume(ch), alpha) * kr
           + wedge(alpha, ext_d(alpha)) * (kr * kr * g * g))
    return lhs, rhs


def lemma2_verify(mutate: bool = False, lam: Optional[Sequence] = None) -> FormEquality:
    lhs, rhs = lemma2_sides(mutate)
    if lam is not None:
        sub = {v: Fraction(x) for v, x in zip(LAM, lam)}
        lhs, rhs = lhs.subs(sub), rhs.subs(sub)
    return form_eq(lhs, rhs)


def lemma2_generator(i: int) -> DiffForm:
    ch = lemma2_chart()
    return _bundle_generators(ch, Poly.var("k"))[i]


def substitute_pairs(f: DiffForm, table: Dict[Tuple[str, str], DiffForm]) -> DiffForm:
    """Replace ``a ^ b`` (for each ``(a, b)`` in ``table``) inside every component."""
    ch = f.chart
    idx = {}
    for (a, b), repl in table.items():
        ia, ib = ch.gen_index(a), ch.gen_index(b)
        if ia < ib:
            idx[(ia, ib)] = repl
        else:
            idx[(ib, ia)] = -repl
    out = ch.zero()
    for key, p in f.comps.items():
        done = False
        for (ia, ib), repl in idx.items():
            if ia in key and ib in key:
                rest = tuple(g for g in key if g not in (ia, ib))
                sign, _ = _sort_sign((ia, ib) + rest)
                tail = DiffForm(ch, {rest: 1})
                out = out + wedge(repl, tail) * (p * sign)
                done = True
                break
        if not done:
            out = out + DiffForm(ch, {key: p})
    return out


def expr3_reduction_verify(omit_c: bool = False, f=None) -> FormEquality:
    """With ``dphi2^dphi3 = C1 W`` (cyclic), ``d alpha = f W`` and the pulled-back
    volume written as ``W``, the closed form for ``w ^ dw`` equals
    ``k (1 + k f g^2 + g (lam . C)) W ^ alpha`` with ``g = sum lam_i phi_i``."""
    fv = Poly.var("f") if f is None else Poly.const(f)
    consts = ("C1", "C2", "C3") + (("f",) if f is None else ())
    extra = (AbstractGen("w1"), AbstractGen("w2"))
    ch = _bundle_chart(((("w1", "w2"), fv),), extra_consts=consts, extra_gens=extra)
    k = Poly.var("k")
    g = _g()
    W = wedge(ch.gen("w1"), ch.gen("w2"))
    alpha = ch.gen("alpha")
    lam_pairs = _lam_pairs(ch)
    if not omit_c:
        table = {(f"dphi{j + 1}", f"dphi{l + 1}"): W * Poly.var(f"C{i + 1}") for i, j, l in _cyclic()}
        lam_pairs = substitute_pairs(lam_pairs, table)
    rhs = (wedge(lam_pairs * g, alpha) * k + wedge(W, alpha) * k
           + wedge(alpha, ext_d(alpha)) * (k * k * g * g))
    lamC = sum((Poly.var(l) * Poly.var(f"C{i + 1}") for i, l in enumerate(LAM)), ZERO)
    bracket = 1 + k * fv * g * g + g * lamC
    target = wedge(W, alpha) * (k * bracket)
    return form_eq(rhs, target)


# -- the nondegeneracy scan for invariant families -------------------------------------------------

@dataclass(frozen=True)
class ScanReport:
    minimum: Fraction
    point: Dict[str, Fraction]
    lam: Tuple[Fraction, ...]
    samples: int
    refuted: bool

    def to_dict(self) -> dict:
        return {"minimum": str(self.minimum), "point": {k: str(v) for k, v in sorted(self.point.items())},
                "lambda": [str(x) for x in self.lam], "samples": self.samples, "refuted": self.refuted}


def _directions(k: int, steps: int = 2) -> List[Tuple[Fraction, ...]]:
    vals = [Fraction(i, steps) for i in range(-steps, steps + 1)]
    out = []

    def rec(prefix):
        if len(prefix) == k:
            if max(abs(x) for x in prefix) == 1:
                out.append(tuple(prefix))
            return
        for v in vals:
            rec(prefix + [v])

    rec([])
    return out


def invariant_nondegeneracy_scan(functions: Sequence[Poly], chart: Chart, grid_density: int = 200,
                                 seed: int = 0) -> ScanReport:
    """Minimum of ``|sum lam_i phi_i| + sum |components of sum lam_i dphi_i|`` over
    exact base points and rational directions ``lam`` (max-norm 1 or unit length).
    A zero minimum refutes simultaneous nonvanishing; a positive one proves nothing."""
    if not functions:
        raise ValueError("need at least one function")
    import random
    rng = random.Random(seed)
    k = len(functions)
    diffs = [ext_d(chart.scalar(p)) for p in functions]
    lams = _directions(k) + [tuple(rational_unit_vector(k, rng)) for _ in range(32)]
    names = set()
    for p in functions:
        names |= p.variables()
    for df in diffs:
        names |= df.variables()
    best = None
    samples = 0
    for pt in domain_points(chart, sorted(names), grid_density, seed):
        fv = [Fraction(p.evaluate(pt)) for p in functions]
        dv = [{key: Fraction(c.evaluate(pt)) for key, c in df.comps.items()} for df in diffs]
        keys = sorted({key for d in dv for key in d})
        for lam in lams:
            samples += 1
            val = abs(sum(l * x for l, x in zip(lam, fv)))
            val += sum(abs(sum(l * d.get(key, 0) for l, d in zip(lam, dv))) for key in keys)
            if best is None or val < best[0]:
                best = (val, pt, lam)
                if val == 0:
                    return ScanReport(Fraction(0), dict(pt), lam, samples, True)
    return ScanReport(best[0], dict(best[1]), best[2], samples, False)


# -- catalog ------------------------------------------------------------------------------------------

@dataclass(frozen=True)
class Expectation:
    prop: str          # contact | psphere | taut | round | volume
    value: object      # bool, or the exact constant for "volume"
    provenance: str
    printed: object = None   # the value as printed in the source, when it differs


@dataclass(frozen=True)
class ExampleEntry:
    name: str
    spec: PSphereSpec
    expected: Tuple[Expectation, ...]
    description: str = ""

    @property
    def chart(self) -> Chart:
        return self.spec.chart

    def expectation(self, prop: str):
        for e in self.expected:
            if e.prop == prop:
                return e
        return None


def _entry(name, spec, description, **expected) -> ExampleEntry:
    exps = tuple(Expectation(p, *args) for p, args in expected.items())
    return ExampleEntry(name, spec, exps, description)


def entry(name: str) -> ExampleEntry:
    """Look up a catalog entry, including parametric names such as ``t3-circle(3)``."""
    m = re.fullmatch(r"([a-z0-9-]+)(?:\(([^)]*)\))?", name.strip())
    if not m:
        raise NotFound(name)
    base, args = m.group(1), m.group(2)
    params = [a.strip() for a in args.split(",")] if args is not None else []
    try:
        if base == "s3-quaternionic" and not params:
            return _entry(name, s3_quaternionic(), "quaternionic triple on S^3 (right multiplication)",
                          psphere=(True, "STATED: nonvanishing volume form"),
                          volume=(Fraction(2), "DERIVED: 2 from d<qi,dq> = 2(dq1^dq2 - dq3^dq4); printed as 1",
                                  Fraction(1)),
                          taut=(True, "STATED: taut contact sphere"),
                          round=(True, "DERIVED: taut iff round in dimension 3"))
        if base == "s3-hat" and not params:
            return _entry(name, s3_hat(), "<iq,dq>, <jq,dq>, <kq,dq> on S^3",
                          psphere=(True, "STATED: contact sphere"),
                          round=(True, "STATED: round, R_i = iq, jq, kq"),
                          taut=(True, "DERIVED: round iff taut in dimension 3"))
        if base == "t3-circle":
            n = int(params[0]) if params else 1
            return _entry(f"t3-circle({n})", t3_circle(n), "torus circle with angle multiple n",
                          psphere=(True, "STATED: w ^ dw = -n dth1^dth2^dth3"),
                          volume=(Fraction(-n), "STATED: coefficient -n"),
                          taut=(True, "STATED: taut contact circle"),
                          round=(True, "STATED: round (n = 1); DERIVED for other n via dimension 3"))
        if base == "t2-bundle-circle":
            f, k = (Fraction(params[0]), Fraction(params[1])) if params else (Fraction(-1), Fraction(1))
            return _entry(f"t2-bundle-circle({_fmt(f)},{_fmt(k)})", torus_bundle_circle(f, k),
                          "invariant circle on a bundle over T^2 with d alpha = f dth1^dth2",
                          psphere=(True, "STATED: volume form whenever k != 0 and k f <= 0"),
                          taut=(f == 0, "STATED: taut only if f = 0"),
                          round=(f == 0, "DERIVED: taut iff round in dimension 3"))
        if base == "r7-round-not-taut" and not params:
            return _entry(name, r7_round_not_taut(), "first R^7 pair",
                          psphere=(True, "STATED: contact circle"),
                          round=(True, "STATED: round"), taut=(False, "STATED: not taut"))
        if base == "r7-taut-not-round" and not params:
            return _entry(name, r7_taut_not_round(), "second R^7 pair",
                          psphere=(True, "STATED: contact circle"),
                          taut=(True, "STATED: taut"), round=(False, "STATED: not round"))
        if base == "hr-sphere":
            m = int(params[0]) if params else 4
            return _entry(f"hr-sphere({m})", matrix_contact_sphere(hurwitz_radon_family(m)),
                          f"<A_i x, dx> for a Hurwitz-Radon family on R^{m}",
                          psphere=(True, "STATED: contact (rho(m)-1)-sphere"),
                          round=(True, "STATED: round"), taut=(True, "STATED: taut"))
        if base == "r5-pair" and not params:
            return _entry(name, r5_pair(), "pair on R^5 (dimension 1 mod 4)",
                          psphere=(False, "STATED: no contact circles in dimension 4n+1"))
    except (ValueError, IndexError) as e:
        raise NotFound(f"{name}: {e}") from None
    raise NotFound(name)


CATALOG_NAMES = (
    "s3-quaternionic", "s3-hat", "t3-circle(1)", "t3-circle(2)", "t3-circle(5)",
    "t2-bundle-circle(-1,1)", "t2-bundle-circle(-2,3)", "t2-bundle-circle(0,1)",
    "r7-round-not-taut", "r7-taut-not-round", "hr-sphere(4)", "hr-sphere(8)", "r5-pair",
)


def example_catalog() -> List[ExampleEntry]:
    return [entry(n) for n in CATALOG_NAMES]
