"""Charts and the graded algebra of differential forms with polynomial
coefficients.

A :class:`Chart` declares four kinds of scalar symbols:

* ``coords``  -- coordinates, each contributing a 1-form generator ``d<name>``;
* ``consts``  -- constants (zero differential), e.g. the coefficients lambda;
* ``funcs``   -- functions whose differential is declared as a 1-form, used for
  ``sin``/``cos`` pairs of an angle (``ds = c*dth``, ``dc = -s*dth``);
* abstract 1-form generators (``gens``) with a declared differential 2-form,
  e.g. a connection form ``alpha`` with ``d(alpha) = f*dth1^dth2``.

The 1-form generator basis is ``[d<c> for c in coords] + [g.name for g in gens]``.
Forms are stored as ``{sorted generator-index tuple: Poly}`` with coefficients
kept in normal form modulo the chart's unit relations.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .algebra.poly import ONE, ZERO, Poly, as_rational
from .algebra.relations import RelationGroup, check_disjoint, normal_form

Gens = Tuple[int, ...]
Scalar = Union[int, Fraction, Poly]


class ChartError(ValueError):
    pass


class MixedCharts(ValueError):
    pass


class NonPolynomialField(ValueError):
    """A vector field with a non-constant denominator was used where a
    polynomial contraction is required."""


# -- chart ------------------------------------------------------------------

def _canon_items(items) -> tuple:
    return tuple(sorted(((k, v) for k, v in dict(items).items() if v), key=lambda kv: kv[0]))


@dataclass(frozen=True)
class AbstractGen:
    name: str
    differential: Tuple[Tuple[Tuple[str, str], Poly], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "differential", _canon_items(self.differential))


@dataclass(frozen=True)
class FuncVar:
    name: str
    differential: Tuple[Tuple[str, Poly], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "differential", _canon_items(self.differential))


@dataclass(frozen=True)
class Chart:
    coords: Tuple[str, ...] = ()
    consts: Tuple[str, ...] = ()
    funcs: Tuple[FuncVar, ...] = ()
    gens: Tuple[AbstractGen, ...] = ()
    relations: Tuple[RelationGroup, ...] = ()
    sphere: bool = False
    name: str = "chart"

    def __post_init__(self):
        for attr in ("coords", "consts", "funcs", "gens", "relations"):
            object.__setattr__(self, attr, tuple(getattr(self, attr)))
        object.__setattr__(self, "relations", tuple(
            g if isinstance(g, RelationGroup) else RelationGroup(tuple(g)) for g in self.relations))
        names = list(self.coords) + list(self.consts) + [f.name for f in self.funcs]
        gen_names = [f"d{c}" for c in self.coords] + [g.name for g in self.gens]
        allnames = names + gen_names
        dup = {n for n in allnames if allnames.count(n) > 1}
        if dup:
            raise ChartError(f"name(s) declared twice: {', '.join(sorted(dup))}")
        check_disjoint(self.relations)
        kinds = self._kinds
        for g in self.relations:
            ks = {kinds.get(v) for v in g.variables}
            if None in ks:
                missing = [v for v in g.variables if v not in kinds]
                raise ChartError(f"relation uses undeclared variable(s) {missing}")
            if len(ks) != 1:
                raise ChartError(f"relation group {g.variables} mixes coordinates, constants and functions")
        declared = set(names)
        for i, g in enumerate(self.gens):
            allowed = set(gen_names[: len(self.coords) + i])
            for (a, b), p in g.differential:
                if a not in allowed or b not in allowed:
                    raise ChartError(f"d({g.name}) may only use generators declared before {g.name}")
                if a == b:
                    raise ChartError(f"d({g.name}) contains {a}^{a}")
                if p.variables() - declared:
                    raise ChartError(f"d({g.name}) uses undeclared variable(s)")
        for f in self.funcs:
            for gname, p in f.differential:
                if gname not in gen_names:
                    raise ChartError(f"d({f.name}) uses unknown generator {gname!r}")
                if p.variables() - declared:
                    raise ChartError(f"d({f.name}) uses undeclared variable(s)")
        if self.sphere:
            if not self.relations:
                raise ChartError("sphere mode needs a host relation group")
            host = self.relations[0]
            if set(host.variables) != set(self.coords) or kinds[host.pivot] != "coord":
                raise ChartError("in sphere mode the first relation group must cover exactly the coordinates")
            if self.gens or self.funcs:
                raise ChartError("sphere mode charts carry no abstract generators or functions")

    # -- derived data ----------------------------------------------------
    @cached_property
    def _kinds(self) -> Dict[str, str]:
        k = {c: "coord" for c in self.coords}
        k.update({c: "const" for c in self.consts})
        k.update({f.name: "func" for f in self.funcs})
        return k

    @cached_property
    def generators(self) -> Tuple[str, ...]:
        return tuple(f"d{c}" for c in self.coords) + tuple(g.name for g in self.gens)

    @cached_property
    def _gen_index(self) -> Dict[str, int]:
        return {g: i for i, g in enumerate(self.generators)}

    @property
    def dimension(self) -> int:
        return len(self.generators)

    @cached_property
    def variables(self) -> Tuple[str, ...]:
        return tuple(self.coords) + tuple(self.consts) + tuple(f.name for f in self.funcs)

    def gen_index(self, name: str) -> int:
        try:
            return self._gen_index[name]
        except KeyError:
            raise ChartError(f"unknown generator {name!r}") from None

    def kind(self, var: str) -> str:
        try:
            return self._kinds[var]
        except KeyError:
            raise ChartError(f"undeclared variable {var!r}") from None

    @cached_property
    def _var_diffs(self) -> Dict[str, Dict[int, Poly]]:
        out: Dict[str, Dict[int, Poly]] = {}
        for i, c in enumerate(self.coords):
            out[c] = {i: ONE}
        for c in self.consts:
            out[c] = {}
        for f in self.funcs:
            out[f.name] = {self.gen_index(g): p for g, p in f.differential}
        return out

    def var_differential(self, var: str) -> Dict[int, Poly]:
        try:
            return self._var_diffs[var]
        except KeyError:
            raise ChartError(f"undeclared variable {var!r}") from None

    @cached_property
    def _gen_diffs(self) -> Dict[int, Dict[Gens, Poly]]:
        out: Dict[int, Dict[Gens, Poly]] = {}
        off = len(self.coords)
        for i, g in enumerate(self.gens):
            comps: Dict[Gens, Poly] = {}
            for (a, b), p in g.differential:
                ia, ib = self.gen_index(a), self.gen_index(b)
                key, sign = ((ia, ib), 1) if ia < ib else ((ib, ia), -1)
                comps[key] = comps.get(key, ZERO) + p.scale(sign)
            out[off + i] = {k: v for k, v in comps.items() if v}
        return out

    def gen_differential(self, idx: int) -> Dict[Gens, Poly]:
        return self._gen_diffs.get(idx, {})

    @property
    def host(self) -> Optional[RelationGroup]:
        return self.relations[0] if self.sphere else None

    @cached_property
    def rule_groups(self) -> Tuple[RelationGroup, ...]:
        """Relation groups over coordinates: these induce ``v dv = -sum w dw``."""
        return tuple(g for g in self.relations if self._kinds[g.pivot] == "coord")

    def nf(self, p: Poly) -> Poly:
        return normal_form(p, self.relations, declared=self._kinds)

    def satisfies_relations(self, point: Mapping[str, object]) -> bool:
        return all(g.holds_at(point) for g in self.relations)

    # -- constructors ----------------------------------------------------
    def x(self, name: str) -> Poly:
        self.kind(name)
        return Poly.var(name)

    def scalar(self, p: Scalar) -> "DiffForm":
        p = p if isinstance(p, Poly) else Poly.const(p)
        return DiffForm(self, {(): p})

    def zero(self) -> "DiffForm":
        return DiffForm(self, {})

    def gen(self, name: str) -> "DiffForm":
        return DiffForm(self, {(self.gen_index(name),): ONE})

    def d(self, var: str) -> "DiffForm":
        """Differential of a scalar symbol (coordinate, constant or function)."""
        return DiffForm(self, {(i,): p for i, p in self.var_differential(var).items()})

    def form(self, comps: Mapping[Tuple[str, ...], Scalar]) -> "DiffForm":
        """Build a form from ``{("dx1", "dx2"): coeff, ...}`` (any generator order)."""
        out = self.zero()
        for names, c in comps.items():
            term = self.scalar(c)
            for n in names:
                term = term * self.gen(n)
            out = out + term
        return out

    def extend(self, consts: Sequence[str] = (), relations: Sequence[Sequence[str]] = (), name: str | None = None) -> "Chart":
        """Same chart with extra constants and relation groups (generators unchanged)."""
        return Chart(self.coords, tuple(self.consts) + tuple(consts), self.funcs, self.gens,
                     tuple(self.relations) + tuple(RelationGroup(tuple(r)) for r in relations),
                     self.sphere, name or self.name)

    def volume_generators(self) -> Gens:
        return tuple(range(self.dimension))


# -- basis bookkeeping ------------------------------------------------------

@lru_cache(maxsize=1 << 16)
def _sort_sign(seq: Tuple[int, ...]) -> Tuple[int, Gens]:
    if len(set(seq)) != len(seq):
        return 0, ()
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return (-1 if inv % 2 else 1), tuple(sorted(seq))


def _same_chart(a: "Chart", b: "Chart") -> None:
    if a is not b and a != b:
        raise MixedCharts(f"forms live on different charts ({a.name!r} vs {b.name!r})")


# -- differential forms -----------------------------------------------------

class DiffForm:
    """Element of the exterior algebra over a chart, polynomial coefficients."""

    __slots__ = ("chart", "comps")

    def __init__(self, chart: Chart, comps: Mapping[Gens, Scalar], *, normalized: bool = False):
        self.chart = chart
        clean: Dict[Gens, Poly] = {}
        n = chart.dimension
        for key, p in comps.items():
            key = tuple(key)
            if any(not 0 <= k < n for k in key) or any(a >= b for a, b in zip(key, key[1:])):
                raise ValueError(f"generator tuple {key} is not strictly increasing within the chart")
            p = p if isinstance(p, Poly) else Poly.const(p)
            if not normalized:
                p = chart.nf(p)
            if p:
                clean[key] = p
        self.comps = clean

    # -- inspection ----------------------------------------------------------
    def degrees(self) -> frozenset:
        return frozenset(len(k) for k in self.comps)

    @property
    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError(f"form of mixed degree {sorted(ds)}")
        return next(iter(ds)) if ds else 0

    def is_zero(self) -> bool:
        return not self.comps

    def __bool__(self) -> bool:
        return bool(self.comps)

    def coefficient(self, names: Sequence[str]) -> Poly:
        """Coefficient of the wedge of the named generators (in the given order)."""
        idx = tuple(self.chart.gen_index(n) for n in names)
        sign, key = _sort_sign(idx)
        if not sign:
            return ZERO
        return self.comps.get(key, ZERO).scale(sign)

    def scalar_part(self) -> Poly:
        return self.comps.get((), ZERO)

    def as_vector(self) -> List[Poly]:
        """Coefficients of a 1-form in generator order."""
        if self.degrees() - {1}:
            raise ValueError("as_vector needs a 1-form")
        return [self.comps.get((i,), ZERO) for i in range(self.chart.dimension)]

    def variables(self) -> frozenset:
        out = set()
        for p in self.comps.values():
            out |= p.variables()
        return frozenset(out)

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other) -> "DiffForm":
        if isinstance(other, DiffForm):
            _same_chart(self.chart, other.chart)
            return other
        if isinstance(other, (int, Fraction, Poly)) and not isinstance(other, bool):
            return self.chart.scalar(other)
        raise TypeError(f"cannot combine a form with {type(other).__name__}")

    def __add__(self, other) -> "DiffForm":
        other = self._coerce(other)
        out = dict(self.comps)
        for k, p in other.comps.items():
            out[k] = out.get(k, ZERO) + p
        return DiffForm(self.chart, out, normalized=True)

    __radd__ = __add__

    def __neg__(self) -> "DiffForm":
        return DiffForm(self.chart, {k: -p for k, p in self.comps.items()}, normalized=True)

    def __sub__(self, other) -> "DiffForm":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "DiffForm":
        return self._coerce(other) - self

    def __mul__(self, other) -> "DiffForm":
        if isinstance(other, DiffForm):
            return wedge(self, other)
        if isinstance(other, (int, Fraction, Poly)) and not isinstance(other, bool):
            p = other if isinstance(other, Poly) else Poly.const(other)
            if p.is_constant():
                c = p.constant_term()
                return DiffForm(self.chart, {k: v.scale(c) for k, v in self.comps.items()}, normalized=True)
            return DiffForm(self.chart, {k: v * p for k, v in self.comps.items()})
        return NotImplemented

    def __rmul__(self, other) -> "DiffForm":
        return self.__mul__(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffForm):
            return NotImplemented
        return (self.chart is other.chart or self.chart == other.chart) and self.comps == other.comps

    def __hash__(self):
        return hash(frozenset(self.comps.items()))

    def subs(self, assignment: Mapping[str, object]) -> "DiffForm":
        """Substitute values (rationals or Polys) for constants/variables in coefficients."""
        return DiffForm(self.chart, {k: p.subs(assignment) for k, p in self.comps.items()})

    def on(self, chart: Chart) -> "DiffForm":
        """The same form viewed on a chart with identical generators."""
        if chart.generators != self.chart.generators:
            raise MixedCharts("target chart has different generators")
        return DiffForm(chart, self.comps)

    def __str__(self) -> str:
        from .dsl import format_form
        return format_form(self)

    def __repr__(self) -> str:
        return f"DiffForm({self})"


def wedge(a: DiffForm, b: DiffForm) -> DiffForm:
    _same_chart(a.chart, b.chart)
    out: Dict[Gens, Poly] = {}
    for ka, pa in a.comps.items():
        for kb, pb in b.comps.items():
            sign, key = _sort_sign(ka + kb)
            if not sign:
                continue
            t = pa * pb
            out[key] = out.get(key, ZERO) + (t if sign > 0 else -t)
    return DiffForm(a.chart, out)


def wpow(a: DiffForm, n: int) -> DiffForm:
    """``a ^ a ^ ... ^ a`` (n factors); ``wpow(a, 0)`` is the constant 1."""
    if n < 0:
        raise ValueError("negative wedge power")
    out = a.chart.scalar(1)
    for _ in range(n):
        out = wedge(out, a)
    return out


def ext_d(a: DiffForm) -> DiffForm:
    chart = a.chart
    out: Dict[Gens, Poly] = {}

    def add(seq, p):
        sign, key = _sort_sign(seq)
        if sign and p:
            out[key] = out.get(key, ZERO) + (p if sign > 0 else -p)

    for key, p in a.comps.items():
        for v in sorted(p.variables()):
            dv = chart.var_differential(v)
            if not dv:
                continue
            dp = p.diff(v)
            for gi, q in dv.items():
                add((gi,) + key, dp * q)
        for i, gi in enumerate(key):
            for (ga, gb), q in chart.gen_differential(gi).items():
                t = p * q
                add(key[:i] + (ga, gb) + key[i + 1:], t if i % 2 == 0 else -t)
    return DiffForm(chart, out)


# -- vector fields -----------------------------------------------------------

class VectorField:
    """``(1/den) * sum coeffs[g] * e_g`` in the frame dual to the chart's generators."""

    __slots__ = ("chart", "coeffs", "den")

    def __init__(self, chart: Chart, coeffs: Mapping[Union[int, str], Scalar], den: Scalar = 1):
        self.chart = chart
        c: Dict[int, Poly] = {}
        for k, p in coeffs.items():
            i = chart.gen_index(k) if isinstance(k, str) else int(k)
            if not 0 <= i < chart.dimension:
                raise ValueError(f"generator index {i} outside chart")
            p = chart.nf(p if isinstance(p, Poly) else Poly.const(p))
            if p:
                c[i] = c.get(i, ZERO) + p
        den = chart.nf(den if isinstance(den, Poly) else Poly.const(den))
        if not den:
            raise ZeroDivisionError("vector field with zero denominator")
        if den.is_constant():
            k = den.constant_term()
            c = {i: p / k for i, p in c.items()} if k != 1 else c
            den = ONE
        self.coeffs = {i: p for i, p in c.items() if p}
        self.den = den

    @classmethod
    def from_list(cls, chart: Chart, values: Sequence[Scalar], den: Scalar = 1) -> "VectorField":
        return cls(chart, dict(enumerate(values)), den)

    def component(self, i: int) -> Poly:
        return self.coeffs.get(i, ZERO)

    def as_list(self) -> List[Poly]:
        return [self.component(i) for i in range(self.chart.dimension)]

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def __add__(self, other: "VectorField") -> "VectorField":
        _same_chart(self.chart, other.chart)
        if self.den == other.den:
            return VectorField(self.chart, {i: self.component(i) + other.component(i)
                                            for i in range(self.chart.dimension)}, self.den)
        return VectorField(self.chart, {i: self.component(i) * other.den + other.component(i) * self.den
                                        for i in range(self.chart.dimension)}, self.den * other.den)

    def __mul__(self, c: Scalar) -> "VectorField":
        p = c if isinstance(c, Poly) else Poly.const(c)
        return VectorField(self.chart, {i: q * p for i, q in self.coeffs.items()}, self.den)

    __rmul__ = __mul__

    def __neg__(self) -> "VectorField":
        return self * -1

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.chart == other.chart and self.coeffs == other.coeffs and self.den == other.den

    def __hash__(self):
        return hash((frozenset(self.coeffs.items()), self.den))

    def tangency(self) -> Poly:
        """``<x, V>`` (numerator) over the host sphere; zero for tangent fields."""
        host = self.chart.host
        if host is None:
            raise ChartError("tangency is defined in sphere mode only")
        return self.chart.nf(sum((Poly.var(v) * self.component(self.chart.gen_index(f"d{v}"))
                                  for v in host.variables), ZERO))

    def __str__(self) -> str:
        names = self.chart.generators
        body = ", ".join(f"{names[i]}: {p}" for i, p in sorted(self.coeffs.items()))
        return "{" + body + "}" + ("" if self.den == ONE else f" / ({self.den})")

    __repr__ = __str__


def field_eq(u: VectorField, v: VectorField) -> bool:
    """Equality of (possibly rational) fields modulo the chart relations."""
    _same_chart(u.chart, v.chart)
    ch = u.chart
    return all(not ch.nf(u.component(i) * v.den - v.component(i) * u.den) for i in range(ch.dimension))


def contract_cleared(V: VectorField, a: DiffForm) -> DiffForm:
    """``den(V) * (V ⌟ a)``: the interior product with the numerator of V."""
    _same_chart(V.chart, a.chart)
    out: Dict[Gens, Poly] = {}
    for key, p in a.comps.items():
        for i, gi in enumerate(key):
            c = V.coeffs.get(gi)
            if c is None:
                continue
            rest = key[:i] + key[i + 1:]
            t = c * p
            out[rest] = out.get(rest, ZERO) + (t if i % 2 == 0 else -t)
    return DiffForm(a.chart, out)


def contract(V: VectorField, a: DiffForm) -> DiffForm:
    """Interior product ``V ⌟ a`` for a polynomial vector field."""
    if V.den != ONE:
        raise NonPolynomialField("field has a non-constant denominator; use contract_cleared")
    return contract_cleared(V, a)


def pair(w: DiffForm, V: VectorField) -> Poly:
    """``den(V) * w(V)`` for a 1-form ``w``."""
    if w.degrees() - {1}:
        raise ValueError("pair needs a 1-form")
    return contract_cleared(V, w).scalar_part()


# -- equality modulo relations ------------------------------------------------

def _apply_rules(a: DiffForm) -> DiffForm:
    """Rewrite ``pivot * d(pivot) -> -sum(w * dw)`` for every coordinate group."""
    chart = a.chart
    out = a
    for g in chart.rule_groups:
        gv = chart.gen_index(f"d{g.pivot}")
        others = [(w, chart.gen_index(f"d{w}")) for w in g.others]
        comps: Dict[Gens, Poly] = {}

        def add(seq, p):
            sign, key = _sort_sign(seq)
            if sign and p:
                comps[key] = comps.get(key, ZERO) + (p if sign > 0 else -p)

        for key, p in out.comps.items():
            if gv not in key:
                add(key, p)
                continue
            split = p.coefficients_in([g.pivot])
            i = key.index(gv)
            rest = key[:i] + key[i + 1:]
            for mono, q in split.items():
                e = dict(mono).get(g.pivot, 0)
                if e == 0:
                    add(key, q)
                    continue
                lower = q * Poly.var(g.pivot) ** (e - 1)
                t = lower if i % 2 == 0 else -lower
                # (v dv) ^ rest with dv moved to the front
                for w, gw in others:
                    add((gw,) + rest, -(t * Poly.var(w)))
        out = DiffForm(chart, comps)
    return out


def reduce_form(a: DiffForm) -> DiffForm:
    """Apply the differentiated relations until no pivot*d(pivot) term is left."""
    prev = None
    cur = a
    while prev is None or cur != prev:
        prev, cur = cur, _apply_rules(cur)
    return cur


@dataclass(frozen=True)
class FormEquality:
    equal: bool
    residue: DiffForm
    cleared: Optional[DiffForm] = None

    def __bool__(self) -> bool:
        return self.equal


def form_eq(a: DiffForm, b: DiffForm) -> FormEquality:
    """Decide ``a == b`` on the relation variety.

    The difference is reduced with the differentiated relations; if a
    residue survives, it is multiplied by every rule pivot and reduced once
    more, which removes all pivot differentials and leaves a canonical
    representative.
    """
    _same_chart(a.chart, b.chart)
    residue = reduce_form(a - b)
    if residue.is_zero():
        return FormEquality(True, residue)
    pivots = [Poly.var(g.pivot) for g in a.chart.rule_groups]
    if not pivots:
        return FormEquality(False, residue)
    factor = ONE
    for p in pivots:
        factor = factor * p
    cleared = reduce_form(residue * factor)
    return FormEquality(cleared.is_zero(), residue, cleared)


# -- evaluation -----------------------------------------------------------------

def _det(rows: List[List[Fraction]]) -> Fraction:
    n = len(rows)
    A = [list(map(Fraction, r)) for r in rows]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            det = -det
        det *= A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            if f:
                for j in range(k, n):
                    A[i][j] -= f * A[k][j]
    return det


def evaluate_on_frame(a: DiffForm, point: Mapping[str, object], frame: Sequence[VectorField]) -> Poly:
    """Alternating evaluation of ``a`` on constant frame vectors, with the
    variables in ``point`` substituted; unassigned symbols stay symbolic."""
    chart = a.chart
    k = len(frame)
    if a.degrees() - {k}:
        raise ValueError(f"form of degree {sorted(a.degrees())} evaluated on {k} vectors")
    cols = []
    for V in frame:
        _same_chart(chart, V.chart)
        if V.den != ONE or any(not p.is_constant() for p in V.coeffs.values()):
            raise ValueError("frame vectors must have rational coefficients")
        cols.append([V.component(i).constant_term() for i in range(chart.dimension)])
    pt = {v: as_rational(x) for v, x in point.items()}
    total = ZERO
    for key, p in a.comps.items():
        det = _det([[cols[c][g] for c in range(k)] for g in key]) if k else Fraction(1)
        if det:
            total = total + p.subs(pt).scale(det)
    return total


def evaluate_at(a: DiffForm, point: Mapping[str, object], frame: Sequence[VectorField]) -> Fraction:
    chart = a.chart
    pt = {v: as_rational(x) for v, x in point.items()}
    for g in chart.relations:
        if all(v in pt for v in g.variables) and not g.holds_at(pt):
            raise ValueError(f"point violates relation {' + '.join(v + '^2' for v in g.variables)} = 1")
        if any(v in pt for v in g.variables) and not all(v in pt for v in g.variables):
            raise ValueError(f"point assigns only part of relation group {g.variables}")
    val = evaluate_on_frame(a, pt, frame)
    if not val.is_constant():
        raise ValueError(f"point leaves symbols unassigned: {sorted(val.variables())}")
    return Fraction(val.constant_term())


def standard_frame(chart: Chart) -> List[VectorField]:
    return [VectorField(chart, {i: 1}) for i in range(chart.dimension)]
