"""Sparse multivariate polynomials with exact rational coefficients.

A monomial is a tuple of ``(variable, exponent)`` pairs sorted by variable
name, with no zero exponents.  Coefficients are Python ints or
``fractions.Fraction`` (ints are kept as ints for speed; a Fraction with
denominator 1 is collapsed to an int).  Floating point never enters.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Dict, Iterable, Mapping, Tuple, Union

Monomial = Tuple[Tuple[str, int], ...]
Rational = Union[int, Fraction]

ONE_MONO: Monomial = ()


def as_rational(value) -> Rational:
    """Coerce ints, Fractions and ``"p/q"`` strings; reject floats."""
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        return as_rational(Fraction(value))
    raise TypeError(f"exact rational required, got {type(value).__name__}")


def _norm(c: Rational) -> Rational:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


@lru_cache(maxsize=1 << 16)
def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True if monomial ``a`` divides ``b``."""
    db = dict(b)
    return all(db.get(v, 0) >= e for v, e in a)


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    d = dict(b)
    for v, e in a:
        r = d[v] - e
        if r:
            d[v] = r
        else:
            del d[v]
    return tuple(sorted(d.items()))


class Poly:
    """Immutable sparse polynomial over the rationals."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Rational] | None = None):
        clean: Dict[Monomial, Rational] = {}
        if terms:
            for m, c in terms.items():
                c = as_rational(c)
                if c:
                    m = tuple(sorted((v, e) for v, e in m if e))
                    clean[m] = _norm(clean.get(m, 0) + c)
                    if not clean[m]:
                        del clean[m]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Rational]) -> "Poly":
        # trusted constructor: keys canonical, zero coefficients may be present
        p = object.__new__(cls)
        p._terms = {m: _norm(c) for m, c in terms.items() if c}
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "Poly":
        c = as_rational(c)
        return cls._raw({ONE_MONO: c} if c else {})

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls._raw({((name, 1),): 1})

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> Mapping[Monomial, Rational]:
        return MappingProxyType(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE_MONO in self._terms)

    def constant_term(self) -> Rational:
        return self._terms.get(ONE_MONO, 0)

    def variables(self) -> frozenset:
        return frozenset(v for m in self._terms for v, _ in m)

    def degree(self, var: str | None = None) -> int:
        if not self._terms:
            return -1
        if var is None:
            return max(mono_degree(m) for m in self._terms)
        return max(dict(m).get(var, 0) for m in self._terms)

    def degree_in(self, variables: Iterable[str]) -> int:
        vs = set(variables)
        if not self._terms:
            return -1
        return max(sum(e for v, e in m if v in vs) for m in self._terms)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other) -> "Poly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._terms:
            return self
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return _coerce(other) - self

    def __mul__(self, other) -> "Poly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO
        if other.is_constant():
            c = other.constant_term()
            return Poly._raw({m: a * c for m, a in self._terms.items()})
        if self.is_constant():
            c = self.constant_term()
            return Poly._raw({m: c * a for m, a in other._terms.items()})
        out: Dict[Monomial, Rational] = {}
        get = out.get
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = mono_mul(ma, mb)
                out[m] = get(m, 0) + ca * cb
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("non-negative integer exponent required")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "Poly":
        c = as_rational(c)
        return Poly._raw({m: a * c for m, a in self._terms.items()})

    def __truediv__(self, c) -> "Poly":
        c = as_rational(c)
        if not c:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self.scale(Fraction(1) / c)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._terms == other._terms
        try:
            other = Poly.const(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- calculus and substitution ---------------------------------------
    def diff(self, var: str) -> "Poly":
        out: Dict[Monomial, Rational] = {}
        for m, c in self._terms.items():
            d = dict(m)
            e = d.get(var, 0)
            if not e:
                continue
            if e == 1:
                del d[var]
            else:
                d[var] = e - 1
            key = tuple(sorted(d.items()))
            out[key] = out.get(key, 0) + c * e
        return Poly._raw(out)

    def subs(self, assignment: Mapping[str, object]) -> "Poly":
        """Substitute rationals or Polys for variables (others kept)."""
        if not assignment:
            return self
        vals = {v: (x if isinstance(x, Poly) else Poly.const(x)) for v, x in assignment.items()}
        pow_cache: Dict[Tuple[str, int], Poly] = {}
        out = ZERO
        acc: Dict[Monomial, Rational] = {}
        for m, c in self._terms.items():
            keep = []
            factor = None
            for v, e in m:
                if v in vals:
                    key = (v, e)
                    if key not in pow_cache:
                        pow_cache[key] = vals[v] ** e
                    factor = pow_cache[key] if factor is None else factor * pow_cache[key]
                else:
                    keep.append((v, e))
            if factor is None:
                acc[m] = acc.get(m, 0) + c
                continue
            out = out + factor * Poly._raw({tuple(keep): c})
        return out + Poly._raw(acc)

    def evaluate(self, point: Mapping[str, Rational]) -> Rational:
        """Exact value at a point assigning every variable of the polynomial."""
        total: Rational = 0
        for m, c in self._terms.items():
            t = c
            for v, e in m:
                try:
                    t = t * point[v] ** e
                except KeyError:
                    raise KeyError(f"no value for variable {v!r}") from None
            total += t
        return _norm(Fraction(total)) if isinstance(total, Fraction) else total

    def coefficients_in(self, variables: Iterable[str]) -> Dict[Monomial, "Poly"]:
        """Split as sum of (monomial in ``variables``) * (Poly in the rest)."""
        vs = set(variables)
        out: Dict[Monomial, Dict[Monomial, Rational]] = {}
        for m, c in self._terms.items():
            inner = tuple((v, e) for v, e in m if v in vs)
            outer = tuple((v, e) for v, e in m if v not in vs)
            bucket = out.setdefault(inner, {})
            bucket[outer] = bucket.get(outer, 0) + c
        return {k: Poly._raw(v) for k, v in out.items()}

    def univariate_coeffs(self, var: str | None = None) -> list:
        """Dense coefficient list (index = degree) of a univariate polynomial."""
        vs = self.variables()
        if var is None:
            if len(vs) > 1:
                raise ValueError(f"polynomial is not univariate: {sorted(vs)}")
            var = next(iter(vs)) if vs else "_"
        elif vs - {var}:
            raise ValueError(f"polynomial has variables besides {var!r}")
        if not self._terms:
            return []
        coeffs = [0] * (self.degree() + 1)
        for m, c in self._terms.items():
            coeffs[dict(m).get(var, 0)] = c
        return coeffs

    # -- exact division ---------------------------------------------------
    def divexact(self, divisor: "Poly") -> "Poly":
        """Exact quotient; raises ``ValueError`` if ``divisor`` does not divide."""
        if not divisor:
            raise ZeroDivisionError("exact division by the zero polynomial")
        if not self._terms:
            return ZERO
        if divisor.is_constant():
            return self / divisor.constant_term()
        order = sorted(self.variables() | divisor.variables())

        def key(m: Monomial):
            d = dict(m)
            return tuple(d.get(v, 0) for v in order)

        lm_d = max(divisor._terms, key=key)
        lc_d = divisor._terms[lm_d]
        rem = dict(self._terms)
        quot: Dict[Monomial, Rational] = {}
        while rem:
            lm = max(rem, key=key)
            if not mono_divides(lm_d, lm):
                raise ValueError("polynomial division is not exact")
            qm = mono_div(lm, lm_d)
            qc = Fraction(rem[lm]) / lc_d
            quot[qm] = qc
            for m, c in divisor._terms.items():
                t = mono_mul(qm, m)
                nc = rem.get(t, 0) - qc * c
                if nc:
                    rem[t] = nc
                else:
                    rem.pop(t, None)
        return Poly._raw(quot)

    # -- printing ---------------------------------------------------------
    def sorted_terms(self):
        """Terms in a deterministic display order (descending degree)."""
        return sorted(self._terms.items(), key=lambda mc: (-mono_degree(mc[0]), mc[0]))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append(("- " if neg else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self) -> str:
        return f"Poly({self})"


def _coerce(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return Poly.const(x)
    return NotImplemented


ZERO = Poly._raw({})
ONE = Poly._raw({ONE_MONO: 1})


def var(name: str) -> Poly:
    return Poly.var(name)


def variables(names: str) -> Tuple[Poly, ...]:
    """``variables("x y z")`` -> three Polys."""
    return tuple(Poly.var(n) for n in names.split())
