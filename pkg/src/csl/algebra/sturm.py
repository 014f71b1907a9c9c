"""Exact sign analysis of univariate rational polynomials via Sturm sequences."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .poly import Poly, as_rational

Dense = List[Fraction]  # coefficient of x**i at index i


class ZeroPolynomial(ValueError):
    pass


class Verdict(enum.Enum):
    STRICTLY_POSITIVE = "StrictlyPositive"
    STRICTLY_NEGATIVE = "StrictlyNegative"
    HAS_ZERO = "HasZero"


@dataclass(frozen=True)
class SturmResult:
    verdict: Verdict
    witness: Optional[Tuple[Fraction, Fraction]] = None
    # square-free part whose sign change on ``witness`` was checked
    certificate_poly: Optional[Tuple[Fraction, ...]] = None

    @property
    def sign(self) -> int:
        return {Verdict.STRICTLY_POSITIVE: 1, Verdict.STRICTLY_NEGATIVE: -1}.get(self.verdict, 0)


def _trim(p: Sequence) -> Dense:
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def ev(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: Sequence[Fraction]) -> Dense:
    return _trim([i * c for i, c in enumerate(p)][1:])


def divmod_dense(a: Sequence[Fraction], b: Sequence[Fraction]) -> Tuple[Dense, Dense]:
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and r:
        f = r[-1] / b[-1]
        shift = len(r) - len(b)
        q[shift] = f
        for i, c in enumerate(b):
            r[i + shift] -= f * c
        r = _trim(r)
    return _trim(q), r


def gcd_dense(a: Sequence[Fraction], b: Sequence[Fraction]) -> Dense:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, divmod_dense(a, b)[1]
    if not a:
        return a
    lc = a[-1]
    return [c / lc for c in a]


def squarefree_part(p: Sequence[Fraction]) -> Dense:
    p = _trim(p)
    g = gcd_dense(p, derivative(p))
    if len(g) <= 1:
        return p
    return divmod_dense(p, g)[0]


def sturm_sequence(p: Sequence[Fraction]) -> List[Dense]:
    seq = [_trim(p), derivative(p)]
    while seq[-1]:
        seq.append([-c for c in divmod_dense(seq[-2], seq[-1])[1]])
    return [s for s in seq if s]


def sign_changes(seq: Sequence[Dense], x: Fraction) -> int:
    signs = [v for v in (ev(s, x) for s in seq) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def count_roots(seq: Sequence[Dense], lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots in ``(lo, hi]`` (Sturm's theorem)."""
    return sign_changes(seq, lo) - sign_changes(seq, hi)


def _to_dense(p) -> Dense:
    if isinstance(p, Poly):
        return _trim(p.univariate_coeffs())
    return _trim(p)


def sturm_sign_on_interval(p, lo, hi, width=None) -> SturmResult:
    """Classify the sign of ``p`` on the closed interval ``[lo, hi]``.

    ``p`` is a univariate ``Poly`` or a dense coefficient list.  A zero is
    reported with an isolating interval no wider than ``width`` (default
    ``2**-30 * (hi - lo)``) on whose endpoints the square-free part of ``p``
    takes opposite signs, or a degenerate interval ``[r, r]`` at an exact
    rational root.
    """
    lo, hi = Fraction(as_rational(lo)), Fraction(as_rational(hi))
    if not lo < hi:
        raise ValueError("need lo < hi")
    dense = _to_dense(p)
    if not dense:
        raise ZeroPolynomial("sign of the zero polynomial is undefined")
    width = Fraction(width) if width is not None else (hi - lo) / 2 ** 30
    for x in (lo, hi):
        if ev(dense, x) == 0:
            return SturmResult(Verdict.HAS_ZERO, (x, x), tuple(dense))
    sqf = squarefree_part(dense)
    seq = sturm_sequence(sqf)
    if count_roots(seq, lo, hi) == 0:
        v = ev(dense, lo)
        return SturmResult(Verdict.STRICTLY_POSITIVE if v > 0 else Verdict.STRICTLY_NEGATIVE)
    a, b = lo, hi
    while True:
        if b - a <= width and (ev(sqf, a) > 0) != (ev(sqf, b) > 0):
            return SturmResult(Verdict.HAS_ZERO, (a, b), tuple(sqf))
        m = (a + b) / 2
        if ev(sqf, m) == 0:
            return SturmResult(Verdict.HAS_ZERO, (m, m), tuple(sqf))
        if count_roots(seq, a, m) > 0:
            b = m
        else:
            a = m


def cauchy_bound(p: Sequence[Fraction]) -> Fraction:
    p = _trim(p)
    lc = abs(p[-1])
    return 1 + max((abs(c) / lc for c in p[:-1]), default=Fraction(0))
