"""Exact linear algebra: fraction-free elimination over Q[x] and plain
Gaussian elimination over Q."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .poly import ONE, ZERO, Poly, as_rational, mono_degree


class SingularSystem(ArithmeticError):
    """The coefficient matrix is singular over the fraction field."""

    def __init__(self, determinant: Poly):
        super().__init__(f"singular system (determinant {determinant})")
        self.determinant = determinant


@dataclass(frozen=True)
class PolyFraction:
    num: Poly
    den: Poly

    def __post_init__(self):
        if not self.den:
            raise ZeroDivisionError("zero denominator")

    def reduced(self) -> "PolyFraction":
        return reduce_fraction(self.num, self.den)

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"


def _monomial_gcd(polys: Sequence[Poly]):
    common = None
    for p in polys:
        for m in p.terms:
            d = dict(m)
            if common is None:
                common = d
            else:
                common = {v: min(e, d.get(v, 0)) for v, e in common.items() if d.get(v, 0)}
            if not common:
                return ()
    return tuple(sorted((common or {}).items()))


def _leading_coefficient(p: Poly):
    m = max(p.terms, key=lambda m: (mono_degree(m), m))
    return p.terms[m]


def reduce_fraction(num: Poly, den: Poly) -> PolyFraction:
    """Cancel what can be cancelled without a multivariate gcd.

    Handles constant denominators, exact divisibility, common monomial
    factors, and normalises the denominator's leading coefficient to 1.
    """
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return PolyFraction(ZERO, ONE)
    if den.is_constant():
        return PolyFraction(num / den.constant_term(), ONE)
    try:
        return PolyFraction(num.divexact(den), ONE)
    except ValueError:
        pass
    g = _monomial_gcd([num, den])
    if g:
        gp = Poly._raw({g: 1})
        num, den = num.divexact(gp), den.divexact(gp)
    lc = _leading_coefficient(den)
    return PolyFraction(num / lc, den / lc)


def bareiss(M: Sequence[Sequence[Poly]], b: Sequence[Poly]) -> Tuple[List[Poly], Poly]:
    """Fraction-free solve of ``M x = b``.

    Returns ``(y, D)`` with ``x = y / D``; ``D`` is the determinant of ``M``
    up to sign.  Raises ``SingularSystem`` if ``M`` is singular.
    """
    n = len(M)
    if any(len(row) != n for row in M) or len(b) != n:
        raise ValueError("solve_linear needs a square matrix and a matching right-hand side")
    A = [[_as_poly(x) for x in row] + [_as_poly(bi)] for row, bi in zip(M, b)]
    prev = ONE
    for k in range(n):
        cands = [i for i in range(k, n) if A[i][k]]
        if not cands:
            raise SingularSystem(ZERO)
        # sparsest pivot limits intermediate growth
        piv = min(cands, key=lambda i: (len(A[i][k]), i))
        A[k], A[piv] = A[piv], A[k]
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n + 1):
                t = row_i[j] * akk - aik * row_k[j]
                row_i[j] = t.divexact(prev) if prev != ONE else t
            row_i[k] = ZERO
        prev = akk
    D = A[n - 1][n - 1]
    y: List[Poly] = [ZERO] * n
    for i in range(n - 1, -1, -1):
        acc = D * A[i][n]
        for j in range(i + 1, n):
            if A[i][j]:
                acc = acc - A[i][j] * y[j]
        y[i] = acc.divexact(A[i][i])
    return y, D


def solve_linear(M: Sequence[Sequence[Poly]], b: Sequence[Poly]) -> List[PolyFraction]:
    """Unique solution of a square polynomial system over the fraction field."""
    y, D = bareiss(M, b)
    return [reduce_fraction(yi, D) for yi in y]


def _as_poly(x) -> Poly:
    return x if isinstance(x, Poly) else Poly.const(x)


def solve_rational(rows: Sequence[Dict[int, object]], rhs: Sequence[object], nvars: int) -> Optional[List[Fraction]]:
    """Gaussian elimination over Q on sparse rows ``{column: coefficient}``.

    Returns one solution (free variables set to zero) or ``None`` when the
    system is inconsistent.
    """
    pivots: Dict[int, Tuple[Dict[int, Fraction], Fraction]] = {}
    order: List[int] = []
    for row, r in zip(rows, rhs):
        row = {j: Fraction(c) for j, c in row.items() if c}
        r = Fraction(r)
        # eliminate known pivots
        changed = True
        while changed:
            changed = False
            for j in list(row):
                if j in pivots and j in row:
                    c = row.pop(j)
                    prow, pr = pivots[j]
                    for jj, cc in prow.items():
                        v = row.get(jj, 0) - c * cc
                        if v:
                            row[jj] = v
                        else:
                            row.pop(jj, None)
                    r -= c * pr
                    changed = True
        if not row:
            if r:
                return None
            continue
        p = min(row)
        c = row.pop(p)
        prow = {j: v / c for j, v in row.items()}
        pr = r / c
        # keep existing pivot rows reduced with respect to the new pivot
        for q in order:
            qrow, qr = pivots[q]
            if p in qrow:
                f = qrow.pop(p)
                for jj, cc in prow.items():
                    v = qrow.get(jj, 0) - f * cc
                    if v:
                        qrow[jj] = v
                    else:
                        qrow.pop(jj, None)
                pivots[q] = (qrow, qr - f * pr)
        pivots[p] = (prow, pr)
        order.append(p)
    x = [Fraction(0)] * nvars
    for p, (prow, pr) in pivots.items():
        # free variables are zero, so the fully reduced row gives the value
        x[p] = pr
    return x


def rational_matrix_is_psd(S: Sequence[Sequence[object]]) -> bool:
    """Exact positive-semidefiniteness test for a symmetric rational matrix."""
    A = [[Fraction(as_rational(x) if not isinstance(x, Fraction) else x) for x in row] for row in S]
    n = len(A)
    for i in range(n):
        for j in range(n):
            if A[i][j] != A[j][i]:
                raise ValueError("matrix is not symmetric")
    active = list(range(n))
    while active:
        k = active[0]
        if A[k][k] < 0:
            return False
        if A[k][k] == 0:
            if any(A[k][j] for j in active):
                return False
            active.pop(0)
            continue
        for i in active[1:]:
            f = A[i][k] / A[k][k]
            for j in active[1:]:
                A[i][j] -= f * A[k][j]
        active.pop(0)
    return True
