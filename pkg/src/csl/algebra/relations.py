"""Reduction modulo unit-sphere relations ``sum(v**2 for v in group) == 1``.

Each group rewrites ``pivot**2 -> 1 - sum(other**2)`` where the pivot is the
last declared variable.  Groups are pairwise disjoint, so the relations form
a Groebner basis (pairwise coprime leading terms) and the reduced form is a
canonical representative of the residue class.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Sequence, Tuple

from .poly import ONE, Monomial, Poly, Rational


class UndeclaredVariable(ValueError):
    pass


@dataclass(frozen=True)
class RelationGroup:
    variables: Tuple[str, ...]

    def __post_init__(self):
        vs = tuple(self.variables)
        if not vs:
            raise ValueError("empty relation group")
        if len(set(vs)) != len(vs):
            raise ValueError(f"repeated variable in relation group {vs}")
        object.__setattr__(self, "variables", vs)

    @property
    def pivot(self) -> str:
        return self.variables[-1]

    @property
    def others(self) -> Tuple[str, ...]:
        return self.variables[:-1]

    def relation(self) -> Poly:
        """The polynomial ``sum v^2 - 1`` whose vanishing the group imposes."""
        return sum((Poly.var(v) ** 2 for v in self.variables), Poly.const(-1))

    def holds_at(self, point) -> bool:
        return sum(point[v] ** 2 for v in self.variables) == 1


@lru_cache(maxsize=4096)
def _pivot_power(group: RelationGroup, k: int) -> Poly:
    base = ONE - sum((Poly.var(v) ** 2 for v in group.others), Poly.const(0))
    return base ** k


def check_disjoint(groups: Sequence[RelationGroup]) -> None:
    seen: Dict[str, int] = {}
    for i, g in enumerate(groups):
        for v in g.variables:
            if v in seen:
                raise ValueError(f"variable {v!r} appears in relation groups {seen[v]} and {i}")
            seen[v] = i


def normal_form(p: Poly, groups: Sequence[RelationGroup], declared: Iterable[str] | None = None) -> Poly:
    """Canonical representative of ``p`` modulo the unit relations of ``groups``.

    If ``declared`` is given, every variable of ``p`` must belong to it.
    """
    if declared is not None:
        extra = p.variables() - set(declared)
        if extra:
            raise UndeclaredVariable(f"undeclared variable(s): {', '.join(sorted(extra))}")
    if not groups or not p:
        return p
    terms: Dict[Monomial, Rational] = dict(p.terms)
    for g in groups:
        piv = g.pivot
        if not any(e >= 2 for m in terms for v, e in m if v == piv):
            continue
        out: Dict[Monomial, Rational] = {}
        for m, c in terms.items():
            e = 0
            for v, ev in m:
                if v == piv:
                    e = ev
                    break
            if e < 2:
                out[m] = out.get(m, 0) + c
                continue
            rest = tuple((v, ev if v != piv else e % 2) for v, ev in m if v != piv or e % 2)
            repl = _pivot_power(g, e // 2) * Poly._raw({rest: c})
            for rm, rc in repl.terms.items():
                out[rm] = out.get(rm, 0) + rc
        terms = {m: c for m, c in out.items() if c}
    return Poly._raw(terms)


def is_normal(p: Poly, groups: Sequence[RelationGroup]) -> bool:
    pivots = {g.pivot for g in groups}
    return all(e < 2 for m in p.terms for v, e in m if v in pivots)
