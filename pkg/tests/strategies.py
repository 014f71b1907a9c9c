"""Hypothesis strategies shared by the property suites."""
from fractions import Fraction

from hypothesis import strategies as st

from csl.algebra import Poly
from csl.exterior import AbstractGen, Chart, DiffForm, FuncVar

small_rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def polys(names, max_terms=4, max_exp=3):
    mono = st.lists(st.tuples(st.sampled_from(names), st.integers(1, max_exp)), max_size=3)
    term = st.tuples(mono, small_rationals)

    def build(terms):
        out = {}
        for m, c in terms:
            acc = {}
            for v, e in m:
                acc[v] = acc.get(v, 0) + e
            key = tuple(sorted(acc.items()))
            out[key] = out.get(key, 0) + c
        return Poly(out)

    return st.lists(term, max_size=max_terms).map(build)


def mixed_chart() -> Chart:
    """Coordinates, a constant, an angle pair and a connection-type generator."""
    s, c = Poly.var("s"), Poly.var("c")
    return Chart(
        coords=("x", "y", "z"),
        consts=("k",),
        funcs=(FuncVar("s", (("dth", c),)), FuncVar("c", (("dth", -s),))),
        gens=(AbstractGen("dth"), AbstractGen("alpha", ((("dx", "dth"), Poly.var("k")),))),
        relations=(("s", "c"),),
        name="mixed",
    )


def sphere_chart() -> Chart:
    return Chart(coords=("a", "b", "e", "g"), relations=(("a", "b", "e", "g"),), sphere=True, name="s3")


def forms(chart: Chart, degree: int, max_terms=3):
    n = chart.dimension
    names = list(chart.variables)
    key = st.lists(st.integers(0, n - 1), min_size=degree, max_size=degree, unique=True).map(
        lambda ks: tuple(sorted(ks)))
    comps = st.lists(st.tuples(key, polys(names, 3, 2)), max_size=max_terms)
    return comps.map(lambda cs: DiffForm(chart, _merge(cs)))


def _merge(cs):
    out = {}
    for k, p in cs:
        out[k] = out.get(k, Poly()) + p
    return out
