from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from csl.algebra import Poly
from csl.contact import BoundHint
from csl.dsl import SpecError, SpecFile, format_form, format_spec, parse_form, parse_poly, parse_spec
from csl.exterior import AbstractGen, Chart, DiffForm, FuncVar, ext_d, wedge, wpow

from strategies import polys, small_rationals

R7 = Chart(coords=tuple(f"x{i}" for i in range(1, 8)), name="r7")


def test_parses_the_first_seven_dimensional_form():
    sf = parse_spec("chart r7\nvars x1 x2 x3 x4 x5 x6 x7\nform omega1 = x1*dx2 + x3*dx4 + x5*dx6 + dx7\n")
    w = sf.form("omega1")
    X = [Poly.var(f"x{i}") for i in range(1, 8)]
    ch = sf.chart
    assert w == ch.d("x2") * X[0] + ch.d("x4") * X[2] + ch.d("x6") * X[4] + ch.d("x7")


def test_precedence_and_builtins():
    ch = Chart(coords=("x", "y", "z"))
    w = parse_form(ch, "dz + x*dy")
    assert parse_form(ch, "wpow(d(dz + x*dy), 1)") == ext_d(w)
    assert parse_form(ch, "dx ^ dy + dz ^ dx") == wedge(ch.d("x"), ch.d("y")) + wedge(ch.d("z"), ch.d("x"))
    assert parse_form(ch, "-1/2*x*dy") == ch.d("y") * (Poly.var("x") * Fraction(-1, 2))
    assert parse_form(ch, "(x + y)*dz ^ dx") == wedge(ch.d("z"), ch.d("x")) * (Poly.var("x") + Poly.var("y"))
    assert parse_form(ch, "w ^ d(w)", {"w": w}) == wedge(w, ext_d(w))
    assert parse_poly(ch, "x*x - 3/4") == Poly.var("x") * Poly.var("x") - Fraction(3, 4)


@pytest.mark.parametrize("text,fragment,line", [
    ("chart c\nvars x1\nform bad = dx1 + x1\n", "degree mismatch", 3),
    ("chart c\nvars x\nform a = y*dx\n", "y", 3),
    ("chart c\nvars x\nform a = dx ^ \n", "", 3),
    ("chart c\nvars x\nvars x\n", "x", 3),
    ("vars x\n", "chart", 1),
    ("chart c\nvars x\nform a = x $ dx\n", "", 3),
    ("chart c\nvars x y\nform a = dx * dy\n", "", 3),
    ("chart c\nvars x\nrelation x^2 = 2\n", "relation", 3),
    ("chart c\nvars x\nbogus x\n", "bogus", 3),
    ("chart c\nvars x\nexpect shiny\n", "expect", 3),
])
def test_errors_carry_positions(text, fragment, line):
    with pytest.raises(SpecError) as info:
        parse_spec(text)
    assert info.value.line == line and info.value.column >= 1
    assert fragment in str(info.value)


def test_form_names_must_be_unique_and_not_reserved():
    with pytest.raises(SpecError):
        parse_spec("chart c\nvars x\nform a = dx\nform a = dx\n")
    with pytest.raises(SpecError):
        parse_spec("chart c\nvars x\nform with = dx\n")


def test_hint_and_expect_lines():
    sf = parse_spec("chart s2 sphere\nvars x y z\nrelation x^2 + y^2 + z^2 = 1\n"
                    "form w = x*dy - y*dx\nhint u = x + y in [-2, 2] assumed\nexpect not psphere\n")
    assert sf.hints == (BoundHint(Poly.var("x") + Poly.var("y"), -2, 2, True, "u"),)
    assert sf.expect == (("psphere", False),)


# -- random round trips ------------------------------------------------------------------------

@st.composite
def spec_files(draw):
    sphere = draw(st.booleans())
    coords = tuple(draw(st.lists(st.sampled_from(["x", "y", "z", "w"]), min_size=1, max_size=3, unique=True)))
    consts = tuple(draw(st.lists(st.sampled_from(["k", "m", "n"]), max_size=2, unique=True)))
    relations = []
    if sphere:
        relations.append(coords)
    if consts and draw(st.booleans()):
        relations.append(consts)
    gens, funcs = [], []
    if not sphere:
        gen_names = [f"d{c}" for c in coords]
        for gname in draw(st.lists(st.sampled_from(["g", "h"]), max_size=2, unique=True)):
            diff = []
            if len(gen_names) >= 2 and draw(st.booleans()):
                i = draw(st.integers(0, len(gen_names) - 2))
                j = draw(st.integers(i + 1, len(gen_names) - 1))
                diff.append(((gen_names[i], gen_names[j]), Poly.const(draw(small_rationals.filter(bool)))))
            gens.append(AbstractGen(gname, tuple(diff)))
            gen_names.append(gname)
        if draw(st.booleans()):
            g = draw(st.sampled_from(gen_names))
            s, c = Poly.var("s"), Poly.var("c")
            funcs = [FuncVar("s", ((g, c),)), FuncVar("c", ((g, -s),))]
            relations.append(("s", "c"))
    chart = Chart(coords, consts, tuple(funcs), tuple(gens), tuple(relations), sphere, "rt")
    names = list(chart.variables)
    forms = []
    for i in range(draw(st.integers(1, 3))):
        deg = draw(st.integers(0, min(2, chart.dimension)))
        comps = {}
        for _ in range(draw(st.integers(0, 3))):
            key = tuple(sorted(draw(st.lists(st.integers(0, chart.dimension - 1), min_size=deg, max_size=deg,
                                             unique=True))))
            comps[key] = comps.get(key, Poly()) + draw(polys(names, 3, 2))
        forms.append((f"f{i}", DiffForm(chart, comps)))
    hints = []
    if draw(st.booleans()):
        lo = draw(small_rationals)
        hints.append(BoundHint(chart.nf(draw(polys(names, 3, 2))), lo, lo + draw(st.integers(1, 3)),
                               draw(st.booleans()), "u"))
    expect = tuple(draw(st.lists(st.tuples(st.sampled_from(["contact", "psphere", "taut", "round", "reeb-indep"]),
                                           st.booleans()), max_size=3)))
    return SpecFile(chart, tuple(forms), tuple(hints), expect)


@settings(max_examples=500)
@given(spec_files())
def test_print_parse_round_trip(sf):
    text = format_spec(sf)
    again = parse_spec(text)
    assert again == sf
    assert format_spec(again) == text


@settings(max_examples=200)
@given(st.integers(0, 2).flatmap(lambda k: st.lists(
    st.tuples(st.lists(st.integers(0, 6), min_size=k, max_size=k, unique=True), polys(list(R7.variables), 3, 2)),
    max_size=3)))
def test_form_printing_round_trips(comps):
    f = R7.zero()
    for key, p in comps:
        g = R7.scalar(p)
        for i in key:
            g = wedge(g, R7.gen(R7.generators[i]))
        f = f + g
    if len(f.degrees()) <= 1:
        assert parse_form(R7, format_form(f)) == f
