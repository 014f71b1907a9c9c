"""A small text format for charts, forms and bound hints.

Example::

    chart torus
    const lam1 lam2
    gen dth1
    gen dth2
    func s with d(s) = c*dth1
    func c with d(c) = -s*dth1
    relation s^2 + c^2 = 1
    form w1 = c*dth2

In form expressions ``^`` is the wedge product and ``*`` multiplies by a
scalar; powers are written as repeated ``*`` or ``wpow(form, n)``.
Precedence from tightest: ``d(...)``/atoms, unary ``-``, ``*``, ``^``, ``+ -``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra.poly import ONE, ZERO, Poly, mono_degree
from .exterior import AbstractGen, Chart, ChartError, DiffForm, FuncVar, ext_d, wpow
from .contact import BoundHint

RESERVED = {"d", "wpow", "with", "in", "assumed", "sphere", "not"}
PROPERTIES = ("contact", "psphere", "taut", "round", "reeb-indep")


class SpecError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)
        self.line = line
        self.column = column
        self.message = message


@dataclass(frozen=True)
class SpecFile:
    chart: Chart
    forms: Tuple[Tuple[str, DiffForm], ...] = ()
    hints: Tuple[BoundHint, ...] = ()
    expect: Tuple[Tuple[str, bool], ...] = ()

    def form(self, name: str) -> DiffForm:
        for n, f in self.forms:
            if n == name:
                return f
        raise KeyError(name)

    @property
    def form_names(self) -> List[str]:
        return [n for n, _ in self.forms]


# -- lexer ------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^(),]))")


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    col: int


def _lex(text: str, line: int, col0: int) -> List[_Tok]:
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise SpecError(f"unexpected character {text[pos]!r}", line, col0 + pos)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), col0 + start))
        pos = m.end()
    toks.append(_Tok("end", "", col0 + len(text)))
    return toks


# -- expression parser ----------------------------------------------------------

class _Parser:
    def __init__(self, chart: Chart, text: str, line: int, col0: int, forms: Dict[str, DiffForm],
                 allow_d: bool = True):
        self.chart = chart
        self.toks = _lex(text, line, col0)
        self.i = 0
        self.line = line
        self.forms = forms
        self.allow_d = allow_d

    def error(self, msg, tok=None):
        tok = tok or self.toks[self.i]
        return SpecError(msg, self.line, tok.col + 1)

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self, text=None) -> _Tok:
        tok = self.toks[self.i]
        if text is not None and tok.text != text:
            raise self.error(f"expected {text!r}, found {tok.text or 'end of line'!r}")
        self.i += 1
        return tok

    def parse(self) -> DiffForm:
        f = self.expr()
        if self.peek().kind != "end":
            raise self.error(f"unexpected {self.peek().text!r}")
        return f

    def expr(self) -> DiffForm:
        left = self.wedge()
        while self.peek().text in ("+", "-"):
            op = self.take()
            right = self.wedge()
            if left and right and left.degrees() != right.degrees():
                raise self.error(f"degree mismatch: {left.degree}-form {op.text} {right.degree}-form", op)
            left = left + right if op.text == "+" else left - right
        return left

    def wedge(self) -> DiffForm:
        left = self.prod()
        while self.peek().text == "^":
            self.take()
            left = _wedge(left, self.prod())
        return left

    def prod(self) -> DiffForm:
        left = self.unary()
        while self.peek().text == "*":
            op = self.take()
            right = self.unary()
            if left.degree > 0 and right.degree > 0:
                raise self.error("'*' multiplies by a scalar; use '^' for the wedge of forms", op)
            left = _wedge(left, right)
        return left

    def unary(self) -> DiffForm:
        if self.peek().text == "-":
            self.take()
            return -self.unary()
        if self.peek().text == "+":
            self.take()
            return self.unary()
        return self.atom()

    def atom(self) -> DiffForm:
        tok = self.take()
        if tok.kind == "num":
            return self.chart.scalar(Fraction(tok.text))
        if tok.text == "(":
            f = self.expr()
            self.take(")")
            return f
        if tok.kind == "id":
            if tok.text == "d" and self.peek().text == "(":
                if not self.allow_d:
                    raise self.error("d(...) is not allowed in a declared differential", tok)
                self.take("(")
                f = self.expr()
                self.take(")")
                return ext_d(f)
            if tok.text == "wpow":
                self.take("(")
                f = self.expr()
                self.take(",")
                n = self.take()
                if n.kind != "num" or "/" in n.text:
                    raise self.error("wpow exponent must be a non-negative integer", n)
                self.take(")")
                return wpow(f, int(n.text))
            if tok.text in self.forms:
                return self.forms[tok.text]
            if tok.text in self.chart._gen_index:
                return self.chart.gen(tok.text)
            if tok.text in self.chart._kinds:
                return self.chart.scalar(Poly.var(tok.text))
            raise self.error(f"undeclared name {tok.text!r}", tok)
        raise self.error(f"unexpected {tok.text or 'end of line'!r}", tok)


def _wedge(a: DiffForm, b: DiffForm) -> DiffForm:
    return a * b


def parse_form(chart: Chart, text: str, forms: Optional[Dict[str, DiffForm]] = None) -> DiffForm:
    """Parse one form expression on ``chart``."""
    return _Parser(chart, text, 1, 0, dict(forms or {})).parse()


def parse_poly(chart: Chart, text: str) -> Poly:
    f = parse_form(chart, text)
    if f.degrees() - {0}:
        raise SpecError("expected a scalar expression")
    return f.scalar_part()


# -- spec files -----------------------------------------------------------------------

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_REL_TERM = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*\^\s*2\s*$")
_HINT = re.compile(r"hint\s+([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.+?)\s+in\s*\[\s*([^,\]]+?)\s*,\s*([^\]]+?)\s*\]\s*(assumed)?\s*$")
_WITH = re.compile(r"(gen|func)\s+([A-Za-z_][A-Za-z0-9_]*)\s*(?:with\s+d\s*\(\s*([A-Za-z_][A-Za-z0-9_]*)\s*\)\s*=\s*(.*))?$")
_FORM = re.compile(r"form\s+([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*)$")


def _check_name(name: str, line: int, col: int, seen: Dict[str, int]):
    if not _NAME.match(name) or name in RESERVED:
        raise SpecError(f"invalid name {name!r}", line, col)
    if name in seen:
        raise SpecError(f"{name!r} already declared on line {seen[name]}", line, col)
    seen[name] = line


def parse_spec(text: str) -> SpecFile:
    """Parse a spec file (see the module docstring for the format)."""
    lines = []
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].rstrip()
        if body.strip():
            indent = len(body) - len(body.lstrip())
            lines.append((no, indent, body.strip()))
    if not lines:
        raise SpecError("empty spec: expected a 'chart' line", 1, 1)
    no, ind, first = lines[0]
    parts = first.split()
    if parts[0] != "chart" or len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] != "sphere"):
        raise SpecError("first line must be 'chart <name> [sphere]'", no, ind + 1)
    chart_name, sphere = parts[1], len(parts) == 3
    if not _NAME.match(chart_name):
        raise SpecError(f"invalid chart name {chart_name!r}", no, ind + 6)

    seen: Dict[str, int] = {}
    coords: List[str] = []
    consts: List[str] = []
    decls: List[tuple] = []  # (kind, name, diff_text, line, col)
    relations: List[Tuple[str, ...]] = []
    later: List[tuple] = []
    for no, ind, body in lines[1:]:
        head = body.split(None, 1)[0]
        rest = body[len(head):]
        if head in ("vars", "const"):
            col = ind + len(head) + 1
            names = rest.split()
            if not names:
                raise SpecError(f"'{head}' needs at least one name", no, col)
            for nm in names:
                _check_name(nm, no, ind + 1 + body.index(nm, len(head)), seen)
            (coords if head == "vars" else consts).extend(names)
        elif head in ("gen", "func"):
            m = _WITH.match(body)
            if not m:
                raise SpecError(f"expected '{head} <name> [with d(<name>) = <expr>]'", no, ind + 1)
            kind, nm, dn, dtext = m.groups()
            if dn is not None and dn != nm:
                raise SpecError(f"differential must be declared as d({nm})", no, ind + 1 + m.start(3))
            if kind == "func" and dn is None:
                raise SpecError("a func needs a declared differential", no, ind + 1)
            _check_name(nm, no, ind + 1 + m.start(2), seen)
            decls.append((kind, nm, dtext, no, ind + (m.start(4) if dtext is not None else 0)))
        elif head == "relation":
            m = re.match(r"relation\s+(.+?)\s*=\s*1\s*$", body)
            if not m:
                raise SpecError("expected 'relation v1^2 + ... + vk^2 = 1'", no, ind + 1)
            vs = []
            for term in m.group(1).split("+"):
                t = _REL_TERM.match(term)
                if not t:
                    raise SpecError(f"bad relation term {term.strip()!r}", no, ind + 1 + body.index(term.strip()))
                vs.append(t.group(1))
            relations.append((tuple(vs), no))
        elif head in ("form", "hint", "expect"):
            later.append((head, no, ind, body))
        elif head == "chart":
            raise SpecError("only one chart per file", no, ind + 1)
        else:
            raise SpecError(f"unknown directive {head!r}", no, ind + 1)

    gen_names = [f"d{c}" for c in coords] + [nm for k, nm, *_ in decls if k == "gen"]
    for g in gen_names[: len(coords)]:
        if g in seen:
            raise SpecError(f"{g!r} clashes with the differential of coordinate {g[1:]!r}", seen[g], 1)
    skeleton_gens = tuple(AbstractGen(nm) for k, nm, *_ in decls if k == "gen")
    skeleton_funcs = tuple(FuncVar(nm) for k, nm, *_ in decls if k == "func")
    try:
        skeleton = Chart(tuple(coords), tuple(consts), skeleton_funcs, skeleton_gens, (), False, chart_name)
    except ChartError as e:
        raise SpecError(str(e), lines[0][0], 1) from None
    gens, funcs = [], []
    for kind, nm, dtext, no, col in decls:
        if dtext is None:
            gens.append(AbstractGen(nm))
            continue
        f = _Parser(skeleton, dtext, no, col, {}, allow_d=False).parse()
        want = 2 if kind == "gen" else 1
        if f and f.degrees() != {want}:
            raise SpecError(f"d({nm}) must be a {want}-form", no, col + 1)
        names = skeleton.generators
        if kind == "gen":
            gens.append(AbstractGen(nm, tuple(((names[a], names[b]), p) for (a, b), p in f.comps.items())))
        else:
            funcs.append(FuncVar(nm, tuple((names[a], p) for (a,), p in f.comps.items())))
    rel_lines = [no for _, no in relations]
    try:
        chart = Chart(tuple(coords), tuple(consts), tuple(funcs), tuple(gens),
                      tuple(r for r, _ in relations), sphere, chart_name)
    except (ChartError, ValueError) as e:
        raise SpecError(str(e), rel_lines[0] if rel_lines else lines[0][0], 1) from None

    forms: Dict[str, DiffForm] = {}
    hints: List[BoundHint] = []
    expect: List[Tuple[str, bool]] = []
    for head, no, ind, body in later:
        if head == "form":
            m = _FORM.match(body)
            if not m:
                raise SpecError("expected 'form <name> = <expr>'", no, ind + 1)
            nm, etext = m.groups()
            _check_name(nm, no, ind + 1 + m.start(1), seen)
            f = _Parser(chart, etext, no, ind + m.start(2), forms).parse()
            if len(f.degrees()) > 1:
                raise SpecError(f"form {nm} mixes degrees", no, ind + 1 + m.start(2))
            forms[nm] = f
        elif head == "hint":
            m = _HINT.match(body)
            if not m:
                raise SpecError("expected 'hint <name> = <expr> in [lo, hi] [assumed]'", no, ind + 1)
            nm, etext, lo, hi, assumed = m.groups()
            _check_name(nm, no, ind + 1 + m.start(1), seen)
            f = _Parser(chart, etext, no, ind + m.start(2), {}).parse()
            if f.degrees() - {0}:
                raise SpecError("a hint must be a scalar expression", no, ind + 1 + m.start(2))
            try:
                hints.append(BoundHint(f.scalar_part(), Fraction(lo), Fraction(hi), bool(assumed), nm))
            except ValueError as e:
                raise SpecError(str(e), no, ind + 1 + m.start(3)) from None
        else:
            words = body.split()[1:]
            neg = bool(words) and words[0] == "not"
            if neg:
                words = words[1:]
            if len(words) != 1 or words[0] not in PROPERTIES:
                raise SpecError(f"expected 'expect [not] <{'|'.join(PROPERTIES)}>'", no, ind + 1)
            expect.append((words[0], not neg))
    return SpecFile(chart, tuple(forms.items()), tuple(hints), tuple(expect))


# -- printing ---------------------------------------------------------------------------

def _num(c) -> str:
    return str(Fraction(c))


def _mono(m) -> List[str]:
    out = []
    for v, e in m:
        out.extend([v] * e)
    return out


def _terms(items) -> str:
    """Join ``(coefficient, [factor, ...])`` pairs as a signed sum."""
    parts = []
    for c, factors in items:
        c = Fraction(c)
        neg = c < 0
        a = -c if neg else c
        body = "*".join(([_num(a)] if a != 1 or not factors else []) + factors)
        parts.append(("-" if neg else "+", body))
    if not parts:
        return "0"
    s = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def format_poly(p: Poly) -> str:
    return _terms((c, _mono(m)) for m, c in p.sorted_terms())


def format_form(f: DiffForm) -> str:
    names = f.chart.generators
    items = []
    for key in sorted(f.comps, key=lambda k: (len(k), k)):
        gens = "^".join(names[i] for i in key)
        for m, c in f.comps[key].sorted_terms():
            factors = _mono(m)
            if gens:
                factors = factors + [gens]
            items.append((c, factors))
    return _terms(items)


def format_spec(spec: SpecFile) -> str:
    ch = spec.chart
    out = [f"chart {ch.name}" + (" sphere" if ch.sphere else "")]
    if ch.coords:
        out.append("vars " + " ".join(ch.coords))
    if ch.consts:
        out.append("const " + " ".join(ch.consts))
    for g in ch.gens:
        if g.differential:
            out.append(f"gen {g.name} with d({g.name}) = {format_form(_declared_2form(ch, g.differential))}")
        else:
            out.append(f"gen {g.name}")
    for fv in ch.funcs:
        f = ch.zero()
        for gname, p in fv.differential:
            f = f + ch.gen(gname) * p
        out.append(f"func {fv.name} with d({fv.name}) = {format_form(f)}")
    for r in ch.relations:
        out.append("relation " + " + ".join(f"{v}^2" for v in r.variables) + " = 1")
    for name, f in spec.forms:
        out.append(f"form {name} = {format_form(f)}")
    for h in spec.hints:
        out.append(f"hint {h.name} = {format_poly(h.auxiliary)} in [{_num(h.lo)}, {_num(h.hi)}]"
                   + (" assumed" if h.assumed else ""))
    for prop, val in spec.expect:
        out.append(f"expect {'' if val else 'not '}{prop}")
    return "\n".join(out) + "\n"


def _declared_2form(ch: Chart, differential) -> DiffForm:
    f = ch.zero()
    for (a, b), p in differential:
        f = f + (ch.gen(a) * ch.gen(b)) * p
    return f
