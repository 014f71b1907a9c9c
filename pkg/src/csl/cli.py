"""Command-line front end.

Exit codes: 0 certified (or every expectation reproduced), 1 refuted or
contradicted, 2 inconclusive, 3 input error.  ``--json`` prints the report as
JSON with sorted keys; only the ``timing`` field varies between runs.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from .algebra import Poly
from .constructions import (
    CATALOG_NAMES, ConstructionError, ExampleEntry, NotFound, entry, family_check, hurwitz_radon_family,
    invariant_nondegeneracy_scan, relation_check, rho,
)
from .contact import (
    NotContact, SelfCheckFailed, Status, _jsonable, nonvanishing_certificate, reeb_field, volume_coefficient,
)
from .dsl import SpecError, SpecFile, format_poly, parse_spec
from .exterior import ChartError
from .psphere import (
    ConsistencyError, PSphereSpec, odd_dim_obstruction, psphere_check, reeb_independence_check, round_check,
    taut_check,
)

EXIT_OK, EXIT_REFUTED, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3
PROPERTIES = ("contact", "psphere", "taut", "round", "reeb-indep")


class InputError(Exception):
    pass


def threads() -> int:
    raw = os.environ.get("CSL_THREADS")
    cpus = os.cpu_count() or 1
    if raw is None:
        return cpus
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"CSL_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise InputError(f"CSL_THREADS must be a positive integer, got {raw!r}")
    return min(n, cpus)


def _verdict_of(status: Status) -> str:
    if status in (Status.CERTIFIED_CONSTANT, Status.CERTIFIED_SIGN):
        return "certified"
    return "refuted" if status is Status.REFUTED else "inconclusive"


def _exit_for(verdicts: Sequence[str]) -> int:
    if any(v in ("refuted", "contradicted") for v in verdicts):
        return EXIT_REFUTED
    if any(v == "inconclusive" for v in verdicts):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


# -- property runners ---------------------------------------------------------------------

def _as_pspec(spec: SpecFile, names: Optional[Sequence[str]]) -> PSphereSpec:
    names = list(names) if names else [n for n, f in spec.forms if f.degrees() == {1}]
    if not names:
        raise InputError("no 1-forms selected")
    forms = []
    for n in names:
        try:
            forms.append(spec.form(n))
        except KeyError:
            raise InputError(f"unknown form {n!r}") from None
    return PSphereSpec(spec.chart, tuple(forms), spec.hints, spec.chart.name)


def run_property(prop: str, ps: PSphereSpec, grid: int, seed: int) -> dict:
    """One property check, as ``{"property", "verdict", "detail"}``."""
    if prop == "contact":
        per_form = []
        for w in ps.generators:
            vol = volume_coefficient(w)
            cert = nonvanishing_certificate(vol.coefficient, w.chart, ps.hints, grid, seed)
            per_form.append(cert)
        verdicts = [_verdict_of(c.status) for c in per_form]
        verdict = ("refuted" if "refuted" in verdicts else "inconclusive" if "inconclusive" in verdicts
                   else "certified")
        return {"property": prop, "verdict": verdict, "detail": {"forms": [c.to_dict() for c in per_form]}}
    if prop == "psphere":
        cert = psphere_check(ps, grid_size=grid, seed=seed)
        return {"property": prop, "verdict": _verdict_of(cert.status), "detail": cert.to_dict()}
    if prop == "taut":
        rep = taut_check(ps)
        return {"property": prop, "verdict": "certified" if rep.taut else "refuted", "detail": rep.to_dict()}
    if prop == "round":
        rep = round_check(ps)
        return {"property": prop, "verdict": "certified" if rep.round else "refuted", "detail": rep.to_dict()}
    if prop == "reeb-indep":
        cert = reeb_independence_check(ps, grid_size=grid, seed=seed)
        return {"property": prop, "verdict": _verdict_of(cert.status), "detail": cert.to_dict()}
    raise InputError(f"unknown property {prop!r}")


def _compare(expected, observed) -> str:
    if observed is None:
        return "inconclusive"
    return "reproduced" if observed == expected else "contradicted"


def verify_entry(e: ExampleEntry, grid: int = 10_000, seed: int = 0) -> dict:
    """Re-derive every recorded expectation of a catalog entry."""
    checks = []
    cache: Dict[str, dict] = {}

    def get(prop):
        if prop not in cache:
            cache[prop] = run_property(prop, e.spec, grid, seed)
        return cache[prop]

    for exp in e.expected:
        if exp.prop == "volume":
            res = get("psphere")
            value = res["detail"].get("value")
            observed = Fraction(value) if res["detail"]["status"] == "CertifiedConstant" else None
            if observed is None and res["verdict"] != "inconclusive":
                observed = "not constant"
            status = _compare(Fraction(exp.value), observed)
            row = {"property": "volume", "expected": str(exp.value),
                   "observed": str(observed) if observed is not None else None}
        else:
            res = get(exp.prop)
            observed = {"certified": True, "refuted": False}.get(res["verdict"])
            status = _compare(exp.value, observed)
            row = {"property": exp.prop, "expected": exp.value, "observed": observed}
            if res["detail"].get("method"):
                row["method"] = res["detail"]["method"]
        row.update(status=status, provenance=exp.provenance)
        if exp.printed is not None:
            row["printed"] = str(exp.printed)
        checks.append(row)
    return {"name": e.name, "description": e.description, "checks": checks,
            "details": {k: v["detail"] for k, v in sorted(cache.items())},
            "exit_code": _exit_for([c["status"] for c in checks])}


def _verify_by_name(args) -> dict:
    name, grid, seed = args
    return verify_entry(entry(name), grid, seed)


# -- subcommands ----------------------------------------------------------------------------

def _load(path: str) -> SpecFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise InputError(f"{path} is not UTF-8") from None
    return parse_spec(text)


def _split(names: Optional[str]) -> Optional[List[str]]:
    return [n.strip() for n in names.split(",") if n.strip()] if names else None


def cmd_catalog(a) -> dict:
    rows = []
    for name in CATALOG_NAMES:
        e = entry(name)
        rows.append({"name": e.name, "description": e.description, "p": e.spec.p,
                     "manifold_dimension": e.spec.manifold_dimension,
                     "expected": {x.prop: (str(x.value) if x.prop == "volume" else x.value) for x in e.expected}})
    return {"result": {"entries": rows}, "exit_code": EXIT_OK}


def cmd_verify(a) -> dict:
    if a.all == bool(a.name):
        raise InputError("give an example name or --all")
    names = list(CATALOG_NAMES) if a.all else [a.name]
    for n in names:
        entry(n)  # raises NotFound early
    jobs = [(n, a.grid, a.seed) for n in names]
    workers = min(threads(), len(jobs))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_verify_by_name, jobs))
    else:
        results = [_verify_by_name(j) for j in jobs]
    codes = [r["exit_code"] for r in results]
    code = EXIT_REFUTED if EXIT_REFUTED in codes else EXIT_INCONCLUSIVE if EXIT_INCONCLUSIVE in codes else EXIT_OK
    return {"result": {"entries": results}, "exit_code": code}


def cmd_check(a) -> dict:
    spec = _load(a.file)
    ps = _as_pspec(spec, _split(a.forms))
    checks = []
    if a.property:
        for prop in a.property:
            res = run_property(prop, ps, a.grid, a.seed)
            checks.append(res)
        code = _exit_for([c["verdict"] for c in checks])
    elif spec.expect:
        for prop, want in spec.expect:
            res = run_property(prop, ps, a.grid, a.seed)
            observed = {"certified": True, "refuted": False}.get(res["verdict"])
            res.update(expected=want, observed=observed, status=_compare(want, observed))
            checks.append(res)
        code = _exit_for([c["status"] for c in checks])
    else:
        raise InputError("nothing to check: pass --property or add 'expect' lines to the file")
    return {"result": {"file": a.file, "forms": [f for f in (_split(a.forms) or
                                                               [n for n, f in spec.forms if f.degrees() == {1}])],
                       "checks": checks}, "exit_code": code}


def cmd_reeb(a) -> dict:
    spec = _load(a.file)
    try:
        w = spec.form(a.form)
    except KeyError:
        raise InputError(f"unknown form {a.form!r}") from None
    try:
        R = reeb_field(w)
    except NotContact as exc:
        return {"result": {"form": a.form, "error": str(exc)}, "exit_code": EXIT_REFUTED}
    ch = spec.chart
    comps = {ch.generators[i]: format_poly(R.component(i)) for i in range(ch.dimension) if R.component(i)}
    return {"result": {"form": a.form, "field": comps, "denominator": format_poly(R.den), "checked": True},
            "exit_code": EXIT_OK}


def cmd_rho(a) -> dict:
    if a.n < 1:
        raise InputError("n must be positive")
    return {"result": {"n": a.n, "rho": rho(a.n)}, "exit_code": EXIT_OK, "text": str(rho(a.n))}


def cmd_hr(a) -> dict:
    try:
        fam = hurwitz_radon_family(a.m)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out = {"m": a.m, "count": len(fam.matrices), "rho": rho(a.m),
           "family_check": family_check(a.m, fam.matrices).ok}
    ok = out["family_check"]
    if a.m % 4 == 0:
        rc = relation_check(fam)
        out["relation_check"] = {"duality": rc.duality, "contraction": rc.contraction,
                                 "failures": list(rc.failures)}
        ok = ok and rc.ok
    if a.emit:
        Path(a.emit).write_text(fam.to_json() + "\n", encoding="utf-8")
        out["emitted"] = a.emit
    return {"result": out, "exit_code": EXIT_OK if ok else EXIT_REFUTED}


def cmd_obstruct(a) -> dict:
    spec = _load(a.file)
    ps = _as_pspec(spec, _split(a.forms))
    try:
        rep = odd_dim_obstruction(ps)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    d = rep.to_dict()
    d["verified"] = rep.verify()
    d["conclusion"] = "some member of the circle is not contact at the point"
    return {"result": d, "exit_code": EXIT_REFUTED if d["verified"] else EXIT_INCONCLUSIVE}


def cmd_scan(a) -> dict:
    spec = _load(a.file)
    names = _split(a.forms) or [n for n, f in spec.forms if f.degrees() <= {0}]
    funcs: List[Poly] = []
    for n in names:
        try:
            f = spec.form(n)
        except KeyError:
            raise InputError(f"unknown form {n!r}") from None
        if f.degrees() - {0}:
            raise InputError(f"{n!r} is not a function")
        funcs.append(f.scalar_part())
    if not funcs:
        raise InputError("no functions to scan")
    rep = invariant_nondegeneracy_scan(funcs, spec.chart, a.grid, a.seed)
    return {"result": {"functions": names, **rep.to_dict()},
            "exit_code": EXIT_REFUTED if rep.refuted else EXIT_INCONCLUSIVE}


# -- rendering ---------------------------------------------------------------------------------

def _render(obj, indent: int = 0) -> List[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_render(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v) if not isinstance(v, str) else v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and v:
                sub = _render(v, indent + 1)
                lines.append(f"{pad}- {sub[0].strip()}")
                lines.extend(sub[1:])
            else:
                lines.append(f"{pad}- {v if isinstance(v, str) else json.dumps(v)}")
    else:
        lines.append(f"{pad}{obj}")
    return lines


def render_text(report: dict) -> str:
    if "text" in report:
        return report["text"]
    head = f"{' '.join(report['command'])}: exit {report['exit_code']}"
    body = _render({k: v for k, v in report.items() if k not in ("command", "exit_code", "timing")})
    return "\n".join([head] + body)


# -- entry point --------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="csl", description="Exact checks for contact forms, circles and spheres.")
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, grid=10_000):
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="print the report as JSON")
        sp.add_argument("--grid", type=int, default=grid, help="sample count for the numeric fallback")
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("catalog", help="list the built-in examples")
    common(sp)
    sp.set_defaults(func=cmd_catalog)
    sp = sub.add_parser("verify", help="re-derive the recorded properties of catalog examples")
    sp.add_argument("name", nargs="?")
    sp.add_argument("--all", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_verify)
    sp = sub.add_parser("check", help="check properties of the forms in a spec file")
    sp.add_argument("file")
    sp.add_argument("--property", action="append", choices=PROPERTIES)
    sp.add_argument("--forms", help="comma-separated form names (default: all 1-forms)")
    common(sp)
    sp.set_defaults(func=cmd_check)
    sp = sub.add_parser("reeb", help="compute the Reeb field of one form")
    sp.add_argument("file")
    sp.add_argument("--form", required=True)
    common(sp)
    sp.set_defaults(func=cmd_reeb)
    sp = sub.add_parser("rho", help="number of matrices in a Hurwitz-Radon family")
    sp.add_argument("n", type=int)
    common(sp)
    sp.set_defaults(func=cmd_rho)
    sp = sub.add_parser("hr", help="build and check a Hurwitz-Radon family")
    sp.add_argument("m", type=int)
    sp.add_argument("--emit", help="write the family as JSON to this path")
    common(sp)
    sp.set_defaults(func=cmd_hr)
    sp = sub.add_parser("obstruct", help="zero of the circle polynomial for a pair in dimension 4n+1")
    sp.add_argument("file")
    sp.add_argument("--forms")
    common(sp)
    sp.set_defaults(func=cmd_obstruct)
    sp = sub.add_parser("scan", help="search for a simultaneous zero of sum(lam*phi) and its differential")
    sp.add_argument("file")
    sp.add_argument("--forms")
    common(sp, grid=200)
    sp.set_defaults(func=cmd_scan)
    return p


def run(argv: Sequence[str]) -> dict:
    """Execute a command line and return the report (never exits)."""
    argv = list(argv)
    parser = build_parser()
    t0 = time.perf_counter()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_INPUT
        return {"command": argv, "exit_code": EXIT_OK if code == 0 else EXIT_INPUT,
                "error": None if code == 0 else "usage error", "timing": {"seconds": 0.0}, "printed": True}
    try:
        report = a.func(a)
    except SpecError as exc:
        report = {"error": str(exc), "line": exc.line, "column": exc.column, "exit_code": EXIT_INPUT}
    except (SelfCheckFailed, ConsistencyError) as exc:
        report = {"error": f"internal consistency check failed: {exc}", "exit_code": EXIT_INCONCLUSIVE}
    except NotFound as exc:
        report = {"error": f"unknown example: {exc.args[0]}", "exit_code": EXIT_INPUT}
    except (InputError, ChartError, ConstructionError, ValueError) as exc:
        report = {"error": str(exc).strip("'\""), "exit_code": EXIT_INPUT}
    report["command"] = argv
    report["timing"] = {"seconds": round(time.perf_counter() - t0, 6)}
    report["json"] = bool(getattr(a, "json", False))
    return report


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    report = run(argv)
    if report.pop("printed", False):
        # argparse already wrote help or usage
        return int(report["exit_code"])
    as_json = report.pop("json", False)
    text = report.pop("text", None)
    if as_json:
        print(json.dumps(_jsonable(report), sort_keys=True, indent=2))
    elif text is not None and "error" not in report:
        print(text)
    else:
        stream = sys.stderr if "error" in report and report["error"] else sys.stdout
        if "error" in report and report["error"]:
            print(f"error: {report['error']}", file=stream)
        else:
            print(render_text(report))
    return int(report["exit_code"])


if __name__ == "__main__":
    sys.exit(main())
