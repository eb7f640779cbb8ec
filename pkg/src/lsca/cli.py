"""Command-line front end: lsca {check, equations, coeff, refute, list, export}.

Exit codes: 0 pass, 1 verification failure, 2 parse error, 3 usage or constraint error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import __version__
from .arith import FormalPoly, PoleError, as_rational
from .catalog import (
    FAMILY_IDS,
    AnsatzError,
    CatalogError,
    StaleWitnessError,
    ansatz_from_algebra,
    equation_residuals,
    family_ansatz,
    family_spec,
    family_structure_constants,
    family_W,
    list_refutation_witnesses,
    make_family,
    make_vir_lsc,
    make_virasoro,
    make_W,
    make_w22,
    normalize_assignment,
    verify_refutations,
)
from .coeff import verify_corollary, verify_left_symmetry_window, verify_lie_window
from .conformal import (
    ConformalAlgebra,
    ConstraintError,
    IncompatibleError,
    UnknownGeneratorError,
    is_compatible_structure,
    render_vec,
    residuals_jacobi,
    residuals_left_symmetric,
    residuals_skew,
)
from .dsl import ParseError, load, to_dsl

SCHEMA = "report-v1"
EXIT_PASS, EXIT_FAIL, EXIT_PARSE, EXIT_USAGE = 0, 1, 2, 3
DEFAULT_TERM_CAP = 12
COLOR_ENV = "LSCA_COLOR"  # always | never | auto (default); NO_COLOR is honoured too

# catalog structures beyond the numbered families: name -> (builder, default comparison)
EXTRAS = {
    "W": (lambda: make_W(), None),
    "VIR": (make_virasoro, None),
    "VIRLSC": (lambda: make_vir_lsc(), make_virasoro),
    "W22": (make_w22, None),
}
AXIOMS = {"skew": ("skew",), "jacobi": ("jacobi",), "lie": ("skew", "jacobi"),
          "lsc": ("left-symmetry",), "compat": ("compat",)}


class UsageError(Exception):
    pass


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


# rendering


def cap_terms(pieces: list[str], cap: int | None) -> str:
    """Join term strings, replacing the overflow with a '+... (k terms)' tail."""
    if cap is None or len(pieces) <= cap:
        return "".join(pieces) if pieces else "0"
    head = "".join(pieces[:cap])
    return f"{head} +… ({len(pieces) - cap} terms)"


def vec_pieces(vec, generators) -> list[str]:
    """One string per monomial of a generator vector, signs included."""
    out = []
    for p, g in zip(vec, generators):
        for exps, c in p.sorted_terms():
            body = FormalPoly(p.symbols, {exps: c}).render()
            neg = body.startswith("-")
            body = body[1:] if neg else body
            term = f"{g}" if body == "1" else f"({body})*{g}"
            if out:
                out.append((" - " if neg else " + ") + term)
            else:
                out.append(("-" if neg else "") + term)
    return out


def split_top(text: str) -> list[str]:
    """Split a rendered sum at top-level ' + ' / ' - ' separators."""
    out, depth, start, i = [], 0, 0, 0
    while i < len(text):
        ch = text[i]
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        elif depth == 0 and text.startswith((" + ", " - "), i) and i > start:
            out.append(text[start:i])
            start = i
            i += 3
            continue
        i += 1
    out.append(text[start:])
    return out


def _use_color(stream) -> bool:
    mode = os.environ.get(COLOR_ENV, "auto").lower()
    if mode == "always":
        return True
    if mode == "never" or "NO_COLOR" in os.environ:
        return False
    return hasattr(stream, "isatty") and stream.isatty()


def _status(ok: bool, color: bool) -> str:
    word = "PASS" if ok else "FAIL"
    if not color:
        return word
    return f"\033[32m{word}\033[0m" if ok else f"\033[31m{word}\033[0m"


def _q(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


# structures


def parse_sets(items: list[str] | None) -> dict[str, object]:
    out: dict[str, object] = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        name, value = name.strip(), value.strip()
        if not sep or not name:
            raise UsageError(f"--set expects name=value, got {item!r}")
        if name in out:
            raise UsageError(f"--set {name} given twice")
        if value.lower() in ("symbolic", "sym"):
            out[name] = None
            continue
        try:
            out[name] = as_rational(value)
        except (TypeError, ValueError, ZeroDivisionError):
            raise UsageError(f"--set {name}: {value!r} is not a rational number") from None
    return out


def resolve_path(path: str) -> tuple[Path | None, str]:
    """A file on disk, else a packaged example of the same basename."""
    p = Path(path)
    if p.is_file():
        return p, p.read_text(encoding="utf-8")
    ref = resources.files("lsca") / "examples" / p.name
    if ref.is_file():
        return None, ref.read_text(encoding="utf-8")
    raise UsageError(f"no such file: {path}")


class Target:
    """The structure under test plus what it is compared against."""

    def __init__(self, A, ident, source, values, against=None, family=None, ab=("a", "b")):
        self.A = A
        self.ident = ident
        self.source = source
        self.values = values
        self.against = against
        self.family = family
        self.ab = ab

    def describe(self) -> dict:
        return {
            "source": self.source,
            "id": self.ident,
            "name": self.A.name,
            "kind": self.A.kind,
            "generators": list(self.A.generators),
            "params": {p: ("symbolic" if p not in self.values or self.values[p] is None
                           else _q(self.values[p])) for p in self.A.params},
        }


def _apply(A: ConformalAlgebra, values: dict) -> ConformalAlgebra:
    concrete = {k: v for k, v in values.items() if v is not None and k in A.params}
    return A.with_params(concrete) if concrete else A


def _against_named(name: str, values: dict):
    key = name.upper()
    if key == "W":
        a, b = values.get("a"), values.get("b")
        return make_W("a" if a is None else a, "b" if b is None else b)
    if key in EXTRAS:
        return EXTRAS[key][0]()
    _, text = resolve_path(name)
    return _apply(load(text), values)


def load_target(args, need_family: bool = False) -> Target:
    values = parse_sets(getattr(args, "set", None))
    fam = getattr(args, "family", None)
    path = getattr(args, "input", None)
    if bool(fam) == bool(path):
        raise UsageError("give exactly one of an input file or --family")
    against_name = getattr(args, "against", None)
    if fam:
        key = fam.upper()
        if key in EXTRAS and not key.startswith("T"):
            if need_family:
                raise UsageError(f"{fam} is not a numbered family (T1..T11)")
            build, cmp = EXTRAS[key]
            A = build()
            unknown = [k for k in values if k not in A.params]
            if unknown:
                raise ConstraintError(f"{A.name} has no parameter(s) {', '.join(unknown)}")
            A = _apply(A, values)
            against = _against_named(against_name, values) if against_name else (cmp() if cmp else None)
            return Target(A, A.name, "catalog", values, against)
        spec = family_spec(fam)
        norm = normalize_assignment(spec, values)
        A = make_family(spec.id, norm)
        ab = family_structure_constants(spec.id, norm)
        against = _against_named(against_name, values) if against_name else family_W(spec.id, norm)
        return Target(A, spec.id, "family", {**{k: None for k in spec.params}, **norm}, against, spec.id, ab)
    if need_family:
        raise UsageError("this mode needs --family")
    _, text = resolve_path(path)
    A = load(text)
    extra = [k for k in values if k not in A.params and k not in ("a", "b")]
    if extra:
        raise ConstraintError(f"{A.name} has no parameter(s) {', '.join(extra)}")
    A = _apply(A, values)
    ab = tuple(values.get(k) if values.get(k) is not None else k for k in ("a", "b"))
    if against_name:
        against = _against_named(against_name, values)
    elif A.generators == ("L", "W"):
        against = make_W(*ab)
    elif A.generators == ("L",):
        against = make_virasoro()
    else:
        against = None
    return Target(A, path, "file", values, against, None, ab)


# reports


def check_entry(name, ok, residual_count, checked, counterexample=None, detail=None) -> dict:
    entry = {"name": name, "status": "pass" if ok else "fail", "residual_count": residual_count,
             "checked": checked, "counterexample": counterexample}
    if detail is not None:
        entry["detail"] = detail
    return entry


def make_report(command: str, argv: list[str], structure: dict | None, checks: list[dict],
                seconds: float) -> dict:
    return {
        "schema": SCHEMA,
        "version": __version__,
        "command": {"name": command, "argv": list(argv)},
        "structure": structure,
        "status": "pass" if all(c["status"] == "pass" for c in checks) else "fail",
        "checks": checks,
        "timing": {"seconds": round(seconds, 6)},
    }


def _residual_check(name, residuals, gens) -> tuple[dict, list]:
    bad = [r for r in residuals if not r.vanishes]
    cx = None
    if bad:
        cx = {"label": bad[0].label, "residual": render_vec(bad[0].value, gens)}
    return check_entry(name, not bad, len(bad), len(residuals), cx), (vec_pieces(bad[0].value, gens) if bad else [])


def run_check(args) -> tuple[dict | None, list, dict]:
    t = load_target(args)
    A = t.A
    if args.axioms:
        names = []
        for item in args.axioms.split(","):
            item = item.strip().lower()
            if item not in AXIOMS:
                raise UsageError(f"unknown axiom {item!r}; choose from {', '.join(AXIOMS)}")
            for n in AXIOMS[item]:
                if n not in names:
                    names.append(n)
    elif A.kind == "lie":
        names = ["skew", "jacobi"]
    else:
        names = ["left-symmetry"] + (["compat"] if t.against is not None else [])
    checks, pieces = [], {}
    for n in names:
        if n == "compat":
            if t.against is None:
                raise UsageError("compat needs --against for this input")
            rep = is_compatible_structure(A, t.against)
            cx = None
            if rep.diffs:
                x, y, got, want = rep.diffs[0]
                cx = {"label": f"[{x}_lam {y}]", "residual": f"{got} != {want}"}
                pieces[n] = [f"{got} != {want}"]
            checks.append(check_entry(n, rep.ok, len(rep.diffs), A.rank ** 2, cx,
                                      {"against": t.against.name}))
            continue
        fn = {"skew": residuals_skew, "jacobi": residuals_jacobi,
              "left-symmetry": residuals_left_symmetric}[n]
        entry, pcs = _residual_check(n, fn(A), A.generators)
        checks.append(entry)
        if pcs:
            pieces[n] = pcs
    return t.describe(), checks, pieces


def run_equations(args):
    t = load_target(args)
    if t.family:
        s = family_ansatz(t.family, {k: v for k, v in t.values.items() if v is not None})
    else:
        s = ansatz_from_algebra(t.A)
    a, b = t.ab
    checks, pieces = [], {}
    for r in equation_residuals(s, a, b):
        nf = r.value.render()
        ok = r.value.is_zero
        checks.append(check_entry(r.label, ok, 0 if ok else len(r.value), 1,
                                  None if ok else {"label": r.label, "residual": nf},
                                  {"normal_form": nf}))
        pieces[r.label] = split_top(nf)
    return t.describe(), checks, pieces


def run_coeff(args):
    if args.window < 0:
        raise UsageError("--window must be non-negative")
    t = load_target(args, need_family=(args.mode == "corollary"))
    if args.mode == "corollary":
        rep = verify_corollary(t.family, {k: v for k, v in t.values.items() if v is not None}, args.window)
    elif args.mode == "left-symmetry":
        rep = verify_left_symmetry_window(t.A, args.window)
    else:
        rep = verify_lie_window(t.A, args.window, *t.ab)
    cx, pieces = None, {}
    if rep.failures:
        m = rep.failures[0]
        cx = {"label": m.label, "residual": f"{m.computed} != {m.expected}"}
        pieces[args.mode] = split_top(m.computed) + [" != "] + split_top(m.expected)
    entry = check_entry(args.mode, rep.ok, rep.failure_count, rep.checked, cx,
                        {"window": list(rep.window)})
    return t.describe(), [entry], pieces


def run_refute(args):
    witnesses = list_refutation_witnesses()
    checks = []
    try:
        verify_refutations(witnesses)
    except StaleWitnessError:
        pass  # the per-witness entries below carry the failures
    for w in witnesses:
        value = w.evaluate()
        ok = value != 0 and value == w.expected_nonzero
        point = {k: _q(v) for k, v in sorted(w.point.items())}
        detail = {"equation": w.failing_equation, "value": _q(value), "point": point,
                  "description": w.description}
        cx = None if ok else {"label": w.failing_equation, "residual": _q(value), "point": point}
        checks.append(check_entry(w.branch_id, ok, 0 if ok else 1, 1, cx, detail))
    return {"source": "catalog", "id": "refutation-witnesses", "count": len(checks)}, checks, {}


def run_list(args):
    checks = []
    for fid in FAMILY_IDS:
        spec = family_spec(fid)
        A = make_family(fid)
        checks.append(check_entry(fid, True, 0, 0, None, {
            "params": list(spec.params),
            "constraints": spec.validity(),
            "lemma_cases": list(spec.lemma_cases),
            "brackets": A.describe(),
        }))
    return {"source": "catalog", "id": "families", "count": len(checks)}, checks, {}


# text output


def print_text(command: str, structure, checks, pieces, seconds, cap, out) -> None:
    color = _use_color(out)
    if structure and structure.get("source") in ("family", "file", "catalog") and "kind" in structure:
        params = ", ".join(f"{k}={v}" if v != "symbolic" else k for k, v in structure["params"].items())
        out.write(f"{command}: {structure['id']} ({structure['kind']}"
                  f"{'; ' + params if params else ''})\n")
    if command == "list":
        for c in checks:
            d = c["detail"]
            out.write(f"{c['name']}: params ({', '.join(d['params'])})"
                      f"  constraints [{'; '.join(d['constraints']) or 'none'}]"
                      f"  cases {', '.join(d['lemma_cases'])}\n")
            for line in d["brackets"]:
                out.write(f"    {line}\n")
        return
    width = max((len(c["name"]) for c in checks), default=0)
    for c in checks:
        ok = c["status"] == "pass"
        tag = _status(ok, color)
        if command == "equations":
            body = "0" if ok else cap_terms(pieces[c["name"]], cap)
            out.write(f"  {tag}  {c['name']:<{width}}  {body}\n")
        elif command == "refute":
            d = c["detail"]
            pt = ", ".join(f"{k}={v}" for k, v in d["point"].items())
            out.write(f"  {tag}  {c['name']:<{width}}  {d['equation']} = {d['value']} at {pt}\n")
        else:
            out.write(f"  {tag}  {c['name']:<{width}}  {c['residual_count']} failing of {c['checked']}\n")
            if not ok and c["counterexample"]:
                body = cap_terms(pieces.get(c["name"], [c["counterexample"]["residual"]]), cap)
                out.write(f"        first: {c['counterexample']['label']}: {body}\n")
    failed = sum(c["status"] == "fail" for c in checks)
    verdict = "pass" if not failed else f"fail ({failed} of {len(checks)})"
    out.write(f"result: {verdict} [{seconds:.2f} s]\n")


# entry point


def build_parser() -> argparse.ArgumentParser:
    p = _ArgParser(prog="lsca", description="Exact checks for Lie and left-symmetric conformal algebras.")
    p.add_argument("--version", action="version", version=f"lsca {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_ArgParser)

    def common(sp, structure=True):
        if structure:
            sp.add_argument("input", nargs="?", help=".lsca file (packaged examples resolve by basename)")
            sp.add_argument("--family", help="catalog family T1..T11, or W, Vir, VirLSC, W22")
            sp.add_argument("--set", action="append", metavar="NAME=VALUE",
                            help="concretize a parameter (repeatable); unset parameters stay symbolic")
        sp.add_argument("--json", action="store_true", help="emit a report-v1 JSON report")
        sp.add_argument("--max-terms", type=int, default=DEFAULT_TERM_CAP,
                        help="term cap for residuals in text mode (0 for no cap)")

    sp = sub.add_parser("check", help="run axiom suites")
    common(sp)
    sp.add_argument("--axioms", help="comma list of skew, jacobi, lie, lsc, compat")
    sp.add_argument("--against", help="Lie structure for compat: W, Vir, or an .lsca file")
    sp = sub.add_parser("equations", help="residuals of the fourteen rank-two equations")
    common(sp)
    sp = sub.add_parser("coeff", help="coefficient-algebra windows")
    common(sp)
    sp.add_argument("--window", type=int, default=3)
    sp.add_argument("--mode", choices=("left-symmetry", "corollary", "lie"), default="left-symmetry")
    sp = sub.add_parser("refute", help="evaluate the refutation witnesses")
    common(sp, structure=False)
    sp = sub.add_parser("list", help="list catalog families")
    common(sp, structure=False)
    sp = sub.add_parser("export", help="write a catalog structure as .lsca source")
    sp.add_argument("--family", required=True)
    sp.add_argument("--set", action="append", metavar="NAME=VALUE")
    sp.add_argument("-o", "--output", help="output file (default stdout)")
    return p


RUNNERS = {"check": run_check, "equations": run_equations, "coeff": run_coeff,
           "refute": run_refute, "list": run_list}


def _export(args, out) -> int:
    t = load_target(args)
    text = to_dsl(t.A)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    return EXIT_PASS


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        if args.command == "export":
            args.input = None
            return _export(args, out)
        structure, checks, pieces = RUNNERS[args.command](args)
    except ParseError as exc:
        path = getattr(args, "input", None) or "<input>"
        text = None
        try:
            text = resolve_path(path)[1] if path != "<input>" else None
        except UsageError:
            pass
        err.write(exc.render(text, path) + "\n")
        return EXIT_PARSE
    except (UsageError, ConstraintError, CatalogError, AnsatzError, IncompatibleError,
            UnknownGeneratorError, PoleError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        err.write(f"lsca: error: {msg}\n")
        return EXIT_USAGE
    seconds = time.perf_counter() - start
    if args.json:
        report = make_report(args.command, argv, structure, checks, seconds)
        out.write(json.dumps(report, indent=2, sort_keys=False) + "\n")
    else:
        cap = args.max_terms if args.max_terms > 0 else None
        print_text(args.command, structure, checks, pieces, seconds, cap, out)
    return EXIT_PASS if all(c["status"] == "pass" for c in checks) else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
