"""Source text from an AlgebraDef or directly from a ConformalAlgebra."""

from __future__ import annotations

import re

from ..conformal import ConformalAlgebra
from .parser import AlgebraDef, BinOp, Expr, Name, Neg, Num, Pow

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _prec(e: Expr) -> int:
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return 3
    if isinstance(e, Pow):
        return 4
    return 5


def _num(q) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_expr(e: Expr) -> str:
    if isinstance(e, Num):
        return _num(e.value)
    if isinstance(e, Name):
        return e.id
    if isinstance(e, Neg):
        inner = format_expr(e.operand)
        return f"-({inner})" if _prec(e.operand) < 3 else f"-{inner}"
    if isinstance(e, Pow):
        base = format_expr(e.base)
        if not isinstance(e.base, Name) and not (isinstance(e.base, Num) and e.base.value.denominator == 1):
            base = f"({base})"
        return f"{base}^{e.exponent}"
    p = _PREC[e.op]
    left = format_expr(e.left)
    if _prec(e.left) < p:
        left = f"({left})"
    right = format_expr(e.right)
    if _prec(e.right) <= p:
        right = f"({right})"
    return f"{left} {e.op} {right}"


def format_algebra(d: AlgebraDef) -> str:
    lines = [f"algebra {d.name} {d.kind};"]
    if d.params:
        lines.append("params " + ", ".join(p.name + (" nonzero" if p.nonzero else "") for p in d.params) + ";")
    for g in d.nonzero_groups:
        lines.append(f"nonzero ({', '.join(g)});")
    lines.append(f"generators {', '.join(d.generators)};")
    for br in d.brackets:
        lines.append(f"bracket [{br.left} _ {br.right}] = {format_expr(br.expr)};")
    if d.default_zero:
        lines.append("default zero;")
    return "\n".join(lines) + "\n"


def dsl_name(name: str) -> str:
    out = re.sub(r"[^A-Za-z0-9]", "", name)
    if not out or not out[0].isalpha():
        out = "A" + out
    return out


def to_dsl(A: ConformalAlgebra, comment: str | None = None) -> str:
    """Source for A; zero entries are left to 'default zero;'."""
    lines = []
    if comment:
        lines += [f"# {c}" for c in comment.splitlines()]
    lines.append(f"algebra {dsl_name(A.name)} {A.kind};")
    if A.params:
        lines.append("params " + ", ".join(p + (" nonzero" if p in A.nonzero else "") for p in A.params) + ";")
    for g in A.nonzero_any:
        lines.append(f"nonzero ({', '.join(g)});")
    lines.append(f"generators {', '.join(A.generators)};")
    omitted = False
    for (i, j), vec in sorted(A.table.items()):
        terms = [f"({p.render()})*{A.generators[k]}" for k, p in enumerate(vec) if not p.is_zero]
        if not terms:
            omitted = True
            continue
        lines.append(f"bracket [{A.generators[i]} _ {A.generators[j]}] = {' + '.join(terms)};")
    if omitted:
        lines.append("default zero;")
    return "\n".join(lines) + "\n"
