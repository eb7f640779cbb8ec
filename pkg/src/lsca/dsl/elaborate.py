"""Fold expression ASTs into table entries."""

from __future__ import annotations

from ..arith import FormalRing
from ..conformal import ConformalAlgebra
from .lexer import SemanticError
from .parser import AlgebraDef, BinOp, Expr, Name, Neg, Num, Pow, parse_algebra


class _Vec:
    """Generator-linear value: one FormalPoly per generator."""

    __slots__ = ("comps",)

    def __init__(self, comps):
        self.comps = tuple(comps)


def _fold(e: Expr, R: FormalRing, gens: tuple[str, ...]):
    if isinstance(e, Num):
        return R(e.value)
    if isinstance(e, Name):
        if e.id == "del":
            return R.d
        if e.id == "lam":
            return R.lam
        if e.id in gens:
            comps = [R.zero] * len(gens)
            comps[gens.index(e.id)] = R.one
            return _Vec(comps)
        return R.param(e.id)
    if isinstance(e, Neg):
        v = _fold(e.operand, R, gens)
        return _Vec(-c for c in v.comps) if isinstance(v, _Vec) else -v
    if isinstance(e, Pow):
        if e.exponent < 0:
            raise SemanticError(e.span, "negative exponent is not allowed")
        v = _fold(e.base, R, gens)
        if isinstance(v, _Vec):
            raise SemanticError(e.span, "a generator cannot be raised to a power")
        return v ** e.exponent
    if isinstance(e, BinOp):
        x, y = _fold(e.left, R, gens), _fold(e.right, R, gens)
        xv, yv = isinstance(x, _Vec), isinstance(y, _Vec)
        if e.op in "+-":
            if xv != yv:
                raise SemanticError(e.span, f"'{e.op}' mixes a generator term with a plain polynomial")
            if xv:
                f = (lambda p, q: p + q) if e.op == "+" else (lambda p, q: p - q)
                return _Vec(f(p, q) for p, q in zip(x.comps, y.comps))
            return x + y if e.op == "+" else x - y
        if e.op == "*":
            if xv and yv:
                raise SemanticError(e.span, "product of two generators is not linear")
            if xv:
                return _Vec(p * y for p in x.comps)
            if yv:
                return _Vec(x * q for q in y.comps)
            return x * y
        # division only by a nonzero parameter expression
        if yv:
            raise SemanticError(e.span, "division by a generator")
        if not y.is_scalar():
            raise SemanticError(e.span, "division by a polynomial in del or lam")
        if y.is_zero:
            raise SemanticError(e.span, "division by zero")
        inv = 1 / y.scalar_value()
        if xv:
            return _Vec(p.scale(inv) for p in x.comps)
        return x.scale(inv)
    raise TypeError(f"unknown node {e!r}")


def elaborate(d: AlgebraDef) -> ConformalAlgebra:
    syms = d.param_names
    R = FormalRing(syms)
    gens = d.generators
    n = len(gens)
    zero = (R.zero,) * n
    table = {(i, j): zero for i in range(n) for j in range(n)}
    given = set()
    for br in d.brackets:
        v = _fold(br.expr, R, gens)
        if not isinstance(v, _Vec):
            if not v.is_zero:
                raise SemanticError(br.span, f"right side of [{br.left} _ {br.right}] must be linear in the generators")
            v = _Vec(zero)
        key = (gens.index(br.left), gens.index(br.right))
        table[key] = v.comps
        given.add(key)
    if not d.default_zero and len(given) != n * n:
        raise SemanticError(d.span, "missing clauses without 'default zero;'")
    nonzero = tuple(p.name for p in d.params if p.nonzero)
    return ConformalAlgebra(d.name, d.kind, syms, gens, table, nonzero, d.nonzero_groups)


def load(text: str) -> ConformalAlgebra:
    return elaborate(parse_algebra(text))
