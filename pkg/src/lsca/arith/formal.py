"""Sparse polynomials in the formal variables del, lam, mu, nu with Scalar
coefficients."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping

from .params import (
    IncompleteAssignmentError,
    ParamPoly,
    SymbolUniverseError,
    _grlex,
    as_rational,
    render_monomial,
)
from .scalar import Scalar

DEL, LAM, MU, NU = "del", "lam", "mu", "nu"
FORMAL_VARS: tuple[str, ...] = (DEL, LAM, MU, NU)
PRETTY = {DEL: "∂", LAM: "λ", MU: "μ", NU: "ν"}

_ZERO_EXP = (0, 0, 0, 0)


class SelfReferenceError(ValueError):
    """A substitution replacement mentions the variable being replaced."""


def var_index(var: str | int) -> int:
    if isinstance(var, int):
        if not 0 <= var < 4:
            raise ValueError(f"formal variable index out of range: {var}")
        return var
    try:
        return FORMAL_VARS.index(var)
    except ValueError:
        raise ValueError(f"unknown formal variable {var!r}") from None


class FormalPoly:
    __slots__ = ("symbols", "_terms", "_hash")

    def __init__(self, symbols: Iterable[str], terms: Mapping[tuple[int, ...], object] | None = None):
        symbols = tuple(symbols)
        clean: dict[tuple[int, ...], Scalar] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != 4 or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps}")
            c = _to_scalar(c, symbols)
            if c:
                prev = clean.get(exps)
                c = c if prev is None else prev + c
                if c:
                    clean[exps] = c
                else:
                    del clean[exps]
        self.symbols = symbols
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, symbols: tuple[str, ...], terms: dict) -> "FormalPoly":
        obj = cls.__new__(cls)
        obj.symbols = symbols
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, symbols) -> "FormalPoly":
        return cls._raw(tuple(symbols), {})

    @classmethod
    def const(cls, symbols, value) -> "FormalPoly":
        symbols = tuple(symbols)
        c = _to_scalar(value, symbols)
        return cls._raw(symbols, {_ZERO_EXP: c} if c else {})

    @classmethod
    def one(cls, symbols) -> "FormalPoly":
        return cls.const(symbols, 1)

    @classmethod
    def var(cls, symbols, name: str | int) -> "FormalPoly":
        i = var_index(name)
        exps = tuple(1 if j == i else 0 for j in range(4))
        symbols = tuple(symbols)
        return cls._raw(symbols, {exps: Scalar.one(symbols)})

    @classmethod
    def param(cls, symbols, name: str) -> "FormalPoly":
        symbols = tuple(symbols)
        return cls._raw(symbols, {_ZERO_EXP: Scalar.param(symbols, name)})

    # inspection

    def items(self):
        return self._terms.items()

    @property
    def terms(self) -> dict[tuple[int, ...], Scalar]:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def formal_variables(self) -> set[str]:
        used = set()
        for e in self._terms:
            used.update(FORMAL_VARS[i] for i, k in enumerate(e) if k)
        return used

    def free_params(self) -> set[str]:
        out: set[str] = set()
        for c in self._terms.values():
            out |= c.free_symbols()
        return out

    def is_scalar(self) -> bool:
        return all(e == _ZERO_EXP for e in self._terms)

    def scalar_value(self) -> Scalar:
        if not self.is_scalar():
            raise ValueError(f"{self} involves formal variables")
        return self._terms.get(_ZERO_EXP, Scalar.zero(self.symbols))

    def degree(self, var: str | int) -> int:
        return fp_degree(self, var)

    def coeff(self, var: str | int, k: int) -> "FormalPoly":
        return fp_coeff_in(self, var, k)

    def _check(self, other: "FormalPoly") -> None:
        if other.symbols != self.symbols:
            raise SymbolUniverseError(f"symbol universes differ: {self.symbols} vs {other.symbols}")

    def _coerce(self, other) -> "FormalPoly":
        if isinstance(other, FormalPoly):
            self._check(other)
            return other
        return FormalPoly.const(self.symbols, other)

    # arithmetic

    def __neg__(self) -> "FormalPoly":
        return FormalPoly._raw(self.symbols, {e: -c for e, c in self._terms.items()})

    def __add__(self, other) -> "FormalPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            prev = out.get(e)
            if prev is None:
                out[e] = c
            else:
                s = prev + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return FormalPoly._raw(self.symbols, out)

    __radd__ = __add__

    def __sub__(self, other) -> "FormalPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "FormalPoly":
        return (-self) + other

    def __mul__(self, other) -> "FormalPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return FormalPoly._raw(self.symbols, {})
        out: dict[tuple[int, ...], Scalar] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3])
                c = ca * cb
                prev = out.get(e)
                out[e] = c if prev is None else prev + c
        return FormalPoly._raw(self.symbols, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "FormalPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = FormalPoly.one(self.symbols)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, s) -> "FormalPoly":
        s = _to_scalar(s, self.symbols)
        if not s:
            return FormalPoly.zero(self.symbols)
        return FormalPoly._raw(self.symbols, {e: c * s for e, c in self._terms.items()})

    # substitution helpers

    def subs(self, var: str | int, repl) -> "FormalPoly":
        return fp_substitute(self, var, repl)

    def compose(self, mapping: Mapping[str, "FormalPoly"]) -> "FormalPoly":
        return fp_compose(self, mapping)

    def rename(self, old: str, new: str) -> "FormalPoly":
        return fp_compose(self, {old: FormalPoly.var(self.symbols, new)})

    def partial_evaluate(self, assignment: Mapping[str, object]) -> "FormalPoly":
        """Substitute rationals for parameters (not formal variables)."""
        out: dict[tuple[int, ...], Scalar] = {}
        for e, c in self._terms.items():
            c = c.partial_evaluate(assignment)
            if c:
                out[e] = c
        return FormalPoly._raw(self.symbols, out)

    def lift(self, symbols: Iterable[str]) -> "FormalPoly":
        symbols = tuple(symbols)
        if symbols == self.symbols:
            return self
        return FormalPoly._raw(symbols, {e: c.lift(symbols) for e, c in self._terms.items()})

    def evaluate(self, assignment: Mapping[str, object]) -> Fraction:
        return fp_eval(self, assignment)

    # comparison and display

    def __eq__(self, other) -> bool:
        if isinstance(other, FormalPoly):
            return self.symbols == other.symbols and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                return not self._terms
            return self.is_scalar() and self.scalar_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.symbols, frozenset(self._terms.items())))
        return self._hash

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Scalar]]:
        return sorted(self._terms.items(), key=lambda kv: _grlex(kv[0]), reverse=True)

    def render(self, pretty: bool = False) -> str:
        names = tuple(PRETTY[v] for v in FORMAL_VARS) if pretty else FORMAL_VARS
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for exps, c in self.sorted_terms():
            mono = render_monomial(exps, names)
            neg, body = _scalar_factor(c)
            if mono:
                body = mono if body == "1" else f"{body}*{mono}"
            if not pieces:
                pieces.append("-" + body if neg else body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"FormalPoly({self.render()!r})"


def _scalar_factor(c: Scalar) -> tuple[bool, str]:
    """(is_negative, magnitude string) of a coefficient, parenthesized when it
    is a sum or a quotient so that it can be followed by ``*monomial``."""
    if c.is_polynomial and len(c.num) == 1:
        ((exps, q),) = c.num.items()
        neg = q < 0
        mono = render_monomial(exps, c.symbols)
        mag = abs(q)
        if not mono:
            return neg, str(mag)
        return neg, mono if mag == 1 else f"{mag}*{mono}"
    if c.is_polynomial:
        return False, f"({c.num})"
    return False, f"({c})"


def _to_scalar(value, symbols: tuple[str, ...]) -> Scalar:
    if isinstance(value, Scalar):
        if value.symbols != symbols:
            raise SymbolUniverseError(f"symbol universes differ: {symbols} vs {value.symbols}")
        return value
    if isinstance(value, ParamPoly):
        if value.symbols != symbols:
            raise SymbolUniverseError(f"symbol universes differ: {symbols} vs {value.symbols}")
        return Scalar(value)
    if isinstance(value, FormalPoly):
        if value.symbols != symbols:
            raise SymbolUniverseError(f"symbol universes differ: {symbols} vs {value.symbols}")
        return value.scalar_value()
    return Scalar.const(symbols, as_rational(value))


# module-level operations


def fp_add(p: FormalPoly, q: FormalPoly) -> FormalPoly:
    p._check(q)
    return p + q


def fp_mul(p: FormalPoly, q: FormalPoly) -> FormalPoly:
    p._check(q)
    return p * q


def fp_compose(p: FormalPoly, mapping: Mapping[str, FormalPoly]) -> FormalPoly:
    """Simultaneous substitution of formal variables."""
    idx = {}
    for v, r in mapping.items():
        r = p._coerce(r)
        idx[var_index(v)] = r
    if not idx:
        return p
    powers: dict[tuple[int, int], FormalPoly] = {}

    def power(i: int, k: int) -> FormalPoly:
        key = (i, k)
        if key not in powers:
            powers[key] = idx[i] if k == 1 else power(i, k - 1) * idx[i]
        return powers[key]

    result = FormalPoly.zero(p.symbols)
    for exps, c in p._terms.items():
        kept = tuple(0 if i in idx else k for i, k in enumerate(exps))
        term = FormalPoly._raw(p.symbols, {kept: c})
        for i, k in enumerate(exps):
            if k and i in idx:
                term = term * power(i, k)
        result = result + term
    return result


def fp_substitute(p: FormalPoly, var: str | int, repl, strict: bool = False) -> FormalPoly:
    """Replace every power var^k by repl^k in a single pass, so repl may
    mention var itself (lam -> -lam - del).  With ``strict`` such a
    replacement is rejected instead."""
    repl = p._coerce(repl)
    name = FORMAL_VARS[var_index(var)]
    if strict and name in repl.formal_variables():
        raise SelfReferenceError(f"replacement {repl} mentions {name}")
    return fp_compose(p, {name: repl})


def fp_eval(p: FormalPoly, assignment: Mapping[str, object]) -> Fraction:
    """Exact value at a rational point covering every occurring symbol."""
    need = p.formal_variables() | p.free_params()
    missing = sorted(need - set(assignment))
    if missing:
        raise IncompleteAssignmentError(f"no value for {', '.join(missing)}")
    vals = [as_rational(assignment[v]) if v in need else Fraction(0) for v in FORMAL_VARS]
    total = Fraction(0)
    for exps, c in p._terms.items():
        term = c.evaluate(assignment)
        for v, k in zip(vals, exps):
            if k:
                term *= v ** k
        total += term
    return total


def fp_coeff_in(p: FormalPoly, var: str | int, k: int) -> FormalPoly:
    i = var_index(var)
    out = {}
    for exps, c in p._terms.items():
        if exps[i] == k:
            out[exps[:i] + (0,) + exps[i + 1:]] = c
    return FormalPoly._raw(p.symbols, out)


def fp_degree(p: FormalPoly, var: str | int) -> int:
    i = var_index(var)
    if not p._terms:
        return -1
    return max(e[i] for e in p._terms)


def falling(x: int, k: int) -> int:
    """x (x-1) ... (x-k+1); 1 when k = 0."""
    out = 1
    for j in range(k):
        out *= x - j
    return out


def fp_from_coeffs(symbols, var: str | int, coeffs: Mapping[int, FormalPoly]) -> FormalPoly:
    """Reassemble sum_k coeffs[k] * var^k."""
    v = FormalPoly.var(symbols, var)
    out = FormalPoly.zero(symbols)
    for k, c in coeffs.items():
        out = out + c * v ** k
    return out


def factorial_scale(p: FormalPoly, n: int) -> FormalPoly:
    return p.scale(math.factorial(n))


class FormalRing:
    """Shorthand constructors for one parameter universe."""

    def __init__(self, symbols: Iterable[str] = ()):
        self.symbols = tuple(symbols)
        self.d = FormalPoly.var(self.symbols, DEL)
        self.lam = FormalPoly.var(self.symbols, LAM)
        self.mu = FormalPoly.var(self.symbols, MU)
        self.nu = FormalPoly.var(self.symbols, NU)
        self.zero = FormalPoly.zero(self.symbols)
        self.one = FormalPoly.one(self.symbols)

    def param(self, name: str) -> FormalPoly:
        return FormalPoly.param(self.symbols, name)

    def __call__(self, value) -> FormalPoly:
        """Constant (rational, Scalar, or parameter name)."""
        if isinstance(value, str) and value in self.symbols:
            return self.param(value)
        return FormalPoly.const(self.symbols, value)

    def __repr__(self) -> str:
        return f"FormalRing({self.symbols})"
