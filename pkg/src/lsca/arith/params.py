"""Sparse multivariate polynomials over the rationals in a declared set of
parameter symbols, with exact division and a recursive primitive-PRS gcd.

Monomials are exponent tuples aligned with the declared symbol order.  The
monomial order used for leading terms is graded lexicographic, earlier
symbols being more significant.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping


class SymbolUniverseError(ValueError):
    """Two operands were built over different parameter symbol sets."""


class IncompleteAssignmentError(KeyError):
    """An evaluation assignment does not cover every occurring symbol."""


class PoleError(ZeroDivisionError):
    """A denominator vanished under an evaluation assignment."""


class NotDivisibleError(ArithmeticError):
    pass


def _grlex(exps: tuple[int, ...]) -> tuple:
    return (sum(exps), exps)


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


class ParamPoly:
    """Immutable polynomial in the parameter symbols with Fraction coefficients."""

    __slots__ = ("symbols", "_terms", "_hash")

    def __init__(self, symbols: Iterable[str], terms: Mapping[tuple[int, ...], object] | None = None):
        symbols = tuple(symbols)
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            n = len(symbols)
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != n:
                    raise ValueError(f"exponent vector {exps} does not match symbols {symbols}")
                q = as_rational(coeff)
                if q:
                    clean[exps] = clean.get(exps, 0) + q
                    if not clean[exps]:
                        del clean[exps]
        self.symbols = symbols
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, symbols: tuple[str, ...], terms: dict) -> "ParamPoly":
        obj = cls.__new__(cls)
        obj.symbols = symbols
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, symbols) -> "ParamPoly":
        return cls._raw(tuple(symbols), {})

    @classmethod
    def const(cls, symbols, value) -> "ParamPoly":
        symbols = tuple(symbols)
        q = as_rational(value)
        return cls._raw(symbols, {(0,) * len(symbols): q} if q else {})

    @classmethod
    def one(cls, symbols) -> "ParamPoly":
        return cls.const(symbols, 1)

    @classmethod
    def gen(cls, symbols, name: str) -> "ParamPoly":
        symbols = tuple(symbols)
        if name not in symbols:
            raise SymbolUniverseError(f"unknown parameter {name!r}; declared: {symbols}")
        exps = tuple(1 if s == name else 0 for s in symbols)
        return cls._raw(symbols, {exps: Fraction(1)})

    # inspection

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        t = self._terms
        return not t or (len(t) == 1 and not any(next(iter(t))))

    @property
    def is_one(self) -> bool:
        t = self._terms
        if len(t) != 1:
            return False
        exps, q = next(iter(t.items()))
        return q == 1 and not any(exps)

    @property
    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError(f"{self} is not constant")
        return next(iter(self._terms.values()), Fraction(0))

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * len(self.symbols), Fraction(0))

    def variables(self) -> set[int]:
        out: set[int] = set()
        for exps in self._terms:
            out.update(i for i, e in enumerate(exps) if e)
        return out

    def free_symbols(self) -> set[str]:
        return {self.symbols[i] for i in self.variables()}

    def degree(self, var: int | str | None = None) -> int:
        """Degree in one symbol, or total degree when ``var`` is None; -1 for zero."""
        if not self._terms:
            return -1
        if var is None:
            return max(sum(e) for e in self._terms)
        i = self._index(var)
        return max(e[i] for e in self._terms)

    def leading_term(self) -> tuple[tuple[int, ...], Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self._terms, key=_grlex)
        return exps, self._terms[exps]

    def leading_coeff(self) -> Fraction:
        return self.leading_term()[1] if self._terms else Fraction(0)

    def _index(self, var: int | str) -> int:
        if isinstance(var, int):
            return var
        try:
            return self.symbols.index(var)
        except ValueError:
            raise SymbolUniverseError(f"unknown parameter {var!r}; declared: {self.symbols}") from None

    def _check(self, other: "ParamPoly") -> None:
        if other.symbols != self.symbols:
            raise SymbolUniverseError(f"symbol universes differ: {self.symbols} vs {other.symbols}")

    def _coerce(self, other) -> "ParamPoly":
        if isinstance(other, ParamPoly):
            self._check(other)
            return other
        return ParamPoly.const(self.symbols, other)

    # arithmetic

    def __neg__(self) -> "ParamPoly":
        return ParamPoly._raw(self.symbols, {e: -q for e, q in self._terms.items()})

    def __add__(self, other) -> "ParamPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for e, q in other._terms.items():
            s = out.get(e)
            if s is None:
                out[e] = q
            else:
                s += q
                if s:
                    out[e] = s
                else:
                    del out[e]
        return ParamPoly._raw(self.symbols, out)

    __radd__ = __add__

    def __sub__(self, other) -> "ParamPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "ParamPoly":
        return (-self) + other

    def __mul__(self, other) -> "ParamPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ParamPoly._raw(self.symbols, {})
        out: dict[tuple[int, ...], Fraction] = {}
        for ea, qa in a.items():
            for eb, qb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e)
                out[e] = qa * qb if s is None else s + qa * qb
        return ParamPoly._raw(self.symbols, {e: q for e, q in out.items() if q})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "ParamPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = ParamPoly.one(self.symbols)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, q) -> "ParamPoly":
        q = as_rational(q)
        if not q:
            return ParamPoly.zero(self.symbols)
        return ParamPoly._raw(self.symbols, {e: c * q for e, c in self._terms.items()})

    def monic(self) -> "ParamPoly":
        if not self._terms:
            return self
        return self.scale(1 / self.leading_coeff())

    def divexact(self, divisor: "ParamPoly") -> "ParamPoly":
        """Exact quotient; raises NotDivisibleError when a remainder is left."""
        self._check(divisor)
        if divisor.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if divisor.is_constant:
            return self.scale(1 / divisor.constant_value())
        dl, dq = divisor.leading_term()
        rem = dict(self._terms)
        quot: dict[tuple[int, ...], Fraction] = {}
        dterms = list(divisor._terms.items())
        while rem:
            rl = max(rem, key=_grlex)
            diff = tuple(x - y for x, y in zip(rl, dl))
            if any(d < 0 for d in diff):
                raise NotDivisibleError(f"{divisor} does not divide {self}")
            q = rem[rl] / dq
            quot[diff] = q
            for e, c in dterms:
                m = tuple(x + y for x, y in zip(e, diff))
                v = rem.get(m, 0) - q * c
                if v:
                    rem[m] = v
                else:
                    rem.pop(m, None)
        return ParamPoly._raw(self.symbols, quot)

    # structure in one variable

    def coeffs_in(self, var: int | str) -> dict[int, "ParamPoly"]:
        """Split as sum_k coeff_k * var^k; the coefficients do not involve var."""
        i = self._index(var)
        buckets: dict[int, dict] = {}
        for e, q in self._terms.items():
            k = e[i]
            rest = e[:i] + (0,) + e[i + 1:]
            buckets.setdefault(k, {})[rest] = q
        return {k: ParamPoly._raw(self.symbols, t) for k, t in buckets.items()}

    def shift_var(self, var: int, k: int) -> "ParamPoly":
        """Multiply by var^k."""
        return ParamPoly._raw(
            self.symbols,
            {e[:var] + (e[var] + k,) + e[var + 1:]: q for e, q in self._terms.items()},
        )

    # evaluation and embedding

    def evaluate(self, assignment: Mapping[str, object]) -> Fraction:
        total = Fraction(0)
        needed = self.free_symbols()
        missing = sorted(needed - set(assignment))
        if missing:
            raise IncompleteAssignmentError(f"no value for {', '.join(missing)}")
        values = [as_rational(assignment[s]) if s in needed else Fraction(0) for s in self.symbols]
        for e, q in self._terms.items():
            term = q
            for v, k in zip(values, e):
                if k:
                    term *= v ** k
            total += term
        return total

    def partial_evaluate(self, assignment: Mapping[str, object]) -> "ParamPoly":
        """Substitute rationals for some symbols; the universe is unchanged."""
        idx = {self._index(s): as_rational(v) for s, v in assignment.items() if s in self.symbols}
        if not idx:
            return self
        out: dict[tuple[int, ...], Fraction] = {}
        for e, q in self._terms.items():
            e2 = list(e)
            for i, v in idx.items():
                if e[i]:
                    q = q * v ** e[i]
                    e2[i] = 0
            if q:
                k = tuple(e2)
                out[k] = out.get(k, 0) + q
        return ParamPoly._raw(self.symbols, {e: q for e, q in out.items() if q})

    def lift(self, symbols: Iterable[str]) -> "ParamPoly":
        """Embed into a universe that contains every symbol used here."""
        symbols = tuple(symbols)
        if symbols == self.symbols:
            return self
        used = self.variables()
        pos = []
        for i, s in enumerate(self.symbols):
            if s in symbols:
                pos.append(symbols.index(s))
            elif i in used:
                raise SymbolUniverseError(f"cannot drop symbol {s!r} still in use")
            else:
                pos.append(None)
        n = len(symbols)
        out = {}
        for e, q in self._terms.items():
            e2 = [0] * n
            for k, p in zip(e, pos):
                if k:
                    e2[p] = k
            out[tuple(e2)] = q
        return ParamPoly._raw(symbols, out)

    # comparison and display

    def __eq__(self, other) -> bool:
        if isinstance(other, ParamPoly):
            return self.symbols == other.symbols and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_constant and self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.symbols, frozenset(self._terms.items())))
        return self._hash

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: _grlex(kv[0]), reverse=True)

    def __str__(self) -> str:
        return render_terms(self.sorted_terms(), self.symbols)

    def __repr__(self) -> str:
        return f"ParamPoly({self.symbols}, {str(self)!r})"


def render_monomial(exps: tuple[int, ...], names: tuple[str, ...]) -> str:
    parts = []
    for name, k in zip(names, exps):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def render_terms(terms, names) -> str:
    if not terms:
        return "0"
    out = []
    for exps, q in terms:
        mono = render_monomial(exps, names)
        mag = abs(q)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(body if q > 0 else "-" + body)
        else:
            out.append((" + " if q > 0 else " - ") + body)
    return "".join(out)


# gcd


def _monomial_gcd(m: ParamPoly, p: ParamPoly) -> ParamPoly:
    (e,) = m._terms
    for f in p._terms:
        e = tuple(min(x, y) for x, y in zip(e, f))
    return ParamPoly._raw(m.symbols, {e: Fraction(1)})


def content_in(p: ParamPoly, var: int) -> ParamPoly:
    """Gcd of the coefficients of p viewed as a polynomial in var."""
    return reduce(poly_gcd, p.coeffs_in(var).values(), ParamPoly.zero(p.symbols))


def primitive_part(p: ParamPoly, var: int) -> ParamPoly:
    if p.is_zero:
        return p
    return p.divexact(content_in(p, var))


def pseudo_remainder(a: ParamPoly, b: ParamPoly, var: int) -> ParamPoly:
    db = b.degree(var)
    lb = b.coeffs_in(var)[db]
    r = a
    while not r.is_zero:
        dr = r.degree(var)
        if dr < db:
            break
        lr = r.coeffs_in(var)[dr]
        r = r * lb - (lr * b).shift_var(var, dr - db)
    return r


def poly_gcd(p: ParamPoly, q: ParamPoly) -> ParamPoly:
    """Monic greatest common divisor (leading coefficient 1 under grlex)."""
    p._check(q)
    if p.is_zero:
        return q.monic()
    if q.is_zero:
        return p.monic()
    if p.is_constant or q.is_constant:
        return ParamPoly.one(p.symbols)
    if p.is_monomial:
        return _monomial_gcd(p, q)
    if q.is_monomial:
        return _monomial_gcd(q, p)
    vp, vq = p.variables(), q.variables()
    only = (vp ^ vq)
    if only:
        # the gcd cannot involve a symbol missing from one side
        for v in sorted(only):
            if v in vp:
                p = content_in(p, v)
            else:
                q = content_in(q, v)
        return poly_gcd(p, q)
    var = min(vp)
    cp, cq = content_in(p, var), content_in(q, var)
    a, b = p.divexact(cp), q.divexact(cq)
    cont = poly_gcd(cp, cq)
    if a.degree(var) < b.degree(var):
        a, b = b, a
    while True:
        r = pseudo_remainder(a, b, var)
        if r.is_zero:
            g = b
            break
        if r.degree(var) == 0:
            g = ParamPoly.one(p.symbols)
            break
        a, b = b, primitive_part(r, var)
    return (cont * primitive_part(g, var)).monic()
