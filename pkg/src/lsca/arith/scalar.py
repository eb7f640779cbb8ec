"""Normalized fractions of parameter polynomials."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .params import ParamPoly, PoleError, SymbolUniverseError, as_rational, poly_gcd


class Scalar:
    """num/den with gcd(num, den) = 1 and den monic under grlex.

    The normal form is canonical, so structural equality is value equality.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: ParamPoly, den: ParamPoly | None = None):
        if den is None:
            den = ParamPoly.one(num.symbols)
        if num.symbols != den.symbols:
            raise SymbolUniverseError(f"symbol universes differ: {num.symbols} vs {den.symbols}")
        if den.is_zero:
            raise ZeroDivisionError("Scalar with zero denominator")
        self.num, self.den = _normalize(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num: ParamPoly, den: ParamPoly) -> "Scalar":
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def const(cls, symbols: Iterable[str], value) -> "Scalar":
        symbols = tuple(symbols)
        return cls._raw(ParamPoly.const(symbols, value), ParamPoly.one(symbols))

    @classmethod
    def zero(cls, symbols) -> "Scalar":
        symbols = tuple(symbols)
        return cls._raw(ParamPoly.zero(symbols), ParamPoly.one(symbols))

    @classmethod
    def one(cls, symbols) -> "Scalar":
        return cls.const(symbols, 1)

    @classmethod
    def param(cls, symbols, name: str) -> "Scalar":
        symbols = tuple(symbols)
        return cls._raw(ParamPoly.gen(symbols, name), ParamPoly.one(symbols))

    @property
    def symbols(self) -> tuple[str, ...]:
        return self.num.symbols

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __bool__(self) -> bool:
        return not self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.is_one

    @property
    def is_constant(self) -> bool:
        return self.den.is_one and self.num.is_constant

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError(f"{self} is not a constant")
        return self.num.constant_value()

    def free_symbols(self) -> set[str]:
        return self.num.free_symbols() | self.den.free_symbols()

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.num.symbols != self.num.symbols:
                raise SymbolUniverseError(
                    f"symbol universes differ: {self.symbols} vs {other.symbols}"
                )
            return other
        if isinstance(other, ParamPoly):
            return Scalar(other)
        return Scalar.const(self.symbols, as_rational(other))

    def __neg__(self) -> "Scalar":
        return Scalar._raw(-self.num, self.den)

    def __add__(self, other) -> "Scalar":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if other.num.is_zero:
            return self
        if self.num.is_zero:
            return other
        if self.den.is_one and other.den.is_one:
            return Scalar._raw(self.num + other.num, self.den)
        if self.den == other.den:
            return Scalar(self.num + other.num, self.den)
        return Scalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> "Scalar":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Scalar":
        return (-self) + other

    def __mul__(self, other) -> "Scalar":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.num.is_zero or other.num.is_zero:
            return Scalar.zero(self.symbols)
        if self.den.is_one and other.den.is_one:
            return Scalar._raw(self.num * other.num, self.den)
        # cross-cancel before multiplying keeps intermediate sizes down
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        num = self.num.divexact(g1) * other.num.divexact(g2)
        den = self.den.divexact(g2) * other.den.divexact(g1)
        lc = den.leading_coeff()
        return Scalar._raw(num.scale(1 / lc), den.scale(1 / lc))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.num.is_zero:
            raise ZeroDivisionError("inverse of zero Scalar")
        lc = self.num.leading_coeff()
        return Scalar._raw(self.den.scale(1 / lc), self.num.scale(1 / lc))

    def __truediv__(self, other) -> "Scalar":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "Scalar":
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "Scalar":
        if not isinstance(k, int):
            raise TypeError("integer exponent required")
        if k < 0:
            return self.inverse() ** (-k)
        return Scalar._raw(self.num ** k, self.den ** k)

    def evaluate(self, assignment: Mapping[str, object]) -> Fraction:
        d = self.den.evaluate(assignment)
        if not d:
            raise PoleError(f"denominator {self.den} vanishes at {dict(assignment)}")
        return self.num.evaluate(assignment) / d

    def partial_evaluate(self, assignment: Mapping[str, object]) -> "Scalar":
        den = self.den.partial_evaluate(assignment)
        if den.is_zero:
            raise PoleError(f"denominator {self.den} vanishes at {dict(assignment)}")
        return Scalar(self.num.partial_evaluate(assignment), den)

    def lift(self, symbols) -> "Scalar":
        symbols = tuple(symbols)
        if symbols == self.symbols:
            return self
        # a monomial order change can alter which term leads the denominator
        return Scalar(self.num.lift(symbols), self.den.lift(symbols))

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.den.is_one and self.num == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __str__(self) -> str:
        if self.den.is_one:
            return str(self.num)
        num = str(self.num)
        if len(self.num) > 1:
            num = f"({num})"
        den = str(self.den)
        if not _is_bare_power(self.den):
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r})"


def _is_bare_power(p: ParamPoly) -> bool:
    if len(p) != 1:
        return False
    ((exps, q),) = p.items()
    return q == 1 and sum(1 for e in exps if e) == 1


def _normalize(num: ParamPoly, den: ParamPoly) -> tuple[ParamPoly, ParamPoly]:
    if num.is_zero:
        return num, ParamPoly.one(num.symbols)
    if not den.is_constant:
        g = poly_gcd(num, den)
        if not g.is_one:
            num, den = num.divexact(g), den.divexact(g)
    lc = den.leading_coeff()
    if lc != 1:
        num, den = num.scale(1 / lc), den.scale(1 / lc)
    return num, den


def scalar_reduce(s: Scalar) -> Scalar:
    """Lowest-terms form of an arbitrary num/den pair."""
    return Scalar(s.num, s.den)
