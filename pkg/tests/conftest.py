"""Shared strategies and the sympy oracle."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import settings
from hypothesis import strategies as st

from lsca.arith import FORMAL_VARS, FormalPoly, FormalRing, ParamPoly, Scalar

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SYMS = ("a", "b")
SYMPY = {n: sympy.Symbol(n) for n in FORMAL_VARS + SYMS + ("c", "d", "h1", "k1", "k2")}


def param_to_sympy(p: ParamPoly):
    out = sympy.Integer(0)
    for exps, q in p.items():
        term = sympy.Rational(q.numerator, q.denominator)
        for s, k in zip(p.symbols, exps):
            term *= SYMPY.get(s, sympy.Symbol(s)) ** k
        out += term
    return sympy.expand(out)


def scalar_to_sympy(s: Scalar):
    return param_to_sympy(s.num) / param_to_sympy(s.den)


def to_sympy(p: FormalPoly):
    out = sympy.Integer(0)
    for exps, c in p.items():
        term = scalar_to_sympy(c)
        for v, k in zip(FORMAL_VARS, exps):
            term *= SYMPY[v] ** k
        out += term
    return sympy.cancel(sympy.together(out))


def same_value(p: FormalPoly, expr) -> bool:
    return sympy.cancel(to_sympy(p) - expr) == 0


# random polynomials


def random_param(rng: random.Random, syms=SYMS, terms=3, deg=2, span=4) -> ParamPoly:
    t = {}
    for _ in range(rng.randint(0, terms)):
        exps = tuple(rng.randint(0, deg) for _ in syms)
        t[exps] = t.get(exps, 0) + Fraction(rng.randint(-span, span), rng.choice((1, 1, 2, 3)))
    return ParamPoly(syms, t)


def random_formal(rng: random.Random, syms=SYMS, terms=4, deg=2, variables=3, fractions=False) -> FormalPoly:
    t = {}
    for _ in range(rng.randint(0, terms)):
        exps = tuple(rng.randint(0, deg) if i < variables else 0 for i in range(4))
        num = random_param(rng, syms)
        if fractions and rng.random() < 0.3 and syms:
            den = ParamPoly.gen(syms, rng.choice(syms)) + rng.randint(1, 3)
            t[exps] = Scalar(num, den)
        else:
            t[exps] = Scalar(num)
    return FormalPoly(syms, t)


@st.composite
def formal_polys(draw, syms=SYMS, variables=3, fractions=False):
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return random_formal(random.Random(seed), syms, variables=variables, fractions=fractions)


@st.composite
def points(draw, syms=SYMS):
    vals = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return {s: draw(vals) for s in FORMAL_VARS + tuple(syms)}


@pytest.fixture
def R():
    return FormalRing(SYMS)


# fuzzing the text format

_FUZZ_ALPHABET = "LWablamdel0123456789 +-*/^()[]_,;=#\n\t.$@{}"


def mutate(text: str, rng: random.Random) -> str:
    """Apply 1-4 random deletions, insertions, swaps or truncations."""
    s = list(text)
    for _ in range(rng.randint(1, 4)):
        op = rng.randrange(4)
        i = rng.randrange(len(s) + 1) if s else 0
        if op == 0 and s:
            del s[min(i, len(s) - 1)]
        elif op == 1:
            s.insert(i, rng.choice(_FUZZ_ALPHABET))
        elif op == 2 and len(s) > 1:
            j = rng.randrange(len(s))
            k = min(i, len(s) - 1)
            s[j], s[k] = s[k], s[j]
        else:
            s = s[:i]
    return "".join(s)


def span_in_bounds(span, text: str) -> bool:
    """A span names a real character, or the first column of an empty input."""
    lines = text.split("\n")
    if not text.strip():
        return span.line >= 1 and span.column >= 1
    if not 1 <= span.line <= len(lines):
        return False
    return 1 <= span.column <= max(1, len(lines[span.line - 1]))
