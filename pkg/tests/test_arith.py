"""Exact arithmetic kernel: examples, normal form and ring properties."""

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from lsca.arith import (
    DEL,
    LAM,
    MU,
    FormalPoly,
    FormalRing,
    IncompleteAssignmentError,
    NotDivisibleError,
    ParamPoly,
    PoleError,
    Scalar,
    SelfReferenceError,
    SymbolUniverseError,
    as_rational,
    fp_add,
    fp_coeff_in,
    fp_compose,
    fp_degree,
    fp_eval,
    fp_from_coeffs,
    fp_mul,
    fp_substitute,
    poly_gcd,
    scalar_reduce,
)

from conftest import SYMPY, formal_polys, param_to_sympy, points, random_param, same_value, to_sympy

a, b = SYMPY["a"], SYMPY["b"]
d, lam, mu = SYMPY["del"], SYMPY["lam"], SYMPY["mu"]


# rationals and parameter polynomials


def test_as_rational_forms():
    assert as_rational("3/6") == Fraction(1, 2)
    assert as_rational(-4) == -4
    assert as_rational(Fraction(0, 5)).denominator == 1
    with pytest.raises((TypeError, ValueError)):
        as_rational(0.5)


def test_param_poly_drops_zero_coefficients():
    p = ParamPoly(("a",), {(1,): 2, (0,): 0})
    assert dict(p.items()) == {(1,): Fraction(2)}
    assert (p - p).is_zero and len(p - p) == 0


def test_param_poly_universe_mismatch():
    with pytest.raises(SymbolUniverseError):
        ParamPoly.gen(("a",), "a") + ParamPoly.gen(("b",), "b")


def test_divexact():
    A = ParamPoly.gen(("a", "b"), "a")
    B = ParamPoly.gen(("a", "b"), "b")
    assert ((A + B) * (A - B)).divexact(A + B) == A - B
    with pytest.raises(NotDivisibleError):
        (A * A + 1).divexact(A + B)


@given(st.integers(0, 2 ** 32))
def test_gcd_matches_sympy(seed):
    rng = random.Random(seed)
    g = random_param(rng, terms=2, deg=1)
    p, q = random_param(rng) * g, random_param(rng) * g
    mine = param_to_sympy(poly_gcd(p, q))
    ref = sympy.gcd(param_to_sympy(p), param_to_sympy(q))
    if ref == 0:
        assert mine == 0
    else:
        assert sympy.simplify(mine / ref).is_number


def test_gcd_is_monic():
    A = ParamPoly.gen(("a",), "a")
    g = poly_gcd((A * 3 + 6) * A, (A + 2) * 5)
    assert g == A + 2


# scalars


def test_scalar_normal_form():
    S = ("a", "b")
    A, B = ParamPoly.gen(S, "a"), ParamPoly.gen(S, "b")
    s = Scalar(A * A - B * B, (A - B).scale(3))
    assert s.den.leading_coeff() == 1
    assert s == Scalar((A + B).scale(Fraction(1, 3)))
    assert scalar_reduce(s) == s


@given(st.integers(0, 2 ** 32))
def test_scalar_inverse_product_is_one(seed):
    rng = random.Random(seed)
    n, m = random_param(rng), random_param(rng)
    if n.is_zero or m.is_zero:
        return
    x = Scalar(n, m)
    assert x * x.inverse() == Scalar.one(n.symbols)
    assert x / x == 1


def test_scalar_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        Scalar(ParamPoly.one(("a",)), ParamPoly.zero(("a",)))


def test_scalar_pole():
    s = 1 / Scalar.param(("c",), "c")
    with pytest.raises(PoleError):
        s.evaluate({"c": 0})


# formal polynomials: examples


def test_add_examples(R):
    assert fp_add(R.d + 2 * R.lam, R.zero) == R.d + 2 * R.lam
    c = FormalRing(("a", "b", "c"))
    assert fp_add(c.d + c.lam + c.param("c"), -c.lam) == c.d + c.param("c")
    A = R.param("a")
    assert fp_add(A * R.d, (1 - A) * R.d) == R.d


def test_add_universe_mismatch():
    with pytest.raises(SymbolUniverseError):
        fp_add(FormalRing(("a",)).d, FormalRing(("b",)).d)


def test_mul_examples(R):
    assert fp_mul(R.d + R.lam, R.one) == R.d + R.lam
    assert fp_mul(R.lam - R.mu, R.lam + R.mu) == R.lam ** 2 - R.mu ** 2


def test_mul_with_fraction_coefficients():
    F = FormalRing(("b", "c"))
    coef = FormalPoly.const(F.symbols, Scalar.param(F.symbols, "c") / Scalar.param(F.symbols, "b"))
    p = F.d + 2 * F.param("b")
    got = fp_mul(p, coef)
    # expansion by monomial products
    ref = F.zero
    for exps, x in p.items():
        for exps2, y in coef.items():
            ref = fp_add(ref, FormalPoly(F.symbols, {tuple(i + j for i, j in zip(exps, exps2)): x * y}))
    assert got == ref
    assert got == F.d * coef + 2 * F.param("c")


def test_substitute_examples(R):
    assert fp_substitute(R.d + 2 * R.lam, LAM, -R.lam - R.d) == -2 * R.lam - R.d
    assert fp_substitute(R.lam ** 2, LAM, R.lam + R.mu) == R.lam ** 2 + 2 * R.lam * R.mu + R.mu ** 2
    A, B = R.param("a"), R.param("b")
    got = fp_substitute(R.d + A * R.lam + B, LAM, -R.lam - R.d)
    assert got == (1 - A) * R.d - A * R.lam + B


def test_substitute_strict_rejects_self_reference(R):
    with pytest.raises(SelfReferenceError):
        fp_substitute(R.lam, LAM, R.lam + R.d, strict=True)


def test_substitute_random_points(R):
    rng = random.Random(7)
    A, B = R.param("a"), R.param("b")
    p = R.d + A * R.lam + B
    q = fp_substitute(p, LAM, -R.lam - R.d)
    for _ in range(5):
        pt = {k: Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for k in ("del", "lam", "mu", "a", "b")}
        inner = -pt["lam"] - pt["del"]
        assert fp_eval(q, pt) == fp_eval(p, {**pt, "lam": inner})


def test_eval_examples(R):
    assert fp_eval(R.d + 2 * R.lam, {"del": 1, "lam": 3}) == 7
    assert fp_eval(R.d + R.param("a") * R.lam + R.param("b"), {"del": 0, "lam": 1, "a": 2, "b": -1}) == 1


def test_eval_errors():
    F = FormalRing(("c",))
    with pytest.raises(IncompleteAssignmentError):
        fp_eval(F.d + F.param("c"), {"del": 1})
    p = FormalPoly.const(F.symbols, 1 / Scalar.param(F.symbols, "c")) * F.d
    with pytest.raises(PoleError):
        fp_eval(p, {"del": 1, "c": 0})


def test_coeff_examples(R):
    A, B = R.param("a"), R.param("b")
    assert fp_coeff_in(R.d + 2 * R.lam, LAM, 1) == R(2)
    assert fp_coeff_in(R.d + A * R.lam + B, LAM, 0) == R.d + B


def test_degree_examples(R):
    assert fp_degree(R.d + 2 * R.lam, LAM) == 1
    assert fp_degree(R.zero, DEL) == -1
    assert fp_degree((R.d + R.lam) ** 3, DEL) == 3


def test_render_is_stable(R):
    A = R.param("a")
    assert (R.d + A * R.lam - 1).render() == "del + a*lam - 1"
    assert (R.d + A * R.lam).render(pretty=True) == "∂ + a*λ"


def test_compose_is_simultaneous(R):
    p = R.lam * R.d ** 2
    got = fp_compose(p, {LAM: R.d, DEL: R.lam})
    assert got == R.d * R.lam ** 2


# formal polynomials: properties


@given(formal_polys(), formal_polys(), formal_polys())
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p + q == q + p and p * q == q * p
    assert p * (q + r) == p * q + p * r
    assert p - p == p.zero(p.symbols)


@given(formal_polys(fractions=True), formal_polys(fractions=True))
def test_ring_axioms_with_fractions(p, q):
    assert p * q == q * p
    assert (p + q) - q == p


@given(formal_polys(), formal_polys(), points())
def test_eval_is_homomorphism(p, q, pt):
    assert fp_eval(p + q, pt) == fp_eval(p, pt) + fp_eval(q, pt)
    assert fp_eval(p * q, pt) == fp_eval(p, pt) * fp_eval(q, pt)


@given(formal_polys(), formal_polys(), points())
def test_substitute_commutes_with_eval(p, r, pt):
    got = fp_eval(fp_substitute(p, LAM, r), pt)
    assert got == fp_eval(p, {**pt, "lam": fp_eval(r, pt)})


@given(formal_polys())
def test_coefficient_reconstruction(p):
    coeffs = {k: fp_coeff_in(p, LAM, k) for k in range(fp_degree(p, LAM) + 1)}
    assert fp_from_coeffs(p.symbols, LAM, coeffs) == p


@settings(max_examples=25)
@given(formal_polys(fractions=True))
def test_matches_sympy(p):
    q = p * p - p
    assert same_value(q, sympy.expand(to_sympy(p) ** 2 - to_sympy(p)))


@given(st.permutations(list(range(5))))
def test_construction_order_irrelevant(order):
    R = FormalRing(("a", "b"))
    pieces = [R.d, R.param("a") * R.lam, -R.mu ** 2, R(Fraction(1, 3)), R.param("b") * R.d * R.lam]
    total = R.zero
    for i in order:
        total = total + pieces[i]
    assert total == sum(pieces, R.zero)
    assert hash(total) == hash(sum(pieces, R.zero))


def test_partial_evaluate_and_lift(R):
    p = R.d + R.param("a") * R.lam + R.param("b")
    q = p.partial_evaluate({"a": 2})
    assert q.symbols == R.symbols
    assert q == R.d + 2 * R.lam + R.param("b")
    lifted = p.lift(("a", "b", "c"))
    assert lifted.symbols == ("a", "b", "c")
    assert fp_eval(lifted, {"del": 1, "lam": 1, "a": 1, "b": 1}) == 3
