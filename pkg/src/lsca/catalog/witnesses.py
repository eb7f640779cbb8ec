"""Refutation witnesses: concrete rational points at which a candidate from
an excluded branch of the classification violates one of its equations.

Two derived equations in a single polynomial h(x) (stored in the lam slot)
appear alongside f1..f14:

  hB  (case B, b = 0) obtained after eliminating h1 through h = h1(x, 0)
  hC  (case C, b = 0) obtained by specializing mu = -lam = -del
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from fractions import Fraction as F
from typing import Mapping, Sequence

from ..arith import DEL, LAM, MU, FormalPoly, FormalRing, PoleError, fp_eval
from .ansatz import AnsatzStructure, equation_residual

DERIVED_LABELS = ("hB", "hC")


class StaleWitnessError(AssertionError):
    pass


def _h_at(h: FormalPoly, x: FormalPoly) -> FormalPoly:
    return h.compose({LAM: x})


def reduced_equation_b(h: FormalPoly, a, c) -> FormalPoly:
    """Residual of the case-B (b = 0) equation in h; vanishes for admissible h."""
    R = FormalRing(h.symbols)
    a, c = R(a), R(c)
    d, lam, mu = R.d, R.lam, R.mu
    return (
        (((a - 1) * lam - mu) * ((a - 1) * d - lam - mu) - (d + c) * ((a - 1) * (lam + d) - mu))
        * _h_at(h, lam + mu + d)
        - c * (d + a * lam) * _h_at(h, -d)
        + (d + lam + mu + c) * ((a - 1) * lam - mu) * _h_at(h, lam + mu)
        + c * (d + lam) * _h_at(h, -lam - d)
        + mu * (d + lam + mu + c) * _h_at(h, mu)
        - c * (a * d + lam) * _h_at(h, -lam)
        + (d + lam + mu + c) * ((a - 1) * d - mu) * _h_at(h, mu + d)
    )


def reduced_equation_c(h: FormalPoly, a, c) -> FormalPoly:
    """Residual of the case-C (b = 0) equation in h, a polynomial in del."""
    R = FormalRing(h.symbols)
    a, c = R(a), R(c)
    d = R.d
    lhs = ((a * a - 3 * a + 1) * d - (2 * a - 1) * c) * _h_at(h, d) + a * (d + c) * _h_at(h, R.zero)
    rhs = (2 * a + 3) * (d + c) * _h_at(h, -d) - 2 * (d + c) * _h_at(h, -2 * d)
    return lhs - rhs


@dataclass(frozen=True)
class RefutationWitness:
    branch_id: str
    description: str
    candidate: AnsatzStructure | FormalPoly
    failing_equation: str
    a: object
    b: object
    point: Mapping[str, Fraction]
    expected_nonzero: Fraction
    c: object = None  # only for the derived equations, where c is not carried by f
    fixed: Mapping[str, Fraction] = field(default_factory=dict)

    def residual(self) -> FormalPoly:
        if self.failing_equation == "hB":
            return reduced_equation_b(self.candidate, self.a, self.c)
        if self.failing_equation == "hC":
            return reduced_equation_c(self.candidate, self.a, self.c)
        return equation_residual(self.candidate, self.failing_equation, self.a, self.b)

    @property
    def symbols(self) -> tuple[str, ...]:
        return self.candidate.symbols

    def evaluate(self) -> Fraction:
        return fp_eval(self.residual(), self.point)


SEARCH_GRID = tuple(Fraction(v) for v in (0, 1, -1, 2, -2, 3))


def find_witness_point(residual: FormalPoly, fixed: Mapping[str, object] | None = None,
                       grid: Sequence[Fraction] = SEARCH_GRID) -> tuple[dict[str, Fraction], Fraction]:
    """First point in grid order (del, lam, mu, then parameters) where residual != 0."""
    fixed = {k: Fraction(v) for k, v in (fixed or {}).items()}
    names = [v for v in (DEL, LAM, MU, *residual.symbols) if v not in fixed]
    for values in itertools.product(grid, repeat=len(names)):
        point = dict(fixed)
        point.update(zip(names, values))
        try:
            val = fp_eval(residual, point)
        except PoleError:
            continue
        if val:
            return point, val
    raise StaleWitnessError(f"no nonzero point of {residual} on the grid")


# candidates, one builder per excluded branch


def _r(*syms):
    return FormalRing(syms)


def _split_g2_zero():
    R = _r("a", "b", "c")
    a, b = R.param("a"), R.param("b")
    return AnsatzStructure.build(R, "c", g2=0, h2=(a - 1) * R.d + a * R.lam - b), "a", "b"


def _split_e_above():
    R = _r("a", "b", "c")
    a, b = R.param("a"), R.param("b")
    return AnsatzStructure.build(R, "c", g2=R.d + (a + 1) * R.lam + b, h2=-(R.lam + R.d)), "a", "b"


def _split_f_other():
    R = _r("a", "b", "c")
    a, b, c = R.param("a"), R.param("b"), R.param("c")
    return AnsatzStructure.build(R, c, g2=R.d + a * R.lam + b + c + 1, h2=c + 1), "a", "b"


def _split_e_below():
    R = _r("a", "b", "c")
    a, b = R.param("a"), R.param("b")
    return AnsatzStructure.build(R, "c", g2=R.d + (a - 1) * R.lam + b, h2=R.lam + R.d), "a", "b"


def _a1_c_not_2b():
    R = _r("b", "c", "k")
    b = R.param("b")
    return AnsatzStructure.build(R, "c", g2=R.d + R.lam + b, k1=R.param("k")), Fraction(1), "b"


def _a1_a_not_1():
    R = _r("a", "e0")
    a, e0 = R.param("a"), R.param("e0")
    return AnsatzStructure.build(R, 0, g2=R.d + a * R.lam, k1=(2 * a - 1) * e0), "a", Fraction(0)


def _a2_c_nonzero():
    R = _r("c", "k1", "k2")
    return (AnsatzStructure.build(R, "c", g2=R.d + R.lam, k1=R.param("k1"), k2=R.param("k2")),
            Fraction(1), Fraction(0))


def _a3_k2_eq_h1():
    R = _r("c", "h", "k1")
    h = R.param("h")
    return (AnsatzStructure.build(R, "c", g1=h, h1=h, g2=R.d + R.lam, k1=R.param("k1"), k2=h),
            Fraction(1), Fraction(0))


def _b_const_h1_a_not_1():
    R = _r("a", "b", "c", "d")
    a, b, c, d = (R.param(s) for s in ("a", "b", "c", "d"))
    return AnsatzStructure.build(R, c, g1=d, h1=d, g2=R.d + a * R.lam + b + c, h2=c), "a", "b"


def _b2_k2_other():
    R = _r("b", "d")
    b, d = R.param("b"), R.param("d")
    k1 = -d * d * R(1 / b.scalar_value())
    return (AnsatzStructure.build(R, b, g1=d, h1=d, g2=R.d + R.lam + 2 * b, h2=b, k1=k1, k2=1 - d),
            Fraction(1), "b")


def _b5():
    R = _r("c", "h", "f0", "f1", "f2")
    c, h = R.param("c"), R.param("h")
    d, lam = R.d, R.lam
    h1 = (2 * d ** 2 + 3 * c * d + 3 * c * lam + 3 * d * lam + lam ** 2) * h
    g1 = (lam ** 2 - 3 * c * lam - lam * d) * h
    k2 = -h * lam ** 2 - h * d * lam + R.param("f0") + R.param("f1") * d + R.param("f2") * d ** 2
    return (AnsatzStructure.build(R, c, g1=g1, g2=d + 3 * lam + c, h1=h1, h2=c, k2=k2),
            Fraction(3), Fraction(0))


def _b6_a2():
    R = _r("c", "h", "p0", "p1", "p2")
    c, h = R.param("c"), R.param("h")
    d, lam = R.d, R.lam
    p = R.param("p0") + R.param("p1") * d + R.param("p2") * d ** 2
    k1 = p - h * h * R(1 / c.scalar_value()) * lam * (d + lam)
    return (AnsatzStructure.build(R, c, g1=-h * lam, h1=(lam + d) * h, g2=d + 2 * lam + c, h2=c,
                                  k1=k1, k2=h * c),
            Fraction(2), Fraction(0))


def _c2():
    R = _r("b", "d0")
    b, d0 = R.param("b"), R.param("d0")
    d, lam = R.d, R.lam
    return (AnsatzStructure.build(R, b, g1=(b - lam) * d0, h1=(lam + d + b) * d0, g2=d + 2 * b,
                                  h2=d + lam + b, k1=-d0 * d0 * (lam + d + b), k2=-d0 * (lam + d + b)),
            Fraction(1), "b")


def _c6():
    R = _r("c", "h", "p0", "p1", "p2")
    c, h = R.param("c"), R.param("h")
    d, lam = R.d, R.lam
    k2 = -h * (lam ** 2 + lam * d) + R.param("p0") + R.param("p1") * d + R.param("p2") * d ** 2
    return (AnsatzStructure.build(R, c, g1=h * lam * (lam - c), h1=h * (lam + d) * (lam + d + c),
                                  g2=d + 2 * lam + c, h2=d + lam + c, k2=k2),
            Fraction(3), Fraction(0))


def _c7():
    R = _r("h", "k0")
    h = R.param("h")
    d, lam = R.d, R.lam
    return (AnsatzStructure.build(R, 0, g1=-h * lam, h1=h * (lam + d), g2=d, h2=d + lam,
                                  k2=R.param("k0") - h * lam),
            Fraction(1), Fraction(0))


def _h_poly(coeffs: Sequence[str], extra=("c",)):
    R = _r(*extra, *coeffs)
    return sum((R.param(n) * R.lam ** i for i, n in enumerate(coeffs)), R.zero)


# (branch_id, description, builder, equation, fixed values, c for derived equations)
_BRANCHES = [
    ("split/g2=0", "g2 = 0 forces h2 = (a-1)del + a lam - b, which breaks f2",
     _split_g2_zero, "f2", {}, None),
    ("split/e=a+1", "g2 = del + e lam + f with e outside {a, a-1}",
     _split_e_above, "f2", {}, None),
    ("split/e=a,f-other", "e = a with f outside {b, b+c}",
     _split_f_other, "f2", {}, None),
    ("split/e=a-1,f=b", "e = a-1 with f = b while c != 0",
     _split_e_below, "f2", {"c": 1}, None),
    ("A/a1:c!=2b", "constant k1 with h1 = k2 = 0, a = 1, c != 2b",
     _a1_c_not_2b, "f5", {"k": 1, "b": 0, "c": 1}, None),
    ("A/a1:a!=1", "k1 = (2a-1)e0 with b = c = 0 and a != 1",
     _a1_a_not_1, "f5", {"a": 2, "e0": 1}, None),
    ("A/a2:c!=0", "h1 = 0, k2 != 0, constant k1 != 0 while c != 0",
     _a2_c_nonzero, "f5", {"c": 1, "k1": 1, "k2": 1}, None),
    ("A/a3:k2=h1,c!=0", "k2 = h1 != 0 with constant k1 != 0 and c != 0",
     _a3_k2_eq_h1, "f5", {"c": 1, "h": 1, "k1": 1}, None),
    ("B/h1=d:a!=1", "b != 0, constant h1 = g1 = d != 0 with a != 1",
     _b_const_h1_a_not_1, "f1", {"a": 2, "b": 1, "c": 1, "d": 1}, None),
    ("B/b2:k2!=-d", "a = 1, c = b, h1 = d with k2 = 1 - d instead of -d",
     _b2_k2_other, "f6", {"b": 1, "d": 1}, None),
    ("B/b3", "b = 0, a = 2, cubic h",
     lambda: (_h_poly(("h0", "h1", "h2", "h3")), Fraction(2), Fraction(0)), "hB",
     {"c": 1, "h3": 1}, "c"),
    ("B/b4", "b = 0, a = 1, quadratic h",
     lambda: (_h_poly(("h0", "h1", "h2")), Fraction(1), Fraction(0)), "hB",
     {"c": 1, "h2": 1}, "c"),
    ("B/b5", "b = 0, a = 3, quadratic h; k2 with the lam^3 balance met",
     _b5, "f6", {"c": 1, "h": 1, "f0": 0, "f1": 0, "f2": Fraction(-2, 3)}, None),
    ("B/b6:a=2", "b = 0, a = 2, h1 = (lam+del)h != 0; k1 with the lam^3 balance met",
     _b6_a2, "f5", {"c": 1, "h": 1, "p0": 0, "p1": 0, "p2": -1}, None),
    ("C/c2", "b = c != 0, a = 1, h1 = (lam+del+b)d0 with d0 != 0",
     _c2, "f13", {"b": 1, "d0": 1}, None),
    ("C/c3", "b = 0, a = 5, quartic h",
     lambda: (_h_poly(("h0", "h1", "h2", "h3", "h4")), Fraction(5), Fraction(0)), "hC",
     {"h4": 1}, "c"),
    ("C/c4", "b = 0, a = 4, cubic h",
     lambda: (_h_poly(("h0", "h1", "h2", "h3")), Fraction(4), Fraction(0)), "hC",
     {"h3": 1}, "c"),
    ("C/c6", "b = 0, a = 3, quadratic h; k2 with the lam^3 balance met",
     _c6, "f6", {"h": 1, "p2": -1}, None),
    ("C/c7", "b = 0, a = 1, c = 0, linear h with h1 != 0",
     _c7, "f14", {"h": 1}, None),
]


# frozen search results: branch_id -> (point, value); regenerate with build_witnesses(search=True)
FROZEN_POINTS: dict[str, tuple[dict[str, Fraction], Fraction]] = {
    "split/g2=0": ({"del": F(0), "lam": F(0), "mu": F(0), "a": F(0), "b": F(1), "c": F(0)}, F(-1)),
    "split/e=a+1": ({"del": F(0), "lam": F(0), "mu": F(1), "a": F(0), "b": F(0), "c": F(1)}, F(-1)),
    "split/e=a,f-other": ({"del": F(0), "lam": F(0), "mu": F(0), "a": F(0), "b": F(0), "c": F(0)}, F(-1)),
    "split/e=a-1,f=b": ({"c": F(1), "del": F(0), "lam": F(0), "mu": F(1), "a": F(0), "b": F(0)}, F(1)),
    "A/a1:c!=2b": ({"k": F(1), "b": F(0), "c": F(1), "del": F(0), "lam": F(0), "mu": F(0)}, F(-1)),
    "A/a1:a!=1": ({"a": F(2), "e0": F(1), "del": F(0), "lam": F(1), "mu": F(0)}, F(6)),
    "A/a2:c!=0": ({"c": F(1), "k1": F(1), "k2": F(1), "del": F(0), "lam": F(0), "mu": F(0)}, F(-1)),
    "A/a3:k2=h1,c!=0": ({"c": F(1), "h": F(1), "k1": F(1), "del": F(0), "lam": F(0), "mu": F(0)}, F(-1)),
    "B/h1=d:a!=1": ({"a": F(2), "b": F(1), "c": F(1), "d": F(1), "del": F(0), "lam": F(1), "mu": F(0)}, F(1)),
    "B/b2:k2!=-d": ({"b": F(1), "d": F(1), "del": F(0), "lam": F(0), "mu": F(0)}, F(1)),
    "B/b3": ({"c": F(1), "h3": F(1), "del": F(0), "lam": F(1), "mu": F(0), "h0": F(1), "h1": F(0), "h2": F(0)}, F(-2)),
    "B/b4": ({"c": F(1), "h2": F(1), "del": F(0), "lam": F(1), "mu": F(0), "h0": F(1), "h1": F(0)}, F(-1)),
    "B/b5": ({"c": F(1), "h": F(1), "f0": F(0), "f1": F(0), "f2": F(-2, 3), "del": F(0), "lam": F(1), "mu": F(0)}, F(-4, 3)),
    "B/b6:a=2": ({"c": F(1), "h": F(1), "p0": F(0), "p1": F(0), "p2": F(-1), "del": F(0), "lam": F(1), "mu": F(0)}, F(2)),
    "C/c2": ({"b": F(1), "d0": F(1), "del": F(0), "lam": F(1), "mu": F(0)}, F(-2)),
    "C/c3": ({"h4": F(1), "del": F(0), "lam": F(0), "mu": F(0), "c": F(1), "h0": F(1), "h1": F(0), "h2": F(0), "h3": F(0)}, F(-15)),
    "C/c4": ({"h3": F(1), "del": F(0), "lam": F(0), "mu": F(0), "c": F(1), "h0": F(1), "h1": F(0), "h2": F(0)}, F(-12)),
    "C/c6": ({"h": F(1), "p2": F(-1), "del": F(0), "lam": F(1), "mu": F(0), "c": F(0), "p0": F(0), "p1": F(1)}, F(-2)),
    "C/c7": ({"h": F(1), "del": F(0), "lam": F(1), "mu": F(0), "k0": F(0)}, F(-2)),
}


def build_witnesses(search: bool = False) -> list[RefutationWitness]:
    out = []
    for branch_id, desc, builder, eq, fixed, c in _BRANCHES:
        cand, a, b = builder()
        proto = RefutationWitness(branch_id, desc, cand, eq, a, b, {}, Fraction(0), c, dict(fixed))
        if search or branch_id not in FROZEN_POINTS:
            point, value = find_witness_point(proto.residual(), fixed)
        else:
            point, value = FROZEN_POINTS[branch_id]
        out.append(RefutationWitness(branch_id, desc, cand, eq, a, b, dict(point), value, c, dict(fixed)))
    return out


def list_refutation_witnesses() -> list[RefutationWitness]:
    return build_witnesses(search=False)


@dataclass(frozen=True)
class RefutationEntry:
    branch_id: str
    equation: str
    point: Mapping[str, Fraction]
    value: Fraction
    expected: Fraction

    @property
    def ok(self) -> bool:
        return self.value != 0 and self.value == self.expected


@dataclass(frozen=True)
class RefutationReport:
    entries: tuple[RefutationEntry, ...]

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)


def verify_refutations(witnesses: Sequence[RefutationWitness] | None = None) -> RefutationReport:
    """Evaluate every witness; any zero or changed value raises StaleWitnessError."""
    if witnesses is None:
        witnesses = list_refutation_witnesses()
    entries = []
    for w in witnesses:
        value = w.evaluate()
        entries.append(RefutationEntry(w.branch_id, w.failing_equation, w.point, value, w.expected_nonzero))
    stale = [e for e in entries if not e.ok]
    if stale:
        raise StaleWitnessError(
            "stale witnesses: " + ", ".join(f"{e.branch_id} ({e.equation} = {e.value}, expected {e.expected})"
                                            for e in stale))
    return RefutationReport(tuple(entries))
