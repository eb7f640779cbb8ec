"""Rank-2 ansatz with C[del]L a left-symmetric subalgebra, and the fourteen
functional equations its polynomials must satisfy to be a compatible
left-symmetric structure on W(a,b)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from ..arith import DEL, LAM, FormalPoly, FormalRing
from ..conformal import ConformalAlgebra, union_symbols

POLY_FIELDS = ("f", "g1", "g2", "h1", "h2", "k1", "k2")


class AnsatzError(ValueError):
    pass


@dataclass(frozen=True)
class AnsatzStructure:
    """L_lam L = f L, L_lam W = g1 L + g2 W, W_lam L = h1 L + h2 W,
    W_lam W = k1 L + k2 W, with f = del + lam + c."""

    f: FormalPoly
    g1: FormalPoly
    g2: FormalPoly
    h1: FormalPoly
    h2: FormalPoly
    k1: FormalPoly
    k2: FormalPoly

    def __post_init__(self):
        syms = self.f.symbols
        for name in POLY_FIELDS:
            p = getattr(self, name)
            if p.symbols != syms:
                raise AnsatzError(f"{name} is over {p.symbols}, f over {syms}")
            extra = p.formal_variables() - {DEL, LAM}
            if extra:
                raise AnsatzError(f"{name} = {p} mentions {sorted(extra)}")
        R = FormalRing(syms)
        rest = self.f - R.d - R.lam
        if not rest.is_scalar():
            raise AnsatzError(f"f must be del + lam + c, got {self.f}")

    @property
    def symbols(self) -> tuple[str, ...]:
        return self.f.symbols

    @property
    def c(self) -> FormalPoly:
        R = FormalRing(self.symbols)
        return self.f - R.d - R.lam

    def polys(self) -> dict[str, FormalPoly]:
        return {n: getattr(self, n) for n in POLY_FIELDS}

    def replace(self, **changes) -> "AnsatzStructure":
        polys = self.polys()
        polys.update(changes)
        return AnsatzStructure(**polys)

    def lift(self, symbols) -> "AnsatzStructure":
        return AnsatzStructure(**{n: p.lift(symbols) for n, p in self.polys().items()})

    def partial_evaluate(self, assignment) -> "AnsatzStructure":
        return AnsatzStructure(**{n: p.partial_evaluate(assignment) for n, p in self.polys().items()})

    @classmethod
    def build(cls, R: FormalRing, c=0, **polys) -> "AnsatzStructure":
        """Omitted polynomials are zero; f = del + lam + c."""
        unknown = set(polys) - set(POLY_FIELDS[1:])
        if unknown:
            raise AnsatzError(f"unknown ansatz fields {sorted(unknown)}")
        c = c if isinstance(c, FormalPoly) else R(c)
        args = {n: polys.get(n, R.zero) for n in POLY_FIELDS[1:]}
        args = {n: p if isinstance(p, FormalPoly) else R(p) for n, p in args.items()}
        return cls(f=R.d + R.lam + c, **args)


def ansatz_to_algebra(s: AnsatzStructure, name: str = "ansatz", nonzero=(), nonzero_any=()) -> ConformalAlgebra:
    table = {
        (0, 0): (s.f, FormalPoly.zero(s.symbols)),
        (0, 1): (s.g1, s.g2),
        (1, 0): (s.h1, s.h2),
        (1, 1): (s.k1, s.k2),
    }
    return ConformalAlgebra(name, "lsc", s.symbols, ("L", "W"), table,
                            tuple(nonzero), tuple(nonzero_any))


def ansatz_from_algebra(A: ConformalAlgebra) -> AnsatzStructure:
    """Read the seven polynomials back from a rank-2 table (first generator = L)."""
    if A.rank != 2:
        raise AnsatzError(f"ansatz needs rank 2, {A.name} has rank {A.rank}")
    (f, fw) = A.table[0, 0]
    if not fw.is_zero:
        raise AnsatzError(f"{A.generators[0]}_lam {A.generators[0]} leaves C[del]{A.generators[0]}")
    (g1, g2), (h1, h2), (k1, k2) = A.table[0, 1], A.table[1, 0], A.table[1, 1]
    return AnsatzStructure(f=f, g1=g1, g2=g2, h1=h1, h2=h2, k1=k1, k2=k2)


# functional equations


class EquationResidual(NamedTuple):
    label: str
    value: FormalPoly

    @property
    def vanishes(self) -> bool:
        return self.value.is_zero


def _structure_constant(value, symbols) -> FormalPoly:
    if isinstance(value, FormalPoly):
        return value.lift(symbols)
    R = FormalRing(symbols)
    return R(value)


def _prepare(s: AnsatzStructure, a, b) -> tuple[AnsatzStructure, FormalPoly, FormalPoly]:
    extra = [v for v in (a, b) if isinstance(v, str)]
    syms = union_symbols(s.symbols, extra)
    s = s.lift(syms)
    return s, _structure_constant(a, syms), _structure_constant(b, syms)


def equation_residuals(s: AnsatzStructure, a="a", b="b") -> list[EquationResidual]:
    """LHS - RHS of each of the fourteen equations, in (del, lam, mu)."""
    s, a, b = _prepare(s, a, b)
    R = FormalRing(s.symbols)
    d, lam, mu = R.d, R.lam, R.mu
    c = s.c
    g1, g2, h1, h2, k1, k2 = s.g1, s.g2, s.h1, s.h2, s.k1, s.k2

    def at(p: FormalPoly, x: FormalPoly, y: FormalPoly) -> FormalPoly:
        return p.compose({LAM: x, DEL: y})

    def pl(p):  # p(lam, del)
        return p

    def pm(p):  # p(mu, del)
        return at(p, mu, d)

    def p_mu_lamd(p):  # p(mu, lam + del)
        return at(p, mu, lam + d)

    def p_lam_mud(p):  # p(lam, mu + del)
        return at(p, lam, mu + d)

    def p_sum(p):  # p(lam + mu, del)
        return at(p, lam + mu, d)

    def p_flip(p):  # p(-lam - del, del)
        return at(p, -lam - d, d)

    w = -lam - mu + a * lam + b
    out = [
        ("f1", w * p_sum(h1)
               - (p_mu_lamd(h1) * (d + lam + c) + p_mu_lamd(h2) * pl(g1) - (d + mu + lam + c) * pm(h1))),
        ("f2", w * p_sum(h2)
               - (p_mu_lamd(h2) * pl(g2) - (d + mu + lam + c) * pm(h2))),
        ("f3", (lam - mu) * p_sum(g1)
               - (p_mu_lamd(g1) * (d + lam + c) + p_mu_lamd(g2) * pl(g1)
                  - p_lam_mud(g1) * (d + mu + c) - p_lam_mud(g2) * pm(g1))),
        ("f4", (lam - mu) * p_sum(g2)
               - (p_mu_lamd(g2) * pl(g2) - p_lam_mud(g2) * pm(g2))),
        ("f5", w * p_sum(k1)
               - (p_mu_lamd(k1) * (d + lam + c) + p_mu_lamd(k2) * pl(g1)
                  - p_lam_mud(g1) * pm(h1) - p_lam_mud(g2) * pm(k1))),
        ("f6", w * p_sum(k2)
               - (p_mu_lamd(k2) * pl(g2) - p_lam_mud(g1) * pm(h2) - p_lam_mud(g2) * pm(k2))),
        ("f7", p_mu_lamd(h1) * pl(h1) + p_mu_lamd(h2) * pl(k1)
               - (p_lam_mud(h1) * pm(h1) + p_lam_mud(h2) * pm(k1))),
        ("f8", p_mu_lamd(h1) * pl(h2) + p_mu_lamd(h2) * pl(k2)
               - (p_lam_mud(h1) * pm(h2) + p_lam_mud(h2) * pm(k2))),
        ("f9", p_mu_lamd(k1) * pl(h1) + p_mu_lamd(k2) * pl(k1)
               - (p_lam_mud(k1) * pm(h1) + p_lam_mud(k2) * pm(k1))),
        ("f10", p_mu_lamd(k1) * pl(h2) + p_mu_lamd(k2) * pl(k2)
                - (p_lam_mud(k1) * pm(h2) + p_lam_mud(k2) * pm(k2))),
        ("f11", g1 - p_flip(h1)),
        ("f12", g2 - p_flip(h2) - (d + a * lam + b)),
        ("f13", k1 - p_flip(k1)),
        ("f14", k2 - p_flip(k2)),
    ]
    return [EquationResidual(label, value) for label, value in out]


EQUATION_LABELS = tuple(f"f{i}" for i in range(1, 15))


def equation_residual(s: AnsatzStructure, label: str, a="a", b="b") -> FormalPoly:
    for r in equation_residuals(s, a, b):
        if r.label == label:
            return r.value
    raise KeyError(f"unknown equation {label!r}")
