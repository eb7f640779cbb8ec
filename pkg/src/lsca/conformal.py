"""Conformal algebras that are free of finite rank over C[del].

A structure is stored as a bracket table: for every ordered pair of
generators (e_i, e_j) the vector of polynomials in (del, lam) giving
(e_i)_lam (e_j) = sum_k table[i, j][k] e_k.  Products of arbitrary module
elements follow from sesquilinearity.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

from .arith import (
    DEL,
    LAM,
    MU,
    NU,
    FormalPoly,
    FormalRing,
    PoleError,
    Scalar,
    as_rational,
    fp_coeff_in,
    fp_compose,
    fp_degree,
    fp_eval,
)

KINDS = ("lie", "lsc", "raw")

Vec = tuple[FormalPoly, ...]


class UnknownGeneratorError(KeyError):
    pass


class RenameError(ValueError):
    pass


class IncompatibleError(ValueError):
    """Two algebras cannot be compared (different generators)."""


class ConstraintError(ValueError):
    """A parameter assignment violates a recorded nonvanishing constraint."""


class GeneratorId(NamedTuple):
    index: int
    name: str


def union_symbols(*groups: Iterable[str]) -> tuple[str, ...]:
    out: list[str] = []
    for g in groups:
        for s in g:
            if s not in out:
                out.append(s)
    return tuple(out)


@dataclass(frozen=True)
class ModuleElement:
    """sum_i components[i] * e_i with components polynomial in del only."""

    generators: tuple[str, ...]
    components: Vec

    def __post_init__(self):
        if len(self.components) != len(self.generators):
            raise ValueError("one component per generator required")
        for c in self.components:
            extra = c.formal_variables() - {DEL}
            if extra:
                raise ValueError(f"module element component {c} mentions {sorted(extra)}")

    @property
    def symbols(self) -> tuple[str, ...]:
        return self.components[0].symbols

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        if other.generators != self.generators:
            raise UnknownGeneratorError(f"generator mismatch {other.generators}")
        return ModuleElement(self.generators, tuple(a + b for a, b in zip(self.components, other.components)))

    def __rmul__(self, poly) -> "ModuleElement":
        return ModuleElement(self.generators, tuple(poly * c for c in self.components))

    def __str__(self) -> str:
        return render_vec(self.components, self.generators)


@dataclass(frozen=True, eq=False)
class ConformalAlgebra:
    name: str
    kind: str
    params: tuple[str, ...]
    generators: tuple[str, ...]
    table: Mapping[tuple[int, int], Vec]
    nonzero: tuple[str, ...] = ()
    # groups of symbols that may not all vanish at once, e.g. (k1, k2)
    nonzero_any: tuple[tuple[str, ...], ...] = ()
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("generator names must be unique")
        n = len(self.generators)
        table = {}
        for i in range(n):
            for j in range(n):
                try:
                    entry = tuple(self.table[i, j])
                except KeyError:
                    raise ValueError(
                        f"bracket table misses [{self.generators[i]} _ {self.generators[j]}]"
                    ) from None
                if len(entry) != n:
                    raise ValueError("table entries must have one component per generator")
                for p in entry:
                    if p.symbols != self.params:
                        raise ValueError(f"entry over {p.symbols}, algebra declares {self.params}")
                    extra = p.formal_variables() - {DEL, LAM}
                    if extra:
                        raise ValueError(f"table entry {p} mentions {sorted(extra)}")
                table[i, j] = entry
        object.__setattr__(self, "table", table)
        for s in self.nonzero:
            if s not in self.params:
                raise ValueError(f"constraint on undeclared parameter {s!r}")

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def ring(self) -> FormalRing:
        if "ring" not in self._cache:
            self._cache["ring"] = FormalRing(self.params)
        return self._cache["ring"]

    @property
    def generator_ids(self) -> list[GeneratorId]:
        return [GeneratorId(i, g) for i, g in enumerate(self.generators)]

    def index(self, gen: str | int | GeneratorId) -> int:
        if isinstance(gen, GeneratorId):
            gen = gen.index
        if isinstance(gen, int):
            if 0 <= gen < self.rank:
                return gen
            raise UnknownGeneratorError(gen)
        try:
            return self.generators.index(gen)
        except ValueError:
            raise UnknownGeneratorError(f"{gen!r} is not a generator of {self.name}") from None

    def entry(self, a, b) -> Vec:
        return self.table[self.index(a), self.index(b)]

    def element(self, spec: "ModuleElement | str | int | Mapping") -> ModuleElement:
        """Coerce a generator name or {gen: poly-in-del} mapping into a ModuleElement."""
        if isinstance(spec, ModuleElement):
            if spec.generators != self.generators:
                raise UnknownGeneratorError(f"element over {spec.generators}, algebra has {self.generators}")
            if spec.symbols != self.params:
                return ModuleElement(self.generators, tuple(c.lift(self.params) for c in spec.components))
            return spec
        zero = FormalPoly.zero(self.params)
        comps = [zero] * self.rank
        if isinstance(spec, (str, int, GeneratorId)):
            comps[self.index(spec)] = FormalPoly.one(self.params)
        else:
            for g, p in spec.items():
                comps[self.index(g)] = comps[self.index(g)] + p
        return ModuleElement(self.generators, tuple(comps))

    def zero_vec(self) -> Vec:
        return (FormalPoly.zero(self.params),) * self.rank

    def lift(self, symbols: Sequence[str]) -> "ConformalAlgebra":
        symbols = tuple(symbols)
        if symbols == self.params:
            return self
        table = {k: tuple(p.lift(symbols) for p in v) for k, v in self.table.items()}
        return ConformalAlgebra(self.name, self.kind, symbols, self.generators, table,
                                self.nonzero, self.nonzero_any)

    def with_params(self, assignment: Mapping[str, object], name: str | None = None) -> "ConformalAlgebra":
        """Concretize parameters; the symbol universe is kept.

        Raises ConstraintError when a nonvanishing constraint is violated.
        """
        values = {k: as_rational(v) for k, v in assignment.items()}
        for s in self.nonzero:
            if s in values and values[s] == 0:
                raise ConstraintError(f"{s} must be nonzero in {self.name}")
        for group in self.nonzero_any:
            if all(s in values and values[s] == 0 for s in group):
                raise ConstraintError(f"({', '.join(group)}) may not all vanish in {self.name}")
        unknown = set(values) - set(self.params)
        if unknown:
            raise ConstraintError(f"{self.name} has no parameter(s) {', '.join(sorted(unknown))}")
        try:
            table = {k: tuple(p.partial_evaluate(values) for p in v) for k, v in self.table.items()}
        except PoleError as exc:
            raise ConstraintError(str(exc)) from None
        return ConformalAlgebra(name or self.name, self.kind, self.params, self.generators, table,
                                self.nonzero, self.nonzero_any)

    def same_table(self, other: "ConformalAlgebra") -> bool:
        if other.generators != self.generators:
            return False
        syms = union_symbols(self.params, other.params)
        a, b = self.lift(syms), other.lift(syms)
        return a.table == b.table

    def describe(self) -> list[str]:
        lines = []
        for (i, j), v in sorted(self.table.items()):
            op = "[{}_lam {}]" if self.kind == "lie" else "{}_lam {}"
            lines.append(f"{op.format(self.generators[i], self.generators[j])} = "
                         f"{render_vec(v, self.generators)}")
        return lines


def render_vec(vec: Sequence[FormalPoly], generators: Sequence[str], pretty: bool = False) -> str:
    parts = []
    for p, g in zip(vec, generators):
        if p.is_zero:
            continue
        body = p.render(pretty)
        if body == "1":
            parts.append(g)
        elif body == "-1":
            parts.append(f"-{g}")
        else:
            parts.append(f"({body})*{g}")
    return " + ".join(parts) if parts else "0"


def _vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def _vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def _vec_scale(p: FormalPoly, v: Vec) -> Vec:
    return tuple(p * c for c in v)


def _vec_compose(v: Vec, mapping) -> Vec:
    return tuple(fp_compose(c, mapping) for c in v)


# bracket evaluation


def bracket(A: ConformalAlgebra, x, y) -> Vec:
    """x_lam y by sesquilinear extension of the table.

    A left coefficient p(del) contributes p(-lam), a right coefficient q(del)
    contributes q(del + lam).
    """
    x, y = A.element(x), A.element(y)
    R = A.ring
    left = {DEL: -R.lam}
    right = {DEL: R.d + R.lam}
    out = A.zero_vec()
    for i, p in enumerate(x.components):
        if p.is_zero:
            continue
        pl = fp_compose(p, left)
        for j, q in enumerate(y.components):
            if q.is_zero:
                continue
            coeff = pl * fp_compose(q, right)
            out = _vec_add(out, _vec_scale(coeff, A.table[i, j]))
    return out


def bracket_shifted(A: ConformalAlgebra, x, y, out_var: str) -> Vec:
    """bracket with its spectral variable renamed to ``out_var``."""
    if out_var == DEL or out_var not in (LAM, MU, NU):
        raise RenameError(f"cannot rename lam to {out_var!r}")
    v = bracket(A, x, y)
    if out_var == LAM:
        return v
    return _vec_compose(v, {LAM: getattr(A.ring, _ATTR[out_var])})


_ATTR = {LAM: "lam", MU: "mu", NU: "nu", DEL: "d"}


def compose_left(A: ConformalAlgebra, inner: Vec, c, inner_var: str = LAM) -> Vec:
    """(inner)_{lam+mu} c for inner = sum_k p_k(inner_var, del) e_k.

    del in the inner coefficients acts on the left slot, so it becomes
    -(lam + mu); the table bracket (e_k)_{lam+mu} c supplies the rest.
    """
    if inner_var not in (LAM, MU):
        raise RenameError(f"inner variable must be lam or mu, got {inner_var!r}")
    R = A.ring
    total = R.lam + R.mu
    out = A.zero_vec()
    c = A.element(c)
    for k, p in enumerate(inner):
        if p.is_zero:
            continue
        pk = fp_compose(p, {DEL: -total})
        inner_br = _vec_compose(bracket(A, k, c), {LAM: total})
        out = _vec_add(out, _vec_scale(pk, inner_br))
    return out


def compose_right(A: ConformalAlgebra, b, inner: Vec, outer: str = MU, inner_var: str = LAM) -> Vec:
    """b_{outer}(inner) for inner = sum_k p_k(inner_var, del) e_k.

    del in the inner coefficients shifts to del + outer.
    """
    if outer == inner_var or outer not in (LAM, MU) or inner_var not in (LAM, MU):
        raise RenameError(f"invalid variables outer={outer!r}, inner={inner_var!r}")
    R = A.ring
    ov = getattr(R, _ATTR[outer])
    out = A.zero_vec()
    b = A.element(b)
    for k, p in enumerate(inner):
        if p.is_zero:
            continue
        pk = fp_compose(p, {DEL: R.d + ov})
        out = _vec_add(out, _vec_scale(pk, bracket_shifted(A, b, k, outer)))
    return out


def nth_product(A: ConformalAlgebra, x, y, n: int) -> ModuleElement:
    """x_(n) y = n! times the lam^n coefficient of x_lam y."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    v = bracket(A, x, y)
    f = math.factorial(n)
    return ModuleElement(A.generators, tuple(fp_coeff_in(p, LAM, n).scale(f) for p in v))


def locality_bound(A: ConformalAlgebra, x, y) -> int:
    """Largest n with a nonzero n-th product (-1 when x_lam y = 0)."""
    return max(fp_degree(p, LAM) for p in bracket(A, x, y))


# axiom residuals


@dataclass(frozen=True)
class Residual:
    label: str
    axiom: str
    triple: tuple[str, ...]
    value: Vec
    generators: tuple[str, ...]

    @property
    def vanishes(self) -> bool:
        return all(p.is_zero for p in self.value)

    def render(self, pretty: bool = False) -> str:
        return render_vec(self.value, self.generators, pretty)

    def evaluate(self, point: Mapping[str, object]) -> tuple[Fraction, ...]:
        return tuple(fp_eval(p, point) for p in self.value)


def _swap_sub(A: ConformalAlgebra) -> dict:
    R = A.ring
    return {LAM: -R.lam - R.d}


def residuals_skew(A: ConformalAlgebra) -> list[Residual]:
    """a_lam b + b_{-lam-del} a for every ordered generator pair."""
    sub = _swap_sub(A)
    out = []
    for i in range(A.rank):
        for j in range(A.rank):
            v = _vec_add(A.table[i, j], _vec_compose(A.table[j, i], sub))
            gi, gj = A.generators[i], A.generators[j]
            out.append(Residual(f"skew({gi},{gj})", "skew", (gi, gj), v, A.generators))
    return out


def residuals_jacobi(A: ConformalAlgebra) -> list[Residual]:
    """[a_lam[b_mu c]] - [[a_lam b]_{lam+mu} c] - [b_mu[a_lam c]]."""
    out = []
    gens = A.generators
    for i in range(A.rank):
        for j in range(A.rank):
            for k in range(A.rank):
                bc_mu = bracket_shifted(A, j, k, MU)
                t1 = compose_right(A, i, bc_mu, outer=LAM, inner_var=MU)
                t2 = compose_left(A, A.table[i, j], k)
                t3 = compose_right(A, j, A.table[i, k], outer=MU, inner_var=LAM)
                v = _vec_sub(_vec_sub(t1, t2), t3)
                tri = (gens[i], gens[j], gens[k])
                out.append(Residual(f"jacobi({','.join(tri)})", "jacobi", tri, v, gens))
    return out


def residuals_left_symmetric(A: ConformalAlgebra) -> list[Residual]:
    """(a_lam b)_{lam+mu} c - a_lam(b_mu c) - (b_mu a)_{lam+mu} c + b_mu(a_lam c)."""
    out = []
    gens = A.generators
    for i in range(A.rank):
        for j in range(A.rank):
            for k in range(A.rank):
                ab_c = compose_left(A, A.table[i, j], k)
                a_bc = compose_right(A, i, bracket_shifted(A, j, k, MU), outer=LAM, inner_var=MU)
                ba_c = compose_left(A, bracket_shifted(A, j, i, MU), k, inner_var=MU)
                b_ac = compose_right(A, j, A.table[i, k], outer=MU, inner_var=LAM)
                v = tuple(w - x - y + z for w, x, y, z in zip(ab_c, a_bc, ba_c, b_ac))
                tri = (gens[i], gens[j], gens[k])
                out.append(Residual(f"lsc({','.join(tri)})", "lsc", tri, v, gens))
    return out


def failing(residuals: Iterable[Residual]) -> list[Residual]:
    return [r for r in residuals if not r.vanishes]


def sub_adjacent(A: ConformalAlgebra) -> ConformalAlgebra:
    """Lie conformal algebra with [a_lam b] = a_lam b - b_{-lam-del} a."""
    sub = _swap_sub(A)
    table = {}
    for i in range(A.rank):
        for j in range(A.rank):
            table[i, j] = _vec_sub(A.table[i, j], _vec_compose(A.table[j, i], sub))
    return ConformalAlgebra(f"g({A.name})", "lie", A.params, A.generators, table,
                            A.nonzero, A.nonzero_any)


@dataclass(frozen=True)
class CompatibilityReport:
    ok: bool
    diffs: tuple[tuple[str, str, str, str], ...]  # (a, b, computed, expected)

    def __bool__(self) -> bool:
        return self.ok


def is_compatible_structure(A_lsc: ConformalAlgebra, R_lie: ConformalAlgebra) -> CompatibilityReport:
    """Does the commutator bracket of A_lsc coincide with R_lie entrywise?"""
    if A_lsc.generators != R_lie.generators:
        raise IncompatibleError(
            f"generators differ: {A_lsc.generators} vs {R_lie.generators}"
        )
    syms = union_symbols(A_lsc.params, R_lie.params)
    g = sub_adjacent(A_lsc.lift(syms))
    R = R_lie.lift(syms)
    diffs = []
    for (i, j), v in sorted(g.table.items()):
        w = R.table[i, j]
        if v != w:
            diffs.append((A_lsc.generators[i], A_lsc.generators[j],
                          render_vec(v, g.generators), render_vec(w, g.generators)))
    return CompatibilityReport(not diffs, tuple(diffs))


# randomized evaluation oracle


def random_point(symbols: Iterable[str], rng: random.Random, nonzero: Iterable[str] = (),
                 span: int = 7, denominators: Sequence[int] = (1, 1, 2, 3)) -> dict[str, Fraction]:
    """Random rational assignment to formal variables and the given parameters."""
    nz = set(nonzero)
    point = {}
    for s in (DEL, LAM, MU, NU, *symbols):
        while True:
            v = Fraction(rng.randint(-span, span), rng.choice(denominators))
            if v or s not in nz:
                break
        point[s] = v
    return point


def oracle_vanishes(residuals: Sequence[Residual], A: ConformalAlgebra, rng: random.Random,
                    trials: int = 5) -> bool:
    """Independent cross-check: every residual evaluates to 0 at random points."""
    for _ in range(trials):
        point = random_point(A.params, rng, A.nonzero)
        try:
            for r in residuals:
                if any(r.evaluate(point)):
                    return False
        except PoleError:
            continue
    return True


def scalar_entry(A: ConformalAlgebra, value) -> FormalPoly:
    """Constant FormalPoly in A's universe from a rational, Scalar or parameter name."""
    if isinstance(value, Scalar):
        return FormalPoly.const(A.params, value)
    return A.ring(value)
