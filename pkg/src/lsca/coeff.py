"""Coefficient algebra Coeff(R): Z-indexed basis a_n with products read off
the lambda-bracket, plus window verification against closed forms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence

from .arith import Scalar, falling
from .conformal import ConformalAlgebra, GeneratorId
from .catalog.families import family_spec, make_family, normalize_assignment


class CoeffBasisVector(NamedTuple):
    gen: GeneratorId
    index: int

    def __str__(self) -> str:
        return f"{self.gen.name}_{{{self.index}}}"


def basis(A: ConformalAlgebra, gen, index: int) -> CoeffBasisVector:
    i = A.index(gen)
    return CoeffBasisVector(GeneratorId(i, A.generators[i]), int(index))


class CoeffElement:
    """Finite combination of basis vectors; zero coefficients are never stored."""

    __slots__ = ("symbols", "terms")

    def __init__(self, symbols: Iterable[str], terms: Mapping[CoeffBasisVector, Scalar] | None = None):
        self.symbols = tuple(symbols)
        self.terms = {k: v for k, v in (terms or {}).items() if not v.is_zero}

    @classmethod
    def zero(cls, symbols) -> "CoeffElement":
        return cls(symbols)

    @classmethod
    def of(cls, symbols, v: CoeffBasisVector, coeff=1) -> "CoeffElement":
        symbols = tuple(symbols)
        s = coeff if isinstance(coeff, Scalar) else Scalar.const(symbols, coeff)
        return cls(symbols, {v: s})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _acc(self, other: "CoeffElement", sign: int) -> "CoeffElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            v = v if sign > 0 else -v
            out[k] = out[k] + v if k in out else v
        return CoeffElement(self.symbols, out)

    def __add__(self, other: "CoeffElement") -> "CoeffElement":
        return self._acc(other, 1)

    def __sub__(self, other: "CoeffElement") -> "CoeffElement":
        return self._acc(other, -1)

    def __neg__(self) -> "CoeffElement":
        return CoeffElement(self.symbols, {k: -v for k, v in self.terms.items()})

    def scale(self, s) -> "CoeffElement":
        if not isinstance(s, Scalar):
            s = Scalar.const(self.symbols, s)
        return CoeffElement(self.symbols, {k: v * s for k, v in self.terms.items()})

    def relabel(self, offsets: Sequence[int]) -> "CoeffElement":
        """Shift indices: (e_k)_p -> (e_k)_{p + offsets[k]}."""
        return CoeffElement(self.symbols, {CoeffBasisVector(k.gen, k.index + offsets[k.gen.index]): v
                                           for k, v in self.terms.items()})

    def lift(self, symbols) -> "CoeffElement":
        return CoeffElement(symbols, {k: v.lift(symbols) for k, v in self.terms.items()})

    def indices(self) -> list[int]:
        return [k.index for k in self.terms]

    def __eq__(self, other) -> bool:
        if isinstance(other, CoeffElement):
            return self.terms == other.terms
        if other == 0:
            return self.is_zero
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0].gen.index, -kv[0].index))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, v in self.sorted_terms():
            if v.is_constant:
                q = v.constant_value()
                neg, mag = q < 0, abs(q)
                coef = "" if mag == 1 else f"{mag}*"
            else:
                neg, coef = False, f"({v})*"
            parts.append(("-" if neg else "+", f"{coef}{k}"))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    __repr__ = __str__


@dataclass(frozen=True)
class ShiftConvention:
    offsets: tuple[int, ...]

    @classmethod
    def uniform(cls, t: int, rank: int) -> "ShiftConvention":
        return cls((t,) * rank)

    @property
    def inverse(self) -> tuple[int, ...]:
        return tuple(-t for t in self.offsets)


def phi(A: ConformalAlgebra) -> ShiftConvention:
    """The +1 relabeling used when stating coefficient formulas."""
    return ShiftConvention.uniform(1, A.rank)


def _raw_product(A: ConformalAlgebra, x: CoeffBasisVector, y: CoeffBasisVector) -> CoeffElement:
    m, n = x.index, y.index
    vec = A.table[x.gen.index, y.gen.index]
    ids = A.generator_ids
    terms: dict[CoeffBasisVector, Scalar] = {}
    for k, poly in enumerate(vec):
        for exps, coeff in poly.items():
            s, r = exps[0], exps[1]  # del and lam exponents
            w = falling(m, r) * falling(m + n - r, s) * (-1) ** s
            if not w:
                continue
            key = CoeffBasisVector(ids[k], m + n - r - s)
            val = coeff * w
            terms[key] = terms[key] + val if key in terms else val
    return CoeffElement(A.params, terms)


class CoeffAlgebra:
    """Products of Coeff(A) with a memo of basis products."""

    def __init__(self, A: ConformalAlgebra, shift: ShiftConvention | None = None):
        self.A = A
        self.shift = shift or ShiftConvention.uniform(0, A.rank)
        if len(self.shift.offsets) != A.rank:
            raise ValueError("shift convention needs one offset per generator")
        self._memo: dict[tuple[CoeffBasisVector, CoeffBasisVector], CoeffElement] = {}

    @property
    def symbols(self) -> tuple[str, ...]:
        return self.A.params

    def v(self, gen, index: int) -> CoeffBasisVector:
        return basis(self.A, gen, index)

    def element(self, gen, index: int, coeff=1) -> CoeffElement:
        return CoeffElement.of(self.symbols, self.v(gen, index), coeff)

    def product(self, x: CoeffBasisVector, y: CoeffBasisVector) -> CoeffElement:
        key = (x, y)
        hit = self._memo.get(key)
        if hit is None:
            t = self.shift.offsets
            xs = CoeffBasisVector(x.gen, x.index + t[x.gen.index])
            ys = CoeffBasisVector(y.gen, y.index + t[y.gen.index])
            hit = _raw_product(self.A, xs, ys)
            if any(t):
                hit = hit.relabel(self.shift.inverse)
            self._memo[key] = hit
        return hit

    def mul(self, X: CoeffElement, Y: CoeffElement) -> CoeffElement:
        out = CoeffElement.zero(self.symbols)
        for x, cx in X.terms.items():
            for y, cy in Y.terms.items():
                out = out + self.product(x, y).scale(cx * cy)
        return out

    def commutator(self, x: CoeffBasisVector, y: CoeffBasisVector) -> CoeffElement:
        # for a Lie table the product already is the bracket
        if self.A.kind == "lie":
            return self.product(x, y)
        return self.product(x, y) - self.product(y, x)

    def associator_residual(self, x, y, z) -> CoeffElement:
        X, Y, Z = (CoeffElement.of(self.symbols, v) for v in (x, y, z))
        xy, yx = self.product(x, y), self.product(y, x)
        return (self.mul(xy, Z) - self.mul(X, self.mul(Y, Z))
                - self.mul(yx, Z) + self.mul(Y, self.mul(X, Z)))


def coeff_product(A: ConformalAlgebra, x: CoeffBasisVector, y: CoeffBasisVector,
                  shift: ShiftConvention | None = None) -> CoeffElement:
    return CoeffAlgebra(A, shift).product(x, y)


def coeff_commutator(A: ConformalAlgebra, x: CoeffBasisVector, y: CoeffBasisVector,
                     shift: ShiftConvention | None = None) -> CoeffElement:
    return CoeffAlgebra(A, shift).commutator(x, y)


def associator_residual(A: ConformalAlgebra, x, y, z, shift: ShiftConvention | None = None) -> CoeffElement:
    return CoeffAlgebra(A, shift).associator_residual(x, y, z)


def degree_bound(A: ConformalAlgebra) -> int:
    """Largest lam-degree + del-degree over all table monomials."""
    best = 0
    for vec in A.table.values():
        for p in vec:
            for exps, _ in p.items():
                best = max(best, exps[0] + exps[1])
    return best


# reports


@dataclass(frozen=True)
class Mismatch:
    label: str
    computed: str
    expected: str


@dataclass
class WindowReport:
    name: str
    window: tuple[int, int]
    checked: int = 0
    failures: list[Mismatch] = field(default_factory=list)
    failure_count: int = 0
    keep: int = 20

    @property
    def ok(self) -> bool:
        return self.failure_count == 0

    def add(self, label: str, computed: CoeffElement, expected: CoeffElement) -> None:
        self.checked += 1
        if computed != expected:
            self.failure_count += 1
            if len(self.failures) < self.keep:
                self.failures.append(Mismatch(label, str(computed), str(expected)))


def verify_left_symmetry_window(A: ConformalAlgebra, N: int, shift: ShiftConvention | None = None) -> WindowReport:
    C = CoeffAlgebra(A, shift)
    vecs = [C.v(g, i) for g in range(A.rank) for i in range(-N, N + 1)]
    rep = WindowReport(f"left-symmetry {A.name}", (-N, N))
    zero = CoeffElement.zero(A.params)
    for x, y, z in itertools.product(vecs, repeat=3):
        rep.add(f"({x}, {y}, {z})", C.associator_residual(x, y, z), zero)
    return rep


# closed forms in the +1 presentation


def _closed_w(a: Scalar, b: Scalar):
    def form(kind: str, m: int, n: int, E) -> CoeffElement:
        if kind == "LL":
            return E("L", m + n, m - n)
        if kind == "LW":
            return E("W", m + n, (a - 1) * (m + 1) - (n + 1)) + E("W", m + n + 1, b)
        if kind == "WL":
            return E("W", m + n, -((a - 1) * (n + 1) - (m + 1))) - E("W", m + n + 1, b)
        return E("W", m + n, 0)
    return form


def verify_lie_window(A: ConformalAlgebra, window: int, a="a", b="b") -> WindowReport:
    """Commutators of Coeff(A) in the +1 presentation against the W(a,b) closed forms."""
    C = CoeffAlgebra(A, phi(A))
    syms = A.params
    a, b = _as_scalar(a, syms), _as_scalar(b, syms)
    form = _closed_w(a, b)
    rep = WindowReport(f"lie {A.name}", (-window, window))
    E = _builder(C)
    for m in range(-window, window + 1):
        for n in range(-window, window + 1):
            for g1, g2 in (("L", "L"), ("L", "W"), ("W", "L"), ("W", "W")):
                got = C.commutator(C.v(g1, m), C.v(g2, n))
                rep.add(f"[{g1}_{m}, {g2}_{n}]", got, form(g1 + g2, m, n, E))
    return rep


def witt_closed_form(C: "CoeffAlgebra", i: int, j: int, c) -> CoeffElement:
    E = _builder(C)
    return E("L", i + j + 1, c) + E("L", i + j, -(j + 1))


def _as_scalar(v, syms) -> Scalar:
    if isinstance(v, Scalar):
        return v.lift(syms)
    if isinstance(v, str):
        return Scalar.param(syms, v)
    return Scalar.const(syms, v)


def _builder(C: CoeffAlgebra) -> Callable[..., CoeffElement]:
    def E(gen, index, coeff) -> CoeffElement:
        return CoeffElement.of(C.symbols, C.v(gen, index), _as_scalar(coeff, C.symbols))
    return E


def _corollary_forms(fid: str, P: Callable[[str], Scalar]):
    """Closed forms of the four products for one family; P(name) gives parameters."""
    a, b = P("a"), P("b")

    def LL(m, n, E, c):
        return E("L", m + n + 1, c) + E("L", m + n, -(n + 1))

    def zero(m, n, E):
        return E("L", m + n, 0)

    forms: dict[str, Callable] = {}
    if fid == "T1":
        c = P("c")
        forms = {
            "LW": lambda m, n, E: E("W", m + n, (a - 1) * (m + 1) - (n + 1)) + E("W", m + n + 1, b),
            "WL": zero, "WW": zero,
        }
    elif fid == "T2":
        c = P("c")
        forms = {
            "LW": lambda m, n, E: E("W", m + n, (a - 1) * (m + 1) - (n + 1)) + E("W", m + n + 1, b + c),
            "WL": lambda m, n, E: E("W", m + n + 1, c),
            "WW": zero,
        }
    elif fid == "T3":
        c = P("c")
        forms = {
            "LW": lambda m, n, E: E("W", m + n, (a - 2) * (m + 1) - (n + 1)) + E("W", m + n + 1, b + c),
            "WL": lambda m, n, E: E("W", m + n, -(n + 1)) + E("W", m + n + 1, c),
            "WW": zero,
        }
    elif fid == "T4":
        c = 2 * b
        forms = {
            "LW": lambda m, n, E: E("W", m + n, -(n + 1)) + E("W", m + n + 1, b),
            "WL": zero,
            "WW": lambda m, n, E: E("L", m + n + 1, P("k1")),
        }
    elif fid == "T5":
        c, d = b, P("d")
        forms = {
            "LW": lambda m, n, E: E("L", m + n + 1, d) + E("W", m + n, -(n + 1)) + E("W", m + n + 1, 2 * b),
            "WL": lambda m, n, E: E("L", m + n + 1, d) + E("W", m + n + 1, b),
            "WW": lambda m, n, E: E("L", m + n + 1, -(d * d) / b) + E("W", m + n + 1, -d),
        }
    elif fid == "T6":
        c = P("c")
        forms = {
            "LW": lambda m, n, E: E("W", m + n, -(n + 1)),
            "WL": zero,
            "WW": lambda m, n, E: E("W", m + n + 1, P("k2")),
        }
    elif fid == "T7":
        c = P("c")  # the item has no c term; the family pins c = 0
        forms = {
            "LW": lambda m, n, E: E("W", m + n, -(n + 1)),
            "WL": zero,
            "WW": lambda m, n, E: E("L", m + n + 1, P("k1")) + E("W", m + n + 1, P("k2")),
        }
    elif fid == "T8":
        c, h1, k2 = P("c"), P("h1"), P("k2")
        forms = {
            "LW": lambda m, n, E: E("L", m + n + 1, h1) + E("W", m + n, -(n + 1)),
            "WL": lambda m, n, E: E("L", m + n + 1, h1),
            "WW": lambda m, n, E: E("L", m + n + 1, h1 * (h1 - k2) / c) + E("W", m + n + 1, k2),
        }
    elif fid == "T9":
        c, h1 = P("c"), P("h1")  # the item writes c L_{m+n+1}; the family pins c = 0
        forms = {
            "LW": lambda m, n, E: E("L", m + n + 1, h1) + E("W", m + n, -(n + 1)),
            "WL": lambda m, n, E: E("L", m + n + 1, h1),
            "WW": lambda m, n, E: E("L", m + n + 1, P("k1")) + E("W", m + n + 1, h1),
        }
    elif fid == "T10":
        c = P("c")
        forms = {
            "LW": lambda m, n, E: E("W", m + n + 1, c) + E("W", m + n, -(n + 1)),
            "WL": lambda m, n, E: E("W", m + n + 1, c),
            "WW": lambda m, n, E: E("L", m + n + 1, P("k1")) + E("W", m + n + 1, P("k2")),
        }
    elif fid == "T11":
        c = P("c")
        forms = {
            "LW": lambda m, n, E: E("W", m + n, -(m + n + 2)) + E("W", m + n + 1, c),
            "WL": lambda m, n, E: E("W", m + n, -(n + 1)) + E("W", m + n + 1, c),
            "WW": lambda m, n, E: E("W", m + n + 1, P("k2")),
        }
    else:  # pragma: no cover - family_spec already rejects unknown ids
        raise KeyError(fid)
    forms["LL"] = lambda m, n, E, _c=c: LL(m, n, E, _c)
    return forms


def verify_corollary(family_id: str, assignment: Mapping[str, object] | None = None,
                     window: int | tuple[int, int] = 4) -> WindowReport:
    """Shifted products of a family against its closed coefficient formulas."""
    spec = family_spec(family_id)
    values = normalize_assignment(spec, assignment)
    A = make_family(spec.id, values)
    syms = A.params

    def P(name: str) -> Scalar:
        if name in spec.fixed:
            return Scalar.const(syms, spec.fixed[name])
        if name in values:
            return Scalar.const(syms, values[name])
        return Scalar.param(syms, name)

    lo, hi = (-window, window) if isinstance(window, int) else window
    C = CoeffAlgebra(A, phi(A))
    E = _builder(C)
    forms = _corollary_forms(spec.id, P)
    rep = WindowReport(f"corollary {spec.id}", (lo, hi))
    for m in range(lo, hi + 1):
        for n in range(lo, hi + 1):
            for g1, g2 in (("L", "L"), ("L", "W"), ("W", "L"), ("W", "W")):
                got = C.product(C.v(g1, m), C.v(g2, n))
                rep.add(f"{g1}_{m} o {g2}_{n}", got, forms[g1 + g2](m, n, E))
    return rep


__all__ = [
    "CoeffBasisVector", "CoeffElement", "ShiftConvention", "CoeffAlgebra", "WindowReport", "Mismatch",
    "basis", "phi", "coeff_product", "coeff_commutator", "associator_residual", "degree_bound",
    "verify_left_symmetry_window", "verify_lie_window", "verify_corollary", "witt_closed_form",
]
