"""Named structures: Virasoro, its left-symmetric lift, W(a,b), and the
eleven compatible left-symmetric families on W(a,b) (rank-2 ansatz)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from ..arith import FormalPoly, FormalRing, PoleError, as_rational
from ..conformal import ConformalAlgebra, ConstraintError
from .ansatz import AnsatzStructure, ansatz_to_algebra


class CatalogError(KeyError):
    pass


class InvalidParameterError(ConstraintError):
    pass


SYMBOLIC = None  # marker value in assignments: keep the parameter symbolic

# accepted spellings for parameter names
ALIASES = {"h1_const": "h1"}


def _const(R: FormalRing, v) -> FormalPoly:
    return R(v) if not isinstance(v, FormalPoly) else v


def _universe(*values) -> tuple[str, ...]:
    out = []
    for v in values:
        if isinstance(v, str) and v not in out:
            out.append(v)
    return tuple(out)


def make_virasoro() -> ConformalAlgebra:
    R = FormalRing(())
    return ConformalAlgebra("Vir", "lie", (), ("L",), {(0, 0): (R.d + 2 * R.lam,)})


def make_vir_lsc(c="c") -> ConformalAlgebra:
    """L_lam L = (del + lam + c) L, compatible with Virasoro."""
    syms = _universe(c)
    R = FormalRing(syms)
    return ConformalAlgebra("VirLSC", "lsc", syms, ("L",), {(0, 0): (R.d + R.lam + _const(R, c),)})


def make_W(a="a", b="b") -> ConformalAlgebra:
    syms = _universe(a, b)
    R = FormalRing(syms)
    a, b = _const(R, a), _const(R, b)
    table = {
        (0, 0): (R.d + 2 * R.lam, R.zero),
        (0, 1): (R.zero, R.d + a * R.lam + b),
        (1, 0): (R.zero, (a - 1) * R.d + a * R.lam - b),
        (1, 1): (R.zero, R.zero),
    }
    return ConformalAlgebra("W(a,b)", "lie", syms, ("L", "W"), table)


def make_w22() -> ConformalAlgebra:
    """W(2,2) conformal algebra written out directly."""
    R = FormalRing(())
    table = {
        (0, 0): (R.d + 2 * R.lam, R.zero),
        (0, 1): (R.zero, R.d + 2 * R.lam),
        (1, 0): (R.zero, R.d + 2 * R.lam),
        (1, 1): (R.zero, R.zero),
    }
    return ConformalAlgebra("W(2,2)", "lie", (), ("L", "W"), table)


@dataclass(frozen=True)
class FamilySpec:
    id: str
    params: tuple[str, ...]             # free symbols, in universe order
    fixed: Mapping[str, Fraction]       # structure constants pinned by the family
    nonzero: tuple[str, ...]
    nonzero_any: tuple[tuple[str, ...], ...]
    lemma_cases: tuple[str, ...]
    build: Callable[[FormalRing], AnsatzStructure] = field(repr=False)

    @property
    def required_params(self) -> tuple[str, ...]:
        return self.params

    @property
    def a(self):
        return self.fixed.get("a", "a")

    @property
    def b(self):
        return self.fixed.get("b", "b")

    @property
    def c(self):
        return self.fixed.get("c", "c")

    def validity(self) -> list[str]:
        out = [f"{k}={v}" for k, v in self.fixed.items()]
        out += [f"{s}!=0" for s in self.nonzero]
        out += [f"({','.join(g)})!=(0,...)" if len(g) > 2 else f"({','.join(g)})!=(0,0)"
                for g in self.nonzero_any]
        return out

    def ansatz(self) -> AnsatzStructure:
        return self.build(FormalRing(self.params))


def _t1(R):
    a, b, c = R.param("a"), R.param("b"), R.param("c")
    return AnsatzStructure.build(R, c, g2=R.d + a * R.lam + b)


def _t2(R):
    a, b, c = R.param("a"), R.param("b"), R.param("c")
    return AnsatzStructure.build(R, c, g2=R.d + a * R.lam + b + c, h2=c)


def _t3(R):
    a, b, c = R.param("a"), R.param("b"), R.param("c")
    return AnsatzStructure.build(R, c, g2=R.d + (a - 1) * R.lam + b + c, h2=R.d + R.lam + c)


def _t4(R):
    b, k1 = R.param("b"), R.param("k1")
    return AnsatzStructure.build(R, 2 * b, g2=R.d + R.lam + b, k1=k1)


def _t5(R):
    b, d = R.param("b"), R.param("d")
    return AnsatzStructure.build(R, b, g1=d, g2=R.d + R.lam + 2 * b, h1=d, h2=b,
                                 k1=-(d ** 2) * R(1 / b.scalar_value()), k2=-d)


def _t6(R):
    c, k2 = R.param("c"), R.param("k2")
    return AnsatzStructure.build(R, c, g2=R.d + R.lam, k2=k2)


def _t7(R):
    k1, k2 = R.param("k1"), R.param("k2")
    return AnsatzStructure.build(R, 0, g2=R.d + R.lam, k1=k1, k2=k2)


def _t8(R):
    c, h1, k2 = R.param("c"), R.param("h1"), R.param("k2")
    return AnsatzStructure.build(R, c, g1=h1, g2=R.d + R.lam, h1=h1,
                                 k1=h1 * (h1 - k2) * R(1 / c.scalar_value()), k2=k2)


def _t9(R):
    h1, k1 = R.param("h1"), R.param("k1")
    return AnsatzStructure.build(R, 0, g1=h1, g2=R.d + R.lam, h1=h1, k1=k1, k2=h1)


def _t10(R):
    c, k1, k2 = R.param("c"), R.param("k1"), R.param("k2")
    return AnsatzStructure.build(R, c, g2=R.d + R.lam + c, h2=c, k1=k1, k2=k2)


def _t11(R):
    c, k2 = R.param("c"), R.param("k2")
    return AnsatzStructure.build(R, c, g2=R.d + c, h2=R.d + R.lam + c, k2=k2)


_ONE, _ZERO = Fraction(1), Fraction(0)

FAMILIES: dict[str, FamilySpec] = {
    s.id: s for s in [
        FamilySpec("T1", ("a", "b", "c"), {}, (), (), ("A1",), _t1),
        FamilySpec("T2", ("a", "b", "c"), {}, ("c",), (), ("B1", "B3"), _t2),
        FamilySpec("T3", ("a", "b", "c"), {}, (), (), ("C1", "C2"), _t3),
        FamilySpec("T4", ("b", "k1"), {"a": _ONE}, ("k1",), (), ("A2",), _t4),
        FamilySpec("T5", ("b", "d"), {"a": _ONE}, ("b", "d"), (), ("B2",), _t5),
        FamilySpec("T6", ("c", "k2"), {"a": _ONE, "b": _ZERO}, ("k2",), (), ("A3",), _t6),
        FamilySpec("T7", ("k1", "k2"), {"a": _ONE, "b": _ZERO, "c": _ZERO}, ("k1", "k2"), (),
                   ("A4",), _t7),
        FamilySpec("T8", ("c", "h1", "k2"), {"a": _ONE, "b": _ZERO}, ("c", "h1"), (), ("A5",), _t8),
        FamilySpec("T9", ("h1", "k1"), {"a": _ONE, "b": _ZERO, "c": _ZERO}, ("h1", "k1"), (),
                   ("A6",), _t9),
        FamilySpec("T10", ("c", "k1", "k2"), {"a": _ONE, "b": _ZERO}, ("c",), (("k1", "k2"),),
                   ("B4",), _t10),
        FamilySpec("T11", ("c", "k2"), {"a": _ONE, "b": _ZERO}, ("k2",), (), ("C3",), _t11),
    ]
}

FAMILY_IDS = tuple(FAMILIES)


def family_spec(family_id: str) -> FamilySpec:
    key = family_id.upper()
    if key.isdigit():
        key = "T" + key
    try:
        return FAMILIES[key]
    except KeyError:
        raise CatalogError(f"unknown family {family_id!r}; known: {', '.join(FAMILY_IDS)}") from None


def normalize_assignment(spec: FamilySpec, assignment: Mapping[str, object] | None) -> dict[str, Fraction]:
    """Check an assignment against the family's validity clauses.

    Values of None (SYMBOLIC) leave the symbol free.  Pinned structure
    constants may be restated but must agree.
    """
    values: dict[str, Fraction] = {}
    for name, v in (assignment or {}).items():
        name = ALIASES.get(name, name)
        if v is SYMBOLIC or (isinstance(v, str) and v.lower() in ("symbolic", "sym", "")):
            if name not in spec.params:
                raise InvalidParameterError(f"{spec.id} has no free parameter {name!r}")
            continue
        try:
            q = as_rational(v)
        except (TypeError, ValueError, ZeroDivisionError):
            raise InvalidParameterError(f"{name}={v!r} is not a rational number") from None
        if name in spec.fixed:
            if q != spec.fixed[name]:
                raise InvalidParameterError(f"{spec.id} requires {name}={spec.fixed[name]}, got {q}")
            continue
        if name not in spec.params:
            raise InvalidParameterError(
                f"{spec.id} has no parameter {name!r}; parameters: {', '.join(spec.params) or 'none'}")
        values[name] = q
    for s in spec.nonzero:
        if values.get(s) == 0:
            raise InvalidParameterError(f"{spec.id} requires {s}!=0")
    for group in spec.nonzero_any:
        if all(values.get(s) == 0 for s in group):
            raise InvalidParameterError(f"{spec.id} requires ({', '.join(group)}) not all zero")
    return values


def family_ansatz(family_id: str, assignment: Mapping[str, object] | None = None) -> AnsatzStructure:
    spec = family_spec(family_id)
    values = normalize_assignment(spec, assignment)
    s = spec.ansatz()
    try:
        return s.partial_evaluate(values) if values else s
    except PoleError as exc:
        raise InvalidParameterError(str(exc)) from None


def make_family(family_id: str, assignment: Mapping[str, object] | None = None) -> ConformalAlgebra:
    spec = family_spec(family_id)
    s = family_ansatz(spec.id, assignment)
    return ansatz_to_algebra(s, spec.id, spec.nonzero, spec.nonzero_any)


def family_structure_constants(family_id: str, assignment: Mapping[str, object] | None = None):
    """(a, b) of the W(a,b) the family is compatible with: a Fraction or a symbol name."""
    spec = family_spec(family_id)
    values = normalize_assignment(spec, assignment)
    out = []
    for name in ("a", "b"):
        if name in spec.fixed:
            out.append(spec.fixed[name])
        else:
            out.append(values.get(name, name))
    return tuple(out)


def family_W(family_id: str, assignment: Mapping[str, object] | None = None) -> ConformalAlgebra:
    a, b = family_structure_constants(family_id, assignment)
    return make_W(a, b)


def sample_assignment(family_id: str) -> dict[str, Fraction]:
    """A concrete valid point; denominators and nonzero parameters avoid 0 and 1 collisions."""
    spec = family_spec(family_id)
    pool = [Fraction(2), Fraction(-3), Fraction(5), Fraction(1, 2), Fraction(7)]
    return {p: pool[i % len(pool)] for i, p in enumerate(spec.params)}


# lemma cases, transcribed on their own so the cross-reference is a real check


@dataclass(frozen=True)
class LemmaCase:
    label: str
    family: str
    specialization: Mapping[str, Fraction]
    params: tuple[str, ...]
    build: Callable[[FormalRing], AnsatzStructure] = field(repr=False)

    def ansatz(self) -> AnsatzStructure:
        return self.build(FormalRing(self.params))


def _case(label, family, params, specialization=None):
    def deco(fn):
        LEMMA_CASES[label] = LemmaCase(label, family, dict(specialization or {}), params, fn)
        return fn
    return deco


LEMMA_CASES: dict[str, LemmaCase] = {}


@_case("A1", "T1", ("a", "b", "c"))
def _a1(R):
    a, b = R.param("a"), R.param("b")
    return AnsatzStructure.build(R, R.param("c"), g2=R.d + a * R.lam + b)


@_case("A2", "T4", ("b", "k1"))
def _a2(R):
    b = R.param("b")
    return AnsatzStructure.build(R, 2 * b, g2=R.d + R.lam + b, k1=R.param("k1"))


@_case("A3", "T6", ("c", "k2"))
def _a3(R):
    return AnsatzStructure.build(R, R.param("c"), g2=R.d + R.lam, k2=R.param("k2"))


@_case("A4", "T7", ("k1", "k2"))
def _a4(R):
    return AnsatzStructure.build(R, 0, g2=R.d + R.lam, k1=R.param("k1"), k2=R.param("k2"))


@_case("A5", "T8", ("c", "h1", "k2"))
def _a5(R):
    c, h, k2 = R.param("c"), R.param("h1"), R.param("k2")
    k1 = (h * h - h * k2) * R(1 / c.scalar_value())
    return AnsatzStructure.build(R, c, g1=h, h1=h, g2=R.d + R.lam, k1=k1, k2=k2)


@_case("A6", "T9", ("h1", "k1"))
def _a6(R):
    h = R.param("h1")
    return AnsatzStructure.build(R, 0, g1=h, h1=h, g2=R.d + R.lam, k1=R.param("k1"), k2=h)


@_case("B1", "T2", ("a", "b", "c"))
def _b1(R):
    a, b, c = R.param("a"), R.param("b"), R.param("c")
    return AnsatzStructure.build(R, c, g2=R.d + a * R.lam + b + c, h2=c)


@_case("B2", "T5", ("b", "d"))
def _b2(R):
    b, d = R.param("b"), R.param("d")
    return AnsatzStructure.build(R, b, g1=d, h1=d, g2=R.d + R.lam + 2 * b, h2=b,
                                 k1=-d * d * R(1 / b.scalar_value()), k2=-d)


@_case("B3", "T2", ("a", "c"), {"b": Fraction(0)})
def _b3(R):
    a, c = R.param("a"), R.param("c")
    return AnsatzStructure.build(R, c, g2=R.d + a * R.lam + c, h2=c)


@_case("B4", "T10", ("c", "k1", "k2"))
def _b4(R):
    c = R.param("c")
    return AnsatzStructure.build(R, c, g2=R.d + R.lam + c, h2=c, k1=R.param("k1"), k2=R.param("k2"))


@_case("C1", "T3", ("a", "b", "c"))
def _c1(R):
    a, b, c = R.param("a"), R.param("b"), R.param("c")
    return AnsatzStructure.build(R, c, g2=R.d + (a - 1) * R.lam + b + c, h2=R.d + R.lam + c)


@_case("C2", "T3", ("a", "c"), {"b": Fraction(0)})
def _c2(R):
    a, c = R.param("a"), R.param("c")
    return AnsatzStructure.build(R, c, g2=R.d + (a - 1) * R.lam + c, h2=R.d + R.lam + c)


@_case("C3", "T11", ("c", "k2"))
def _c3(R):
    c = R.param("c")
    return AnsatzStructure.build(R, c, g2=R.d + c, h2=R.d + R.lam + c, k2=R.param("k2"))


def lemma_case_matches(label: str) -> bool:
    """Does the lemma's stated structure equal its theorem family after specialization?"""
    case = LEMMA_CASES[label]
    fam = family_ansatz(case.family, dict(case.specialization))
    own = case.ansatz()
    syms = tuple(dict.fromkeys(fam.symbols + own.symbols))
    return fam.lift(syms) == own.lift(syms)
