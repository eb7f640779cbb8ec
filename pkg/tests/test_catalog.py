"""Catalog: named algebras, the rank-2 ansatz, the fourteen equations and family gating."""

import random
from fractions import Fraction

import pytest

from lsca.arith import FormalPoly, FormalRing, fp_compose
from lsca.catalog import (
    EQUATION_LABELS,
    FAMILIES,
    FAMILY_IDS,
    LEMMA_CASES,
    AnsatzError,
    AnsatzStructure,
    CatalogError,
    InvalidParameterError,
    ansatz_from_algebra,
    ansatz_to_algebra,
    equation_residual,
    equation_residuals,
    equations_hold,
    family_ansatz,
    family_spec,
    family_structure_constants,
    family_W,
    generic_holds,
    lemma_case_matches,
    make_family,
    make_vir_lsc,
    make_W,
    make_w22,
    meta_consistency,
    random_linear_trial,
    sample_assignment,
)
from lsca.conformal import failing, is_compatible_structure, residuals_left_symmetric, sub_adjacent


# named algebras


def test_vir_lsc_is_left_symmetric():
    assert not failing(residuals_left_symmetric(make_vir_lsc()))


def test_W_2_0_is_the_w22_table():
    assert make_W(2, 0).same_table(make_w22())
    assert not make_W(1, 0).same_table(make_w22())


def test_W_table():
    W = make_W()
    R = W.ring
    a, b = R.param("a"), R.param("b")
    assert W.entry("L", "W") == (R.zero, R.d + a * R.lam + b)
    assert W.entry("W", "W") == (R.zero, R.zero)


# families


def test_family_ids():
    assert FAMILY_IDS == tuple(f"T{i}" for i in range(1, 12))
    assert family_spec("t5").id == "T5" and family_spec("5").id == "T5"
    with pytest.raises(CatalogError):
        family_spec("T12")


def test_family_2_symbolic_c():
    A = make_family("T2")
    R = A.ring
    assert A.entry("W", "L") == (R.zero, R.param("c"))
    assert "c" in A.nonzero


def test_family_8_values():
    A = make_family("T8", {"c": 1, "h1": 1, "k2": 0})
    assert A.entry("W", "W") == (A.ring.one, A.ring.zero)


def test_family_4_requires_k1():
    with pytest.raises(InvalidParameterError):
        make_family("T4", {"b": 0, "k1": 0})
    assert make_family("T4", {"b": 0, "k1": 2})


@pytest.mark.parametrize("fid,bad", [
    ("T2", {"c": 0}),
    ("T4", {"k1": 0}),
    ("T5", {"b": 0}),
    ("T5", {"d": 0}),
    ("T6", {"k2": 0}),
    ("T7", {"k1": 0}),
    ("T7", {"k2": 0}),
    ("T8", {"c": 0}),
    ("T8", {"h1": 0}),
    ("T9", {"h1": 0}),
    ("T9", {"k1": 0}),
    ("T10", {"c": 0}),
    ("T10", {"k1": 0, "k2": 0}),
    ("T11", {"k2": 0}),
    ("T4", {"a": 2}),
    ("T6", {"b": 1}),
    ("T7", {"c": 1}),
    ("T1", {"zz": 1}),
])
def test_validity_rejects(fid, bad):
    with pytest.raises(InvalidParameterError):
        make_family(fid, bad)


@pytest.mark.parametrize("fid,ok", [
    ("T2", {"c": -1}),
    ("T4", {"b": 0, "k1": 1}),
    ("T5", {"b": 1, "d": -1}),
    ("T6", {"c": 0, "k2": 1}),
    ("T8", {"c": 1, "h1": 1, "k2": 0}),
    ("T10", {"k1": 0, "k2": 1}),
    ("T10", {"k1": 1, "k2": 0}),
    ("T11", {"c": 0, "k2": 1}),
    ("T4", {"a": 1}),
    ("T1", {"a": 0, "b": 0, "c": 0}),
    ("T3", {"a": "symbolic"}),
])
def test_validity_accepts_boundaries(fid, ok):
    assert make_family(fid, ok).kind == "lsc"


@pytest.mark.parametrize("fid", FAMILY_IDS)
def test_family_is_compatible(fid):
    A = make_family(fid)
    assert not failing(residuals_left_symmetric(A))
    W = family_W(fid)
    assert is_compatible_structure(A, W).ok
    assert sub_adjacent(A).same_table(W)


def test_family_structure_constants():
    assert family_structure_constants("T4") == (1, "b")
    assert family_structure_constants("T7") == (1, 0)
    assert family_structure_constants("T1", {"a": 3}) == (3, "b")


def test_validity_strings():
    assert family_spec("T10").validity() == ["a=1", "b=0", "c!=0", "(k1,k2)!=(0,0)"]
    assert family_spec("T1").validity() == []


def test_alias_for_constant_h1():
    assert make_family("T8", {"h1_const": 2}).same_table(make_family("T8", {"h1": 2}))


# lemma cases


def test_lemma_cross_reference_closure():
    assert sorted(LEMMA_CASES) == ["A1", "A2", "A3", "A4", "A5", "A6", "B1", "B2", "B3", "B4", "C1", "C2", "C3"]
    covered = {case.family for case in LEMMA_CASES.values()}
    assert covered == set(FAMILY_IDS)
    for fid, spec in FAMILIES.items():
        for label in spec.lemma_cases:
            assert LEMMA_CASES[label].family == fid


@pytest.mark.parametrize("label", sorted(LEMMA_CASES))
def test_lemma_case_matches_family(label):
    assert lemma_case_matches(label)


# ansatz


def test_ansatz_family_1():
    R = FormalRing(("a", "b", "c"))
    s = AnsatzStructure.build(R, R.param("c"), g2=R.d + R.param("a") * R.lam + R.param("b"))
    assert ansatz_to_algebra(s).same_table(make_family("T1"))


def test_zero_ansatz_W_annihilates():
    R = FormalRing(("c",))
    A = ansatz_to_algebra(AnsatzStructure.build(R, R.param("c")))
    for x, y in (("L", "W"), ("W", "L"), ("W", "W")):
        assert all(p.is_zero for p in A.entry(x, y))


@pytest.mark.parametrize("fid", FAMILY_IDS)
def test_ansatz_round_trip(fid):
    s = family_ansatz(fid)
    assert ansatz_from_algebra(ansatz_to_algebra(s)) == s


def test_ansatz_rejects_bad_f():
    R = FormalRing(())
    with pytest.raises(AnsatzError):
        AnsatzStructure.build(R).replace(f=R.d + 2 * R.lam)
    with pytest.raises(AnsatzError):
        AnsatzStructure.build(R, g1=R.mu)


# equations


@pytest.mark.parametrize("fid", FAMILY_IDS)
def test_family_equations_vanish(fid):
    a, b = family_structure_constants(fid)
    res = equation_residuals(family_ansatz(fid), a, b)
    assert [r.label for r in res] == list(EQUATION_LABELS)
    assert all(r.vanishes for r in res)


@pytest.mark.parametrize("fid", FAMILY_IDS)
def test_family_equations_vanish_at_sample(fid):
    values = sample_assignment(fid)
    a, b = family_structure_constants(fid, values)
    assert equations_hold(family_ansatz(fid, values), a, b)


def test_case_a_constant_k2():
    R = FormalRing(("a", "b", "c", "k"))
    a, b, k = R.param("a"), R.param("b"), R.param("k")
    s = AnsatzStructure.build(R, R.param("c"), g2=R.d + a * R.lam + b, k2=k)
    got = equation_residual(s, "f6")
    want = ((a - 1) * R.lam + b) * k
    assert got in (want, -want)


def test_zero_ansatz_f12():
    R = FormalRing(("c",))
    s = AnsatzStructure.build(R, R.param("c"))
    res = {r.label: r.value for r in equation_residuals(s)}
    S = res["f12"].symbols
    F = FormalRing(S)
    assert res["f12"] == -(F.d + F.param("a") * F.lam + F.param("b"))


def test_equations_accept_rationals():
    res = equation_residuals(family_ansatz("T7"), 1, 0)
    assert all(r.vanishes for r in res)
    res = equation_residuals(family_ansatz("T7"), 2, 0)
    assert not all(r.vanishes for r in res)


def _rand(R, rng):
    return FormalPoly(R.symbols, {(rng.randint(0, 2), rng.randint(0, 2), 0, 0): rng.randint(-3, 3)
                                  for _ in range(3)})


@pytest.mark.parametrize("label,field", [
    (e, f) for e in ("f1", "f3", "f5") for f in ("g1", "h1", "k1")
] + [("f7", "g1"), ("f7", "k1")])
def test_superposition(label, field):
    """Affine in the named polynomial with the others fixed (f7 needs h2 = 0)."""
    rng = random.Random(hash((label, field)) & 0xFFFF)
    R = FormalRing(("a", "b", "c"))
    for _ in range(5):
        others = {n: _rand(R, rng) for n in ("g1", "g2", "h1", "k1", "k2") if n != field}
        if label != "f7":
            others["h2"] = _rand(R, rng)

        def r(x):
            return equation_residual(AnsatzStructure.build(R, R.param("c"), **{**others, field: x}), label)

        p, q = _rand(R, rng), _rand(R, rng)
        assert (r(p + q) - r(p) - r(q) + r(R.zero)).is_zero


def test_f7_is_quadratic_in_h1():
    R = FormalRing(())
    s = AnsatzStructure.build(R)
    r1 = equation_residual(s.replace(h1=R.d), "f7")
    r2 = equation_residual(s.replace(h1=2 * R.d), "f7")
    assert r2 == 4 * r1 and not r1.is_zero


# meta-consistency


@pytest.mark.parametrize("fid", FAMILY_IDS)
def test_meta_consistency_families(fid):
    a, b = family_structure_constants(fid)
    s = family_ansatz(fid)
    assert meta_consistency(s, a, b)
    assert equations_hold(s, a, b) and generic_holds(s, a, b)


def test_meta_consistency_zero_ansatz():
    s = AnsatzStructure.build(FormalRing(()))
    assert meta_consistency(s)
    assert not equations_hold(s) and not generic_holds(s)


def test_meta_consistency_random_trials():
    rng = random.Random(2024)
    truths = 0
    for _ in range(100):
        s, a, b = random_linear_trial(rng)
        assert meta_consistency(s, a, b)
        truths += equations_hold(s, a, b)
    assert 0 < truths < 100
