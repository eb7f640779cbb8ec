"""Refutation witnesses for the excluded proof branches."""

from dataclasses import replace
from fractions import Fraction

import pytest

from lsca.arith import FormalRing, fp_eval
from lsca.catalog import (
    DERIVED_LABELS,
    EQUATION_LABELS,
    StaleWitnessError,
    build_witnesses,
    family_ansatz,
    find_witness_point,
    list_refutation_witnesses,
    reduced_equation_b,
    reduced_equation_c,
    verify_refutations,
)
from lsca.catalog.witnesses import FROZEN_POINTS


def test_at_least_eight_branches():
    ws = list_refutation_witnesses()
    assert len({w.branch_id for w in ws}) >= 8
    assert len(ws) == len({w.branch_id for w in ws})


def test_every_witness_is_nonzero():
    rep = verify_refutations()
    assert rep.ok
    for e in rep.entries:
        assert e.value != 0 and e.value == e.expected


@pytest.mark.parametrize("w", list_refutation_witnesses(), ids=lambda w: w.branch_id)
def test_witness_fields(w):
    assert w.failing_equation in EQUATION_LABELS + DERIVED_LABELS
    assert isinstance(w.expected_nonzero, Fraction) and w.expected_nonzero != 0
    assert w.evaluate() == w.expected_nonzero
    for k, v in w.fixed.items():
        assert w.point[k] == v


def test_stale_witness_is_detected():
    ws = list_refutation_witnesses()
    ws[0] = replace(ws[0], expected_nonzero=ws[0].expected_nonzero + 1)
    with pytest.raises(StaleWitnessError):
        verify_refutations(ws)


def test_zero_witness_is_detected():
    """A candidate that solves its equation must be reported stale."""
    w = list_refutation_witnesses()[0]
    solved = replace(w, candidate=family_ansatz("T1"), failing_equation="f2", a="a", b="b",
                     point={s: Fraction(1) for s in ("a", "b", "c", "del", "lam", "mu")})
    assert solved.evaluate() == 0
    with pytest.raises(StaleWitnessError):
        verify_refutations([solved])


def test_split_g2_zero_at_unit_point():
    (w,) = [w for w in list_refutation_witnesses() if w.branch_id == "split/g2=0"]
    pt = {"a": 0, "b": 0, "c": 0, "lam": 1, "mu": 1, "del": 1}
    assert fp_eval(w.residual(), pt) != 0


def test_a1_tail_branch():
    (w,) = [w for w in list_refutation_witnesses() if w.branch_id == "A/a1:a!=1"]
    assert w.failing_equation == "f5"
    assert w.evaluate() != 0


def test_frozen_points_match_search():
    searched = {w.branch_id: (w.point, w.expected_nonzero) for w in build_witnesses(search=True)}
    assert set(searched) == set(FROZEN_POINTS)
    for k, (pt, val) in FROZEN_POINTS.items():
        assert searched[k][1] == val
        assert {s: Fraction(v) for s, v in searched[k][0].items()} == pt


def test_find_witness_point_respects_fixed():
    R = FormalRing(("c",))
    p = R.param("c") * R.lam - 1
    point, value = find_witness_point(p, {"c": 1})
    assert point["c"] == 1 and value != 0


def test_reduced_equations_sanity():
    R = FormalRing(("c",))
    assert reduced_equation_b(R.one, 0, "c").is_zero
    assert reduced_equation_b(R.lam, 2, "c").is_zero
    assert reduced_equation_c(R.lam ** 2, 2, 0).is_zero
