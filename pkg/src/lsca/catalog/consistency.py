"""Cross-check of the hand-written equations against the generic axiom checkers."""

from __future__ import annotations

import random
from fractions import Fraction

from ..arith import FormalRing
from ..conformal import failing, is_compatible_structure, residuals_left_symmetric, union_symbols
from .ansatz import POLY_FIELDS, AnsatzStructure, ansatz_to_algebra, equation_residuals
from .families import FAMILY_IDS, family_ansatz, family_spec, family_structure_constants, make_W


def generic_holds(s: AnsatzStructure, a="a", b="b") -> bool:
    """Left-symmetric and compatible with W(a,b), by the generic checkers."""
    A = ansatz_to_algebra(s)
    W = make_W(a, b)
    syms = union_symbols(A.params, W.params)
    A = A.lift(syms)
    return not failing(residuals_left_symmetric(A)) and is_compatible_structure(A, W).ok


def equations_hold(s: AnsatzStructure, a="a", b="b") -> bool:
    return all(r.vanishes for r in equation_residuals(s, a, b))


def meta_consistency(s: AnsatzStructure, a="a", b="b") -> bool:
    return equations_hold(s, a, b) == generic_holds(s, a, b)


def random_linear_trial(rng: random.Random, span: int = 3):
    """(ansatz, a, b) with degree <= 1 polynomials and small integer data.

    A third of the draws are family members at random valid parameters, a
    third perturb one polynomial of such a member, the rest are generic, so
    both truth values of the equivalence get exercised.
    """
    R = FormalRing(())

    def lin():
        return R(rng.randint(-span, span)) + rng.randint(-span, span) * R.d + rng.randint(-span, span) * R.lam

    mode = rng.randrange(3)
    if mode == 2:
        polys = {n: (lin() if rng.random() < 0.5 else R.zero) for n in POLY_FIELDS[1:]}
        s = AnsatzStructure.build(R, rng.randint(-span, span), **polys)
        return s, Fraction(rng.randint(-2, 2)), Fraction(rng.randint(-2, 2))
    fid = rng.choice(FAMILY_IDS)
    spec = family_spec(fid)
    nonzero = [v for v in range(-span, span + 1) if v]
    values = {}
    for p in spec.params:
        values[p] = Fraction(rng.choice(nonzero) if p in spec.nonzero or p in sum(spec.nonzero_any, ())
                             else rng.randint(-span, span))
    s = family_ansatz(fid, values).lift(())
    a, b = family_structure_constants(fid, values)
    if mode == 1:
        name = rng.choice(POLY_FIELDS[1:])
        bump = lin()
        if bump.is_zero:
            bump = R.lam
        s = s.replace(**{name: getattr(s, name) + bump})
    return s, a, b
