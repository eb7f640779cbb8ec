"""Named structures, the rank-2 ansatz and its functional equations."""

from .ansatz import (
    EQUATION_LABELS,
    AnsatzError,
    AnsatzStructure,
    EquationResidual,
    ansatz_from_algebra,
    ansatz_to_algebra,
    equation_residual,
    equation_residuals,
)
from .families import (
    FAMILIES,
    FAMILY_IDS,
    LEMMA_CASES,
    SYMBOLIC,
    CatalogError,
    FamilySpec,
    InvalidParameterError,
    LemmaCase,
    family_ansatz,
    family_spec,
    family_structure_constants,
    family_W,
    lemma_case_matches,
    make_family,
    make_vir_lsc,
    make_virasoro,
    make_W,
    make_w22,
    normalize_assignment,
    sample_assignment,
)
from .consistency import equations_hold, generic_holds, meta_consistency, random_linear_trial
from .witnesses import (
    DERIVED_LABELS,
    RefutationReport,
    RefutationWitness,
    StaleWitnessError,
    build_witnesses,
    find_witness_point,
    list_refutation_witnesses,
    reduced_equation_b,
    reduced_equation_c,
    verify_refutations,
)
