"""Exact computations with finite-dimensional Zinbiel algebras."""

from .algebra import (
    Algebra,
    AlgebraFormatError,
    IdentityReport,
    apply_basis_change,
    center,
    check_leibniz,
    check_zinbiel,
    from_json,
    left_annihilator,
    multiply,
    nilindex,
    power_filtration,
    right_annihilator,
    to_json,
    zinbiel_residual,
)
from .constraints import (
    AffineScalar,
    AffineTensor,
    InfeasibilityCertificate,
    Inconclusive,
    make_second_type_template,
    prove_second_type_impossible,
    residual_constraints,
)
from .generators import (
    FamilyParams,
    binomial,
    derive_chain_products,
    make_family,
    make_null_filiform,
    make_split,
    validate_params,
)
from .invariants import (
    CharSeq,
    Fingerprint,
    Gradation,
    SamplerConfig,
    characteristic_sequence,
    fingerprint,
    jordan_block_sizes,
    left_operator_matrix,
    natural_gradation,
    same_fingerprint,
)
from .linalg import QMatrix, Subspace, NotNilpotent, kernel_basis, rank_sequence, rref, solve_affine

__version__ = "0.1.0"
