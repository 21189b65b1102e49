"""Total positivity toolkit.

Exact and floating-point tests for totally positive and totally
nonnegative matrices, bidiagonal factorizations, compound-matrix spectra,
canonical bases of positive bilinear forms, positive cells and stable
flags, and positive curves of flags over the circle.
"""

from .bilinear import (
    A_to_form,
    BilinearForm,
    CanonicalBasisResult,
    c0_matrix,
    canonical_basis,
    form_family_positive,
    form_to_A,
    is_totally_positive_form,
    star,
    tilde,
)
from .classify import (
    TPClass,
    TPKind,
    classify,
    is_oscillatory,
    is_totally_nonnegative,
    is_totally_positive,
    is_variation_diminishing,
    sign_variation,
    variation_diminishes_on,
)
from .curves import (
    CirclePoint,
    ConvexReport,
    CurveReport,
    DihedralQuadruple,
    MomentCurve,
    OsculatingFlagCurve,
    TableFlagCurve,
    convex_curve_check,
    dihedral_partition,
    hyperplane_intersection_count,
    is_positive_curve_sampled,
    is_positive_quadruple,
    osculating_flag,
    sturm_distinct_real_roots,
)
from .errors import (
    ConditioningError,
    ConsistencyError,
    ConvergenceError,
    DomainError,
    InputError,
    SingularityError,
    StrictnessWarning,
    TotposError,
)
from .flags import (
    Flag,
    StableFlagPair,
    adapted_basis,
    flag_from_matrix,
    identity_component_check,
    in_B_pos,
    in_B_pos_prime,
    opposed,
    reversed_flag,
    stable_flags,
    standard_flag,
)
from .linalg import (
    Matrix,
    compound,
    det,
    inverse,
    ksubsets,
    minor,
    minor_levels,
    nullspace,
    rank,
    reversal_permutation,
    solve,
    submatrix,
    transpose_inverse,
)
from .scalars import (
    DEFAULT_POLICY,
    Scalar,
    TolerancePolicy,
    as_fraction,
    format_scalar,
    parse_scalar,
    sign_of,
)
from .spectra import GKReport, SpectralOptions, Spectrum, gk_spectrum, perron, verify_gk
from .whitney import (
    TPParameters,
    UniParams,
    factorize,
    gen_x,
    gen_y,
    membership_uni,
    monoid_generate_check,
    reversed_word,
    standard_word,
    synthesize,
    synthesize_uni,
    word_for,
)

__version__ = "0.1.0"

__all__ = [
    "A_to_form",
    "BilinearForm",
    "CanonicalBasisResult",
    "CirclePoint",
    "ConditioningError",
    "ConsistencyError",
    "ConvergenceError",
    "ConvexReport",
    "CurveReport",
    "DEFAULT_POLICY",
    "DihedralQuadruple",
    "DomainError",
    "Flag",
    "GKReport",
    "InputError",
    "Matrix",
    "MomentCurve",
    "OsculatingFlagCurve",
    "Scalar",
    "SingularityError",
    "SpectralOptions",
    "Spectrum",
    "StableFlagPair",
    "StrictnessWarning",
    "TPClass",
    "TPKind",
    "TPParameters",
    "TableFlagCurve",
    "TolerancePolicy",
    "TotposError",
    "UniParams",
    "adapted_basis",
    "as_fraction",
    "c0_matrix",
    "canonical_basis",
    "classify",
    "compound",
    "convex_curve_check",
    "det",
    "dihedral_partition",
    "factorize",
    "flag_from_matrix",
    "form_family_positive",
    "form_to_A",
    "format_scalar",
    "gen_x",
    "gen_y",
    "gk_spectrum",
    "hyperplane_intersection_count",
    "identity_component_check",
    "in_B_pos",
    "in_B_pos_prime",
    "inverse",
    "is_oscillatory",
    "is_positive_curve_sampled",
    "is_positive_quadruple",
    "is_totally_nonnegative",
    "is_totally_positive",
    "is_totally_positive_form",
    "is_variation_diminishing",
    "ksubsets",
    "membership_uni",
    "minor",
    "minor_levels",
    "monoid_generate_check",
    "nullspace",
    "opposed",
    "osculating_flag",
    "parse_scalar",
    "perron",
    "rank",
    "reversal_permutation",
    "reversed_flag",
    "reversed_word",
    "sign_of",
    "sign_variation",
    "solve",
    "stable_flags",
    "standard_flag",
    "standard_word",
    "sturm_distinct_real_roots",
    "submatrix",
    "synthesize",
    "synthesize_uni",
    "tilde",
    "transpose_inverse",
    "variation_diminishes_on",
    "verify_gk",
    "word_for",
]
