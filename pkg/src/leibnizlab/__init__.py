"""Exact computations with complex Leibniz algebra laws.

The base scalars are the Gaussian rationals Q(i) and the rational-function
fields Q(i)(t) / Q(i)(eps); every result in the package is an exact equality,
never an approximation.
"""

from .algebra import (
    AlgebraLaw,
    LeibnizReport,
    apply_basis_change,
    central_series,
    check_leibniz,
    derivation_dim,
    is_lie,
    is_nilpotent,
    orbit_dim,
    quotient_by_right_center,
    right_center,
    two_sided_center,
)
from .catalog import make_family, make_law, perturbation_direction
from .classify import (
    ClassLabel,
    Classification,
    are_isomorphic_dim3,
    classify,
    classify_nilpotent_dim2,
    classify_nilpotent_dim3,
    find_characteristic_vector,
    representative_law,
)
from .deform import (
    ContractionCertificate,
    ContractionFamily,
    ContractionPoleError,
    MonotonicityReport,
    check_contraction_monotonicity,
    contract,
    find_diagonal_contraction,
    parametric_law,
    perturb,
    specialize,
)
from .invariants import (
    CharacteristicSequence,
    InvariantFingerprint,
    char_seq_at,
    characteristic_sequence,
    fingerprint,
    jordan_type,
)
from .scalars import (
    FormalPolynomial,
    FormalRationalFunction,
    GaussianRational,
    PoleAtZero,
    QI,
    function_field,
    gauss,
    limit_at_zero,
    valuation_at_zero,
)

__version__ = "0.1.0"
