"""Exact verification lab for regular nilpotent centralizers and friends."""

from .fields import GF, QQ, CharacteristicMismatch, DualScalar, Field, FieldScalar
from .linalg import DenseMatrix, DualMatrix, Subspace, nullspace, rank
from .genpoly import GenericPoly, NonlinearConstraint, generic_linear_extract
from .rootsystems import (
    ExponentData,
    IllegalType,
    PrimeClass,
    RootSystem,
    build_root_system,
    classify_prime,
    coxeter_spectrum_check,
    exponents_by_height,
    weyl_group_order,
)
from .chevalley import (
    BadPrimeWarning,
    ChevalleyAlgebra,
    CocharacterGrading,
    InvalidStructure,
    build_chevalley,
    canonical_grading,
    check_jacobi,
    reduce_mod,
    regular_nilpotent,
    weight_spaces,
)
from .centralizers import (
    NotGraded,
    RegularReport,
    ker_ad_power,
    lie_center,
    lie_centralizer,
    lie_normalizer,
    regular_report,
    weight_multiset,
)
from .gln import (
    CenterSmoothnessReport,
    JordanType,
    bicommutant,
    center_smoothness_report,
    commutant,
    jordan_nilpotent,
    jordan_type_of_nilpotent,
    nilpotency_index,
    partitions,
)
from .families import (
    CenterSchemeReport,
    GroupFamily,
    center_scheme_report,
    family_lie_algebra,
    frobenius_twist_family,
    gl_family,
    lie_center_generic,
    nonsmooth_center_report,
    reduced_center_dimension,
    unit_group_family,
)
from .springer import (
    ProductTangentReport,
    SpringerCoeffs,
    curve_tangent,
    equivariance_check,
    product_tangent_scalars,
    regular_locus_check,
    springer_apply,
    springer_invert,
    tangent_matrix_at_zero,
)
from .flags import FlagBudgetExceeded, count_complete_flags, flags_preserved
from .ptangent import affine_chart_weights, ptangent_weights

__all__ = [name for name in dir() if not name.startswith("_")]
