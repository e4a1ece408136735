"""Multi-norms, weak summing norms, multi-bounds and invariant means on
finite weighted L^p spaces and finite semigroups.

The heavy search loops run in a compiled extension when available and in a
numpy fallback otherwise; certified closed-form values never depend on the
backend.  See current_backend / set_backend.
"""

from ._backend import available_backends, current_backend, set_backend
from .multibound import (
    MultiBoundResult,
    column_multi_bound,
    mb_operator_norm,
    multi_bound_set,
)
from .norms import (
    MultiNormSpec,
    axiom_report,
    dual_level_norm,
    dual_parity,
    dual_spec,
    extension_norm,
    extension_spec,
    lattice_spec,
    max_spec,
    min_spec,
    multi_norm,
    multi_norm_upper,
    parse_spec,
    pq_spec,
    standard_q_norm,
    standard_spec,
)
from .semigroups import (
    FiniteSemigroup,
    JModuleElement,
    MeanFunctional,
    abs_normalize,
    cancellativity_report,
    constant_row_embed,
    convolve,
    cyclic,
    dihedral,
    direct_product,
    dual_translate,
    invariance_defect,
    inversion_twist,
    lattice_sup_mean,
    left_zero,
    mean_check,
    module_action,
    multi_invariance_bound,
    point_mean,
    rectangular_band,
    right_shift,
    right_zero,
    row_evaluation,
    symmetric,
    tensor_action_identity_check,
    uniform_mean,
)
from .spaces import (
    AlgebraError,
    Exponent,
    FiniteMeasureSpace,
    InputError,
    LinearMap,
    LpVector,
    NormEstimate,
    OptimizerBudget,
    SpecMismatchError,
    VectorTuple,
    conjugate_exponent,
    identity_map,
    lattice_sup,
    lp_norm,
    norming_functional,
    operator_norm,
    pairing,
    point_mass,
)
from .summing import (
    SummingEstimate,
    partial_sum_operator,
    summing_norm_estimate,
    weak_summing_norm,
    weak_summing_norm_predual,
)
from .tensor import (
    TensorElement,
    amplification_check,
    coordinate_tuple,
    injective_tensor_norm,
    multinorm_tensor_norm,
    projective_upper_bound,
)
from .verify import (
    CheckReport,
    disjoint_rank_bound_check,
    identity_suite,
    projection_inequality_check,
    rademacher_check,
    reports_to_csv,
    reports_to_json,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraError",
    "CheckReport",
    "Exponent",
    "FiniteMeasureSpace",
    "FiniteSemigroup",
    "InputError",
    "JModuleElement",
    "LinearMap",
    "LpVector",
    "MeanFunctional",
    "MultiBoundResult",
    "MultiNormSpec",
    "NormEstimate",
    "OptimizerBudget",
    "SpecMismatchError",
    "SummingEstimate",
    "TensorElement",
    "VectorTuple",
    "abs_normalize",
    "amplification_check",
    "available_backends",
    "axiom_report",
    "cancellativity_report",
    "column_multi_bound",
    "conjugate_exponent",
    "constant_row_embed",
    "convolve",
    "coordinate_tuple",
    "current_backend",
    "cyclic",
    "dihedral",
    "direct_product",
    "disjoint_rank_bound_check",
    "dual_level_norm",
    "dual_parity",
    "dual_spec",
    "dual_translate",
    "extension_norm",
    "extension_spec",
    "identity_map",
    "identity_suite",
    "injective_tensor_norm",
    "invariance_defect",
    "inversion_twist",
    "lattice_spec",
    "lattice_sup",
    "lattice_sup_mean",
    "left_zero",
    "lp_norm",
    "max_spec",
    "mb_operator_norm",
    "mean_check",
    "min_spec",
    "module_action",
    "multi_bound_set",
    "multi_invariance_bound",
    "multi_norm",
    "multi_norm_upper",
    "multinorm_tensor_norm",
    "norming_functional",
    "operator_norm",
    "pairing",
    "parse_spec",
    "partial_sum_operator",
    "point_mass",
    "point_mean",
    "pq_spec",
    "projection_inequality_check",
    "projective_upper_bound",
    "rademacher_check",
    "rectangular_band",
    "reports_to_csv",
    "reports_to_json",
    "right_shift",
    "right_zero",
    "row_evaluation",
    "set_backend",
    "standard_q_norm",
    "standard_spec",
    "summing_norm_estimate",
    "symmetric",
    "tensor_action_identity_check",
    "uniform_mean",
    "weak_summing_norm",
    "weak_summing_norm_predual",
    "__version__",
]
