"""Exact verification engine for Hessian symbols of form Laplacians.

The package computes the reduced quadratic-form symbol of the spectral
zeta Hessian for the connection (Bochner) and exterior-derivative
(de Rham) Laplacians on p-forms by three independent exact routes, and
checks the structural consequences: gauge-direction kernel, weighted
alternating sums over form degree, trace inequalities, and the sign
classification of critical metrics.
"""

from .exactalg import (
    Covector,
    FPair,
    InvariantVector,
    NotInProjectorSpan,
    PerturbH,
    Rational,
    SPoly,
    evaluate_reduced,
    fpair_to_invariant,
    invariant_to_fpair,
    projector_traces,
    scalar_invariants,
)
from .formcombi import (
    CHI,
    CHI_COMP,
    SGN,
    FormIndex,
    binom,
    chi,
    crossing_count,
    enumerate_form_indices,
    free_term,
    identity_sum,
    sgn,
)
from .geomanalysis import (
    Classification,
    InequalityCheck,
    ScanReport,
    ZetaConstants,
    classify_critical_metric,
    gauge_kernel_check,
    gauge_perturbation,
    is_gauge_direction,
    polarized_symbol,
    projector_inequalities,
    scan_critical_metrics,
    torsion_sum,
    torsion_sum_valid,
    zeta_constants,
)
from .symbolengine import (
    DstarDComparison,
    KernelPattern,
    SlotShape,
    closed_form_fpair,
    closed_form_reduced,
    combined_square_part,
    direct_symbol,
    dstar_d_fpair,
    first_order_part,
    grouped_symbol,
    kernel_value,
    leading_cross_part,
    leading_square_part,
)
from .variation import (
    CoeffSymbolSet,
    OperatorKind,
    VariationTensor,
    christoffel_variation,
    coefficient_symbols,
    variation_tensor,
)

__version__ = "1.0.0"

__all__ = [
    "CHI",
    "CHI_COMP",
    "SGN",
    "Classification",
    "CoeffSymbolSet",
    "Covector",
    "DstarDComparison",
    "FPair",
    "FormIndex",
    "InequalityCheck",
    "InvariantVector",
    "KernelPattern",
    "NotInProjectorSpan",
    "OperatorKind",
    "PerturbH",
    "Rational",
    "SPoly",
    "ScanReport",
    "SlotShape",
    "VariationTensor",
    "ZetaConstants",
    "binom",
    "chi",
    "christoffel_variation",
    "classify_critical_metric",
    "closed_form_fpair",
    "closed_form_reduced",
    "coefficient_symbols",
    "combined_square_part",
    "crossing_count",
    "direct_symbol",
    "dstar_d_fpair",
    "enumerate_form_indices",
    "evaluate_reduced",
    "first_order_part",
    "fpair_to_invariant",
    "free_term",
    "gauge_kernel_check",
    "gauge_perturbation",
    "grouped_symbol",
    "identity_sum",
    "invariant_to_fpair",
    "is_gauge_direction",
    "kernel_value",
    "leading_cross_part",
    "leading_square_part",
    "polarized_symbol",
    "projector_inequalities",
    "projector_traces",
    "scalar_invariants",
    "scan_critical_metrics",
    "sgn",
    "torsion_sum",
    "torsion_sum_valid",
    "variation_tensor",
    "zeta_constants",
]
