"""Exact Heegaard Floer correction terms and rational genus bounds for lens spaces."""

from .core import (
    CorrectionTerms,
    DegenerateClass,
    HomologyClass,
    InvalidAlexander,
    InvalidOrder,
    InvariantViolation,
    LabelingInconsistency,
    LensSpaceId,
    NonCoprime,
    NotLSpacePattern,
    RatGenusError,
    SpinCLabel,
    format_rational,
    normalize_lens,
    order_of,
    parse_rational,
)
from .lensd import conjugation_center, d_all, d_closed_form_p1, d_lens
from .surgery import (
    AlexanderPoly,
    VSequence,
    dual_theta_bound,
    is_dual_genus_minimizer,
    surgery_d,
    torsion_coefficients,
    torus_knot_alexander,
)
from .theta import (
    ThetaReport,
    is_fibered_simple,
    simple_knot_invariants,
    theta_all_classes,
    theta_lower_bound,
)

__version__ = "0.1.0"
