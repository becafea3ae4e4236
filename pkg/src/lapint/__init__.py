"""Numerical machinery for exponential-mean generalized derivatives,
improper integrals with tail acceleration, convolution, and Fourier
transforms of conditionally integrable functions."""

from .core import (
    CONVERGED,
    DIVERGED,
    HYPOTHESIS_VIOLATION,
    MAX_WORK_EXCEEDED,
    NO_CONVERGENCE,
    OSCILLATION_UNRESOLVED,
    SIDES_DISAGREE,
    ExtendedInterval,
    IntegralResult,
    LadderConfig,
    LimitResult,
    RealFn,
    ResidualReport,
    corpus,
    scale,
    translate,
)
from .quadrature import (
    CumulativeFn,
    TruncationPolicy,
    alexiewicz_norm,
    default_policy,
    holder_bound_check,
    integrate_bounded,
    integrate_improper,
    oscillatory_integral,
    total_variation,
)
from .laplace_means import (
    MeanSpec,
    ftc_check,
    inversion_condition_check,
    laplace_mean,
    ld0,
    ld1,
)
from .interchange import Kernel2D, diff_under_integral, fubini_residual, iterated_integrals
from .convolution import (
    ConvPlan,
    HypothesisViolation,
    associativity_check,
    commutativity_check,
    convolve,
    norm_inequality_check,
    support_check,
    translation_check,
)
from .fourier import (
    SpectrumProvider,
    SpectrumTable,
    TransformRequest,
    continuity_probe,
    derivative_rule_check,
    fourier_transform,
    inversion_roundtrip,
    invert,
    multiplication_rule_check,
    parseval_exchange_check,
    riemann_lebesgue_check,
    shift_modulation_check,
    spectrum,
)

__version__ = "0.1.0"
