"""Hermite-coordinate calculus for perturbed Gaussian densities over Gaussian-noise channels."""
from .algebra import (
    PerturbedDensity,
    add_noise,
    convolve,
    cross_constant,
    eval_density,
    gaussian,
    positivity_check,
    positivity_margin,
    scale,
    shift,
    smooth,
    tilde_coeffs,
)
from .basis import MAX_DEGREE, gaussian_density, gaussian_entropy, hermite, hermite_normalized
from .entropy import (
    entropy_deficit_numeric,
    entropy_numeric,
    entropy_quadratic,
    kl_numeric,
    kl_quadratic,
    perturbation_norm,
)
from .errors import (
    DegenerateScaleError,
    DegreeOverflowError,
    HermiteCoordsError,
    IndeterminatePointError,
    InvalidVarianceError,
    NonPositiveDensityError,
    NoRootError,
    PerturbationTooLargeError,
    QuadratureError,
    UnsupportedDegreeError,
)
from .fading_bc import (
    REFERENCE_R,
    BCParams,
    FadingLaw,
    counterexample_limit,
    counterexample_verify,
    hermite_gain,
    mu_rate_gaussian,
    optimal_r,
    reference_fading,
    reference_params,
    weak_condition,
)
from .interference import (
    ICParams,
    Threshold,
    b2,
    f_k,
    k1_root,
    sum_rate_limit,
    sum_rate_numeric,
    threshold,
    threshold_ladder,
)
from .quadrature import DEFAULT_QUAD, QuadratureSpec
from .shamai_laroia import SLPoint, default_grid, region_measure, sl_gap, sl_numeric_check, sl_numeric_limit, sl_scan

__version__ = "0.1.0"
