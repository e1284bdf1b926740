"""Spectral analysis and simulation toolkit for invasion fronts in a
Fisher-KPP equation driven by a Swift-Hohenberg field: essential, weighted
and absolute spectra, pointwise resolvent kernels, stability-region
classification, and semi-implicit finite-difference simulation."""

from .absspec import (
    AbsSpectrum,
    DoubleRoot,
    ShAbs,
    TriplePoint,
    double_roots_closed,
    double_roots_generic,
    double_roots_numeric,
    full_triple_point,
    is_pinched,
    psi_triple,
    s_abs,
    sh_abs_closed,
    trace_abs_spectrum,
    zeta,
)
from .dispersion import (
    MorseSplit,
    VRootSet,
    eval_dispersion,
    morse_split,
    roots_u,
    roots_v,
    solve_quartic,
)
from .errors import (
    ContinuationError,
    DomainError,
    NumericalError,
    PinchAmbiguousError,
)
from .greens import g12_infty, g22, verify_removable_singularity
from .params import Params, lambda_big
from .regions import (
    OmegaSpec,
    RegionLabel,
    check_decay_condition,
    classify,
    gamma_v,
    sweep,
)
from .simulate import (
    FrontTrace,
    SimConfig,
    SimResult,
    delay_scan,
    ell_star,
    envelope_speed,
    fit_speed,
    make_q_ref,
    run,
    weight_omega,
    weighted_decay,
)
from .spectra import (
    Boundaries,
    SpectralCurve,
    ess_curve,
    max_growth,
    region_boundaries,
    remnant_test,
    sigma_u,
    sigma_v,
)

__version__ = "0.1.0"

__all__ = [
    "AbsSpectrum", "Boundaries", "ContinuationError", "DomainError",
    "DoubleRoot", "FrontTrace", "MorseSplit", "NumericalError", "OmegaSpec",
    "Params", "PinchAmbiguousError", "RegionLabel", "ShAbs", "SimConfig",
    "SimResult", "SpectralCurve", "TriplePoint", "VRootSet",
    "check_decay_condition", "classify", "delay_scan", "double_roots_closed",
    "double_roots_generic", "double_roots_numeric", "ell_star",
    "envelope_speed", "ess_curve", "eval_dispersion", "fit_speed",
    "full_triple_point", "g12_infty", "g22", "gamma_v", "is_pinched",
    "lambda_big", "make_q_ref", "max_growth", "morse_split", "psi_triple",
    "region_boundaries", "remnant_test", "roots_u", "roots_v", "run",
    "s_abs", "sh_abs_closed", "sigma_u", "sigma_v", "solve_quartic", "sweep",
    "trace_abs_spectrum", "verify_removable_singularity", "weight_omega",
    "weighted_decay", "zeta",
]
