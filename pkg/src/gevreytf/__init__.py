"""Time-frequency analysis on extended Gevrey scales.

Weight sequences p^(tau p^sigma), their associated function and its
Lambert-W asymptotics, an STFT engine with modulation-norm bookkeeping,
decay-envelope regularity probes, and STFT-side wave-front-set estimation.
"""

from .lambertw import ConvergenceError, LambertEval, lambert_bracket, lambert_eval, lambert_w0
from .sequences import (
    GevreyParams,
    PropertyReport,
    check_m1_logconvex,
    check_m2bar,
    check_m3prime,
    log_m,
)
from .associated import (
    AssocEval,
    AsymptoticBracket,
    assoc_bracket,
    assoc_simplified,
    assoc_t,
    assoc_t_gevrey_limit,
    assoc_t_grid,
    envelope,
)
from .weights import WeightSpec
from .windows import (
    DerivativeNormReport,
    QualityWarning,
    Window,
    estimate_derivative_norms,
    gaussian_derivative_l1,
    make_gaussian,
    make_gevrey_bump,
)
from .stft import (
    SampledSignal,
    StftGrid,
    istft,
    modulation_norm,
    stft,
    stft_via_factorization,
)
from .corpus import SignalSpec, generate

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "LambertEval",
    "lambert_bracket",
    "lambert_eval",
    "lambert_w0",
    "GevreyParams",
    "PropertyReport",
    "check_m1_logconvex",
    "check_m2bar",
    "check_m3prime",
    "log_m",
    "AssocEval",
    "AsymptoticBracket",
    "assoc_bracket",
    "assoc_simplified",
    "assoc_t",
    "assoc_t_gevrey_limit",
    "assoc_t_grid",
    "envelope",
    "WeightSpec",
    "DerivativeNormReport",
    "QualityWarning",
    "Window",
    "estimate_derivative_norms",
    "gaussian_derivative_l1",
    "make_gaussian",
    "make_gevrey_bump",
    "SampledSignal",
    "StftGrid",
    "istft",
    "modulation_norm",
    "stft",
    "stft_via_factorization",
    "SignalSpec",
    "generate",
    "__version__",
]
