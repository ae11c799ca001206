"""Divergence measures, Csiszar f-divergences and numerically verified bounds between them."""
from .bounds import (
    BoundChainReport,
    ExtremaPair,
    Family,
    Link,
    closed_form_bounds,
    extrema_g,
    g_function,
    proposition_chain,
    theorem31_chain,
    theorem32_chain,
)
from .csiszar import (
    SYMMETRIC_CHI2,
    TRIANGULAR,
    BoundSet,
    Generator,
    bound_set,
    c_f,
    check_generator,
    phi_generator,
    rho_c_f,
)
from .errors import (
    BadDimension,
    DivergenceError,
    InvalidRange,
    LengthMismatch,
    NonFinite,
    NonFiniteResult,
    NonPositiveEntry,
    SumMismatch,
    TooShort,
    UnsupportedRegime,
)
from .harness import FuzzConfig, FuzzSummary, errata_compare, fuzz, verify_all
from .measures import MeasureKind, divergence, phi_s, power_mean, rho_phi_s
from .simplex import Distribution, RatioRange, ratio_range, sample, validate

__version__ = "0.1.0"
