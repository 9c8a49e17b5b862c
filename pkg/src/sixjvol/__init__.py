"""Numerical quantum 6j-symbols, state-sum invariants, and growth limits.

Evaluates quantum 6j-symbols at the root of unity exp(2*pi*i/r) for odd r
in signed-log form, builds Turaev-Viro-style state sums over triangulation
and shadow-link presentations, and fits the large-r growth of their
magnitudes against hyperbolic volumes computed from Lobachevsky-function
formulas.
"""

from .qarith import (
    Level,
    LossOfSignificanceWarning,
    NumericFailure,
    SignedLog,
    factorial_asymptotic_residual,
    quantum_factorial,
    quantum_integer,
    signed_logsum,
)
from .sixj import (
    ScanReport,
    Sextuple,
    Triple,
    bound_scan,
    canonical_form,
    delta_triple,
    is_admissible_sextuple,
    is_admissible_triple,
    sixj_growth,
    sixj_symbol,
    sixj_symbol_mp,
)
from .lobachevsky import (
    V8,
    AngleSextuple,
    big_L,
    bigF,
    gamma_two,
    lobachevsky,
    maximize_F,
    nu,
    potential_V,
)
from .tetvol import (
    DegenerateGeometryWarning,
    DihedralAngles,
    angles_from_thetas,
    bao_bonahon_check,
    dilog,
    truncated_tet_volume,
)
from .tvstate import TVResult, Triangulation, load_triangulation, tv_state_sum
from .fsl import (
    EvenColoring,
    FSLPresentation,
    amplification,
    attenuation,
    filling_volume_bounds,
    fsl_tv,
    fsl_tv_log,
    fsl_volume,
    load_fsl,
    rt_invariant,
)
from .asympt import (
    GrowthSeries,
    InfeasibleError,
    angle_sequence_colors,
    appendix_growth_check,
    appendix_limit,
    central_even_tuple,
    fit_growth_model,
    growth_series,
    model_growth,
    triangulation_growth_bound,
)
from .cache import DiskBackedSixjEvaluator, load_table, resolve_cache_dir, save_table

__version__ = "0.1.0"

__all__ = [
    "AngleSextuple",
    "DegenerateGeometryWarning",
    "DihedralAngles",
    "DiskBackedSixjEvaluator",
    "EvenColoring",
    "FSLPresentation",
    "GrowthSeries",
    "InfeasibleError",
    "Level",
    "LossOfSignificanceWarning",
    "NumericFailure",
    "ScanReport",
    "Sextuple",
    "SignedLog",
    "TVResult",
    "Triangulation",
    "Triple",
    "V8",
    "amplification",
    "angle_sequence_colors",
    "angles_from_thetas",
    "appendix_growth_check",
    "appendix_limit",
    "attenuation",
    "bao_bonahon_check",
    "bigF",
    "big_L",
    "bound_scan",
    "canonical_form",
    "central_even_tuple",
    "delta_triple",
    "dilog",
    "factorial_asymptotic_residual",
    "filling_volume_bounds",
    "fit_growth_model",
    "fsl_tv",
    "fsl_tv_log",
    "fsl_volume",
    "gamma_two",
    "growth_series",
    "is_admissible_sextuple",
    "is_admissible_triple",
    "load_fsl",
    "load_table",
    "load_triangulation",
    "lobachevsky",
    "maximize_F",
    "model_growth",
    "nu",
    "potential_V",
    "quantum_factorial",
    "quantum_integer",
    "resolve_cache_dir",
    "rt_invariant",
    "save_table",
    "signed_logsum",
    "sixj_growth",
    "sixj_symbol",
    "sixj_symbol_mp",
    "triangulation_growth_bound",
    "truncated_tet_volume",
    "tv_state_sum",
    "__version__",
]
