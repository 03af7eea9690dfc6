# app/analytic/__init__.py
from app.analytic.continuation import (
    ContinuationReport,
    apply_mirror_numeric,
    compare_continuation,
    compare_many,
    sample_points,
)
from app.analytic.mellin_barnes import (
    BandError,
    ContourResult,
    ContourSpec,
    PoleProximityWarning,
    TruncationWarning,
    check_band,
    contour_residue,
    integrand_Fl,
    left_residue,
    mellin_barnes_integrate,
    residue_sum_left,
    residue_sum_right,
    right_residue,
)
from app.analytic.nilpotent import NilpotentComplex
from app.analytic.picard_fuchs import PfResult, PfSeries, pf_residual
from app.analytic.series import (
    ConvergenceError,
    FjrwValue,
    SeriesKind,
    SeriesResult,
    eval_series,
    gamma_class_fjrw,
    gamma_class_gw,
    i_fjrw_coefficient,
    i_from_h,
)
from app.analytic.special import (
    PoleError,
    complex_digamma,
    complex_gamma,
    complex_polygamma,
    digamma_shift_identity,
    gamma_nilpotent,
)
