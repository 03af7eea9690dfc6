# app/analytic/continuation.py
"""Compare the Mellin-Barnes integral with the series on both sides of Re(log v) = -6 log 3."""
from __future__ import annotations

import math
import multiprocessing
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import mpmath

from app.analytic.mellin_barnes import (
    ContourResult,
    ContourSpec,
    mellin_barnes_integrate,
    residue_sum_left,
    residue_sum_right,
)
from app.analytic.nilpotent import NilpotentComplex
from app.analytic.series import GW_RADIUS_LOG, FjrwValue, h_fjrw, h_gw
from app.mirror.mirror_map import MirrorMap, build_mirror_map

SAMPLE_OFFSETS = (1.5, 2.5, 3.5)


def apply_mirror_numeric(mirror: MirrorMap, h_value: FjrwValue) -> NilpotentComplex:
    """U_l on a numeric FJRW class: sum of coefficient * column."""
    total = NilpotentComplex.constant(0, 4)
    for coeff, column in zip(h_value.components(), mirror.columns):
        total = total + NilpotentComplex.from_gw(column) * coeff
    return total


def sample_points(l: int, offsets: Sequence[float] = SAMPLE_OFFSETS) -> List[complex]:
    """log v on both sides of the boundary, centred in the band of window l."""
    base = -6 * math.log(3)
    im = (2 * l - 1) * math.pi
    points = [complex(base - o, im) for o in offsets]
    points += [complex(base + o, im) for o in offsets]
    return points


@dataclass
class ContinuationReport:
    l: int
    log_v: complex
    side: str                      # "GW" (series region) or "FJRW" (continued region)
    integral: ContourResult
    target: NilpotentComplex
    residue_sum: NilpotentComplex
    target_error: float
    residue_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.target_error <= self.tolerance and self.residue_error <= self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        return {
            "params": {"l": self.l, "log_v": [self.log_v.real, self.log_v.imag]},
            "side": self.side,
            "integral": self.integral.to_dict(),
            "target": self.target.to_dict(),
            "residue_sum": self.residue_sum.to_dict(),
            "target_error": self.target_error,
            "residue_error": self.residue_error,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


def compare_continuation(
    l: int,
    log_v: Any,
    z: Any = 1,
    spec: Optional[ContourSpec] = None,
    terms: int = 60,
    series_tol: float = 1e-8,
    continuation_tol: float = 1e-6,
    mirror: Optional[MirrorMap] = None,
    verbose: bool = False,
) -> ContinuationReport:
    """
    Inside the GW disk the integral is compared with h_GW; outside it with
    U_l(h_FJRW) at log u = -log(v)/3. Both sides are also compared with the
    matching residue sum.
    """
    log_v = complex(log_v)
    integral = mellin_barnes_integrate(l, log_v, z, spec or ContourSpec(l=l), verbose=verbose)
    if mpmath.mpf(log_v.real) < GW_RADIUS_LOG:
        side = "GW"
        target = h_gw(log_v, z, terms).value
        residues = residue_sum_right(log_v, z, terms)
        tolerance = series_tol
    else:
        side = "FJRW"
        mirror = mirror or build_mirror_map(l)
        h_value = h_fjrw(-log_v / 3, z, terms).value
        target = apply_mirror_numeric(mirror, h_value)
        residues = residue_sum_left(l, log_v, z, terms)
        tolerance = continuation_tol
    report = ContinuationReport(
        l=l,
        log_v=log_v,
        side=side,
        integral=integral,
        target=target,
        residue_sum=residues,
        target_error=float(integral.value.relative_error(target)),
        residue_error=float(integral.value.relative_error(residues)),
        tolerance=tolerance,
    )
    if verbose:
        status = "[SUCCESS]" if report.passed else "[ERROR]"
        print(f"{status} l={l} log v={log_v:.4f} {side}: target {report.target_error:.2e}, residues {report.residue_error:.2e}")
    return report


def _compare_job(args: Tuple[int, complex, Dict[str, Any]]) -> ContinuationReport:
    l, log_v, options = args
    return compare_continuation(l, log_v, **options)


def compare_many(jobs: Sequence[Tuple[int, complex]], workers: int = 1, **options: Any) -> List[ContinuationReport]:
    """Run compare_continuation over (l, log v) pairs, in a process pool when workers > 1."""
    payload = [(l, log_v, options) for l, log_v in jobs]
    if workers <= 1 or len(payload) <= 1:
        return [_compare_job(job) for job in payload]
    with multiprocessing.Pool(processes=min(workers, len(payload))) as pool:
        return pool.map(_compare_job, payload)
