# app/analytic/picard_fuchs.py
"""
Picard-Fuchs checks for L = theta^4 - 9 v (3 theta + 1)^2 (3 theta + 2)^2, theta = v d/dv.

On a series sum_n a_n v^{e_n} with e_n = p + n, theta acts on v^{e} by e and
the v^{e+1} coefficient of L(sum) is
    (e+1)^4 a_{n+1} - 9 (3e+1)^2 (3e+2)^2 a_n.
After v = u^{-3} (theta = -theta_u / 3) the u^e coefficient of L applied to
sum_e c_e u^e is
    c_e e^4 / 81 - 9 (e+1)^2 (e+2)^2 c_{e+3}.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, List, Union

import mpmath

from app.analytic.nilpotent import NilpotentComplex
from app.analytic.series import g_fjrw_term, h_gw_term, i_fjrw_coefficient
from app.arith.series import TruncatedSeries


class PfSeries(Enum):
    IGW = "IGW"
    HGW = "HGW"
    IFJRW = "IFJRW"
    HFJRW = "HFJRW"


@dataclass
class PfResult:
    which: PfSeries
    terms: int
    residual: float
    exact: bool
    tolerance: float
    coefficients_checked: int
    worst_index: int = -1

    @property
    def passed(self) -> bool:
        if self.exact:
            return self.residual == 0
        return self.residual <= self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        return {
            "which": self.which.value,
            "terms": self.terms,
            "residual": self.residual,
            "exact": self.exact,
            "tolerance": self.tolerance,
            "coefficients_checked": self.coefficients_checked,
            "worst_index": self.worst_index,
            "pass": self.passed,
        }


def theta_power(exponent: Any, power: int) -> Any:
    """theta^power v^e = e^power v^e."""
    return exponent ** power


def pf_coefficient(e: Any, a_this: Any, a_prev: Any) -> Any:
    """Coefficient of v^e in L applied to ... + a_prev v^{e-1} + a_this v^e + ..."""
    shifted = e - 1
    return theta_power(e, 4) * a_this - (shifted * 3 + 1) ** 2 * (shifted * 3 + 2) ** 2 * a_prev * 9


def igw_coefficients(terms: int) -> List[TruncatedSeries]:
    """a_n in Q[p]/p^4 from the product formula at z = 1."""
    p = TruncatedSeries.generator(4)
    one = TruncatedSeries.constant(1, 4)
    coeffs = [one]
    for n in range(1, terms):
        num = one
        for b in range(3 * n - 2, 3 * n + 1):
            num = num * (p * 3 + b)
        coeffs.append(coeffs[-1] * num * num * ((p + n) ** 6).inverse())
    return coeffs


def _gw_residual_exact(terms: int) -> PfResult:
    p = TruncatedSeries.generator(4)
    a = igw_coefficients(terms)
    worst = Fraction(0)
    worst_index = -1
    # v^{p} coefficient: p^4 a_0 = 0 since p^4 = 0
    residuals = [theta_power(p, 4) * a[0]]
    for n in range(1, terms):
        residuals.append(pf_coefficient(p + n, a[n], a[n - 1]))
    for n, r in enumerate(residuals):
        size = max(abs(c) for c in r.coeffs)
        if size > worst:
            worst, worst_index = size, n
    return PfResult(PfSeries.IGW, terms, float(worst), True, 0.0, len(residuals), worst_index)


def _relative(r: NilpotentComplex, scale: NilpotentComplex) -> mpmath.mpf:
    s = scale.norm()
    return r.norm() / s if s else r.norm()


def _gw_residual_numeric(terms: int, tolerance: float) -> PfResult:
    P = NilpotentComplex.p() / (2 * mpmath.pi * mpmath.mpc(0, 1))
    b = [h_gw_term(n, 0) for n in range(terms)]
    worst = mpmath.mpf(0)
    worst_index = -1
    for n in range(1, terms):
        e = P + n
        lead = theta_power(e, 4) * b[n]
        rel = _relative(pf_coefficient(e, b[n], b[n - 1]), lead)
        if rel > worst:
            worst, worst_index = rel, n
    return PfResult(PfSeries.HGW, terms, float(worst), False, tolerance, max(terms - 1, 0), worst_index)


def _fjrw_coefficients(terms: int, product_formula: bool) -> Dict[int, NilpotentComplex]:
    # I_FJRW from its product formula, h_FJRW from the Gamma summands
    term = i_fjrw_coefficient if product_formula else (lambda d: g_fjrw_term(d, 0))
    return {d: term(d) for d in range(terms) if d % 3 != 2}


def _fjrw_residual(which: PfSeries, terms: int, tolerance: float) -> PfResult:
    coeffs = _fjrw_coefficients(terms, which == PfSeries.IFJRW)
    H = NilpotentComplex.p(2)
    worst = mpmath.mpf(0)
    worst_index = -1
    checked = 0
    for d, c in coeffs.items():
        if d + 3 not in coeffs:
            continue
        e = H + (d + 1)
        lead = c * theta_power(e, 4) / 81
        residual = lead - (e + 1) ** 2 * (e + 2) ** 2 * coeffs[d + 3] * 9
        rel = _relative(residual, lead)
        checked += 1
        if rel > worst:
            worst, worst_index = rel, d
    return PfResult(which, terms, float(worst), False, tolerance, checked, worst_index)


def pf_residual(which: Union[PfSeries, str], terms: int = 40, tolerance: float = 1e-10) -> PfResult:
    """
    Maximal residual of the Picard-Fuchs operator on the first `terms`
    coefficients. IGW is checked exactly in Q[p]/p^4; the Gamma-function
    series numerically as relative residuals. Fewer than two coefficients
    leave nothing to compare and pass vacuously.
    """
    kind = PfSeries(which) if not isinstance(which, PfSeries) else which
    if terms < 1:
        raise ValueError(f"terms must be at least 1, got {terms}")
    dispatch: Dict[PfSeries, Callable[[], PfResult]] = {
        PfSeries.IGW: lambda: _gw_residual_exact(terms),
        PfSeries.HGW: lambda: _gw_residual_numeric(terms, tolerance),
        PfSeries.IFJRW: lambda: _fjrw_residual(kind, terms, tolerance),
        PfSeries.HFJRW: lambda: _fjrw_residual(kind, terms, tolerance),
    }
    return dispatch[kind]()
