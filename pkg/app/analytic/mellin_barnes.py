# app/analytic/mellin_barnes.py
"""
Mellin-Barnes continuation of h_GW through the window w_l.

    F_l(s) = z e^{(P+s) log v} Gamma(3P+3s+1)^2 / Gamma(P+s+1)^6
             * pi / sin(pi s) * e^{-(2l-1) pi i s},          P = p / (2 pi i)

The contour is the line Re(s) = sigma, sigma in (-1/3 + 1/20, -1/20), run
downwards, so that

    value = (1/(2 pi i)) int_{sigma+i inf}^{sigma-i inf} F_l(s) ds
          = -(1/(2 pi)) int_{-inf}^{inf} F_l(sigma + i y) dy.

It is the sum of the residues at s = n >= 0 for Re(log v) < -6 log 3 and
minus the sum of the residues at s = -P - (d+1)/3 (d != 2 mod 3) otherwise.
|F_l(sigma + iy)| decays like e^{-(pi - |theta|)|y|} |y|^{-2} with
theta = Im(log v) - (2l-1) pi, so |theta| < pi is required.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, List, Optional, Tuple

import mpmath
import numpy as np

from app.analytic.nilpotent import NilpotentComplex
from app.analytic.series import (
    ConvergenceError,
    GW_RADIUS_LOG,
    h_gw,
    h_gw_term,
    p_over_2pii,
)
from app.analytic.special import complex_digamma, complex_gamma, gamma_nilpotent, rgamma_nilpotent

SIGMA_RANGE = (-1.0 / 3 + 1.0 / 20, -1.0 / 20)
POLE_WARNING_DISTANCE = 1e-6


class BandError(ValueError):
    """Raised when Im(log v) lies outside the window band of w_l"""
    pass


class PoleProximityWarning(UserWarning):
    pass


class TruncationWarning(UserWarning):
    pass


@dataclass(frozen=True)
class ContourSpec:
    """Straight-line realization of the contour for window l"""
    l: int
    sigma: float = -1.0 / 6
    height: float = 0.0            # 0 = choose from the decay rate
    panel_width: float = 0.5
    gauss_order: int = 10
    max_depth: int = 8
    tolerance: float = 1e-12
    detour: str = "none: straight line Re(s) = sigma inside the pole-free strip"

    def __post_init__(self):
        lo, hi = SIGMA_RANGE
        if not lo < self.sigma < hi:
            raise ValueError(f"sigma must lie in ({lo:.4f}, {hi:.4f}), got {self.sigma}")
        if self.height < 0:
            raise ValueError("height must be non-negative")
        if self.panel_width <= 0:
            raise ValueError("panel_width must be positive")
        if self.gauss_order < 2:
            raise ValueError("gauss_order must be at least 2")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "l": self.l,
            "sigma": self.sigma,
            "height": self.height,
            "panel_width": self.panel_width,
            "gauss_order": self.gauss_order,
            "max_depth": self.max_depth,
            "tolerance": self.tolerance,
            "detour": self.detour,
        }


@dataclass
class ContourResult:
    value: NilpotentComplex
    error_estimate: float
    tail_estimate: float
    height: float
    panels: int
    evaluations: int
    unconverged_panels: int = 0
    spec: Optional[ContourSpec] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value.to_dict(),
            "error_estimate": self.error_estimate,
            "tail_estimate": self.tail_estimate,
            "height": self.height,
            "panels": self.panels,
            "evaluations": self.evaluations,
            "unconverged_panels": self.unconverged_panels,
            "contour": self.spec.to_dict() if self.spec else None,
        }


def band_offset(l: int, log_v: Any) -> float:
    """theta = Im(log v) - (2l-1) pi."""
    return float(mpmath.im(mpmath.mpc(log_v))) - (2 * l - 1) * math.pi


def check_band(l: int, log_v: Any) -> float:
    """Return the decay rate pi - |theta|; BandError outside ((2l-2) pi, 2l pi)."""
    theta = band_offset(l, log_v)
    if abs(theta) >= math.pi:
        im = float(mpmath.im(mpmath.mpc(log_v)))
        raise BandError(
            f"Im(log v) = {im:.6f} is outside the band ({(2 * l - 2) * math.pi:.6f}, {2 * l * math.pi:.6f}) of window {l}"
        )
    return math.pi - abs(theta)


def _pole_distance(s: mpmath.mpc) -> float:
    """Distance from s to the constant parts of the poles of F_l."""
    re = float(s.real)
    im = abs(float(s.imag))
    candidates = []
    if re > -0.5:
        candidates.append(max(0, round(re)))
    k = math.floor(-3 * re)
    for j in (k - 1, k, k + 1, k + 2):
        if j >= 1 and j % 3 != 0:
            candidates.append(-j / 3)
    return min(math.hypot(re - c, im) for c in candidates)


def integrand_Fl(l: int, s: Any, log_v: Any, z: Any = 1) -> NilpotentComplex:
    s = mpmath.mpc(s)
    log_v = mpmath.mpc(log_v)
    if _pole_distance(s) < POLE_WARNING_DISTANCE:
        warnings.warn(f"F_{l} evaluated within {POLE_WARNING_DISTANCE} of a pole at s = {s}", PoleProximityWarning)
    P = p_over_2pii()
    numerator = gamma_nilpotent(P * 3 + (3 * s + 1))
    denominator = rgamma_nilpotent(P + (s + 1))
    power = ((P + s) * log_v).exp()
    scalar = mpmath.pi / mpmath.sin(mpmath.pi * s) * mpmath.exp(-(2 * l - 1) * mpmath.pi * mpmath.mpc(0, 1) * s)
    return power * numerator * numerator * denominator ** 6 * (scalar * mpmath.mpc(z))


@lru_cache(maxsize=16)
def gauss_legendre(order: int) -> Tuple[Tuple[float, ...], Tuple[float, ...]]:
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return tuple(float(x) for x in nodes), tuple(float(w) for w in weights)


@dataclass
class _Integrator:
    l: int
    log_v: mpmath.mpc
    z: mpmath.mpc
    spec: ContourSpec
    evaluations: int = 0
    unconverged: int = 0
    errors: List[float] = field(default_factory=list)

    def f(self, y: float) -> NilpotentComplex:
        self.evaluations += 1
        return integrand_Fl(self.l, mpmath.mpc(self.spec.sigma, y), self.log_v, self.z)

    def rule(self, a: float, b: float, order: int) -> NilpotentComplex:
        nodes, weights = gauss_legendre(order)
        mid, half = (a + b) / 2, (b - a) / 2
        total = NilpotentComplex.constant(0, 4)
        for x, w in zip(nodes, weights):
            total = total + self.f(mid + half * x) * (w * half)
        return total

    def panel(self, a: float, b: float, tol: float, depth: int = 0,
              fine: Optional[NilpotentComplex] = None) -> NilpotentComplex:
        order = self.spec.gauss_order
        coarse = self.rule(a, b, order)
        if fine is None:
            fine = self.rule(a, b, 2 * order)
        err = float((fine - coarse).norm())
        if err <= tol:
            self.errors.append(err)
            return fine
        if depth >= self.spec.max_depth:
            self.unconverged += 1
            self.errors.append(err)
            return fine
        m = (a + b) / 2
        return self.panel(a, m, tol / 2, depth + 1) + self.panel(m, b, tol / 2, depth + 1)


def contour_height(spec: ContourSpec, decay: float) -> float:
    if spec.height > 0:
        return spec.height
    return max(12.0, 30.0 / decay)


def mellin_barnes_integrate(l: int, log_v: Any, z: Any = 1, spec: Optional[ContourSpec] = None,
                            verbose: bool = False) -> ContourResult:
    """
    Adaptive Gauss-Legendre quadrature of F_l along Re(s) = sigma, |Im s| <= T.

    Panels of width `panel_width` are integrated with `gauss_order` and
    2*`gauss_order` nodes and bisected until the two agree to the panel's
    share of `tolerance` (relative to a first full pass). The neglected
    tails are bounded by |F(sigma +- iT)| / (pi - |theta|).
    """
    spec = spec or ContourSpec(l=l)
    if spec.l != l:
        raise ValueError(f"ContourSpec is for window {spec.l}, not {l}")
    decay = check_band(l, log_v)
    height = contour_height(spec, decay)
    integrator = _Integrator(l, mpmath.mpc(log_v), mpmath.mpc(z), spec)

    n_panels = max(1, math.ceil(2 * height / spec.panel_width))
    edges = np.linspace(-height, height, n_panels + 1)
    bounds = [(float(edges[i]), float(edges[i + 1])) for i in range(n_panels)]
    if verbose:
        print(f"[CONTOUR] l={l} log v={mpmath.nstr(mpmath.mpc(log_v), 8)} T={height:.2f} panels={n_panels}")

    first = [integrator.rule(a, b, 2 * spec.gauss_order) for a, b in bounds]
    scale = float(sum(first, NilpotentComplex.constant(0, 4)).norm()) or 1.0
    panel_tol = spec.tolerance * scale / n_panels

    total = NilpotentComplex.constant(0, 4)
    for (a, b), fine in zip(bounds, first):
        total = total + integrator.panel(a, b, panel_tol, fine=fine)

    value = total * (-1 / (2 * mpmath.pi))
    edge = integrator.f(height).norm() + integrator.f(-height).norm()
    tail = float(edge / decay / (2 * mpmath.pi))
    error = float(sum(integrator.errors) / (2 * math.pi))

    value_norm = float(value.norm())
    if tail > spec.tolerance * max(value_norm, 1e-300) * 1e3:
        warnings.warn(
            f"Contour height T={height:.2f} leaves a tail of {tail:.3e} (|value| = {value_norm:.3e})",
            TruncationWarning,
        )
    if integrator.unconverged:
        warnings.warn(f"{integrator.unconverged} panels hit the bisection limit", TruncationWarning)
    if verbose:
        print(f"[CONTOUR] evaluations={integrator.evaluations} error~{error:.2e} tail~{tail:.2e}")

    return ContourResult(
        value=value,
        error_estimate=error,
        tail_estimate=tail,
        height=height,
        panels=n_panels,
        evaluations=integrator.evaluations,
        unconverged_panels=integrator.unconverged,
        spec=spec,
    )


def contour_residue(l: int, center: Any, log_v: Any, z: Any = 1, radius: float = 0.1,
                    points: int = 64) -> NilpotentComplex:
    """(1/(2 pi i)) of the integral of F_l over a small circle, by the trapezoid rule."""
    center = mpmath.mpc(center)
    total = NilpotentComplex.constant(0, 4)
    for j in range(points):
        e = mpmath.expjpi(2 * mpmath.mpf(j) / points)
        total = total + integrand_Fl(l, center + radius * e, log_v, z) * e
    return total * (mpmath.mpf(radius) / points)


def right_residue(n: int, log_v: Any, z: Any = 1) -> NilpotentComplex:
    """Res_{s=n} F_l, independent of l: the n-th h_GW summand."""
    if n < 0:
        return NilpotentComplex.constant(0, 4)
    return h_gw_term(n, log_v, z)


def residue_sum_right(log_v: Any, z: Any = 1, terms: int = 60) -> NilpotentComplex:
    return h_gw(log_v, z, terms).value


def left_residue(l: int, d: int, log_v: Any, z: Any = 1) -> NilpotentComplex:
    """
    Res of F_l at the double pole s = -P - (d+1)/3, d != 2 mod 3. With
    A = P + (d+1)/3, S = sin(pi A), C = cos(pi A), E = e^{(2l-1) pi i A}:

        z v^{-(d+1)/3} pi E / (d!^2 Gamma((2-d)/3)^6 S^2)
          * [S (2/3 psi((2-d)/3) - 2/3 psi(d+1) - log(v)/9 + (2l-1) pi i/9) - pi C/9]
    """
    if d < 0 or d % 3 == 2:
        raise ValueError(f"No pole of F_l for d = {d}")
    log_v = mpmath.mpc(log_v)
    i = mpmath.mpc(0, 1)
    pi = mpmath.mpf(mpmath.pi)
    A = p_over_2pii() + mpmath.mpf(d + 1) / 3
    S = (A * pi).sin()
    C = (A * pi).cos()
    E = (A * ((2 * l - 1) * pi * i)).exp()
    x = mpmath.mpf(2 - d) / 3
    prefactor = (
        mpmath.mpc(z) * mpmath.exp(-(d + 1) * log_v / 3) * pi
        / (mpmath.factorial(d) ** 2 * complex_gamma(x) ** 6)
    )
    inner = (
        2 * complex_digamma(x) / 3
        - 2 * complex_digamma(d + 1) / 3
        - log_v / 9
        + (2 * l - 1) * pi * i / 9
    )
    bracket = S * inner - C * (pi / 9)
    return E * bracket * (S * S).inverse() * prefactor


def residue_sum_left(l: int, log_v: Any, z: Any = 1, terms: int = 60) -> NilpotentComplex:
    """-(sum of residues at the left poles); the continuation of h_GW through w_l."""
    log_v = mpmath.mpc(log_v)
    if mpmath.re(log_v) <= GW_RADIUS_LOG:
        raise ConvergenceError("The left residue sum needs Re(log v) > -6 log 3")
    total = NilpotentComplex.constant(0, 4)
    for d in range(terms):
        if d % 3 != 2:
            total = total + left_residue(l, d, log_v, z)
    return -total
