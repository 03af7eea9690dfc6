# app/analytic/special.py
from __future__ import annotations

from math import factorial
from typing import Any

import mpmath

from app.analytic.nilpotent import NilpotentComplex


class PoleError(ValueError):
    """Raised when Gamma is evaluated at a non-positive integer"""
    pass


def _is_pole(z: Any) -> bool:
    z = mpmath.mpc(z)
    return z.imag == 0 and z.real <= 0 and z.real == mpmath.floor(z.real)


def complex_gamma(z: Any) -> mpmath.mpc:
    if _is_pole(z):
        raise PoleError(f"Gamma has a pole at {z}")
    return mpmath.mpc(mpmath.gamma(z))


def complex_digamma(z: Any) -> mpmath.mpc:
    if _is_pole(z):
        raise PoleError(f"digamma has a pole at {z}")
    return mpmath.mpc(mpmath.digamma(z))


def complex_polygamma(m: int, z: Any) -> mpmath.mpc:
    if _is_pole(z):
        raise PoleError(f"polygamma has a pole at {z}")
    return mpmath.mpc(mpmath.polygamma(m, z))


def log_gamma_nilpotent(z: NilpotentComplex) -> NilpotentComplex:
    """
    log Gamma(z0 + n) = log Gamma(z0) + sum_{j>=1} psi^{(j-1)}(z0) n^j / j!,
    truncated by the nilpotent order.
    """
    z0 = z.coeffs[0]
    if _is_pole(z0):
        raise PoleError(f"Gamma has a pole at the constant term {z0}")
    n = z.nilpotent_part()
    total = NilpotentComplex.constant(mpmath.loggamma(z0), z.order)
    power = NilpotentComplex.constant(1, z.order)
    for j in range(1, z.order):
        power = power * n
        total = total + power * (mpmath.polygamma(j - 1, z0) / factorial(j))
    return total


def gamma_nilpotent(z: NilpotentComplex) -> NilpotentComplex:
    """Gamma(z0) * exp(psi n + psi' n^2/2 + psi'' n^3/6 + ...)."""
    return log_gamma_nilpotent(z).exp()


def rgamma_nilpotent(z: NilpotentComplex) -> NilpotentComplex:
    """1/Gamma, via exp(-log Gamma) off the poles."""
    return (-log_gamma_nilpotent(z)).exp()


def digamma_shift_identity(d: int) -> mpmath.mpc:
    """
    psi(2/3 - d/3) - psi(1/3 + d/3) minus its predicted value
    (psi(2/3) - psi(1/3)) for d = 0 mod 3 and its negative for d = 1 mod 3.
    """
    if d % 3 == 2:
        raise ValueError("psi(2/3 - d/3) has a pole for d = 2 mod 3")
    third = mpmath.mpf(1) / 3
    lhs = mpmath.digamma(2 * third - d * third) - mpmath.digamma(third + d * third)
    base = mpmath.digamma(2 * third) - mpmath.digamma(third)
    return lhs - (base if d % 3 == 0 else -base)
