# app/analytic/nilpotent.py
"""Complex truncated series c0 + c1 x + ... with x^N = 0 (x = p by default, N = 4)."""
from __future__ import annotations

from typing import Any, List, Optional

import mpmath

from app.arith.series import TruncatedSeries
from app.cohomology.gw import GwClass


class NilpotentComplex(TruncatedSeries):
    """mpmath complex coefficients; exp/log/pow for any invertible constant term"""

    @classmethod
    def _coerce(cls, value: Any) -> mpmath.mpc:
        if isinstance(value, (mpmath.mpc, mpmath.mpf, int, float, complex)) and not isinstance(value, bool):
            return mpmath.mpc(value)
        if hasattr(value, "numerator") and hasattr(value, "denominator"):
            return mpmath.mpc(mpmath.mpf(value.numerator) / value.denominator)
        raise TypeError(f"Cannot use {value!r} as a complex coefficient")

    @classmethod
    def _scalar_inverse(cls, value: Any) -> mpmath.mpc:
        return 1 / value

    @classmethod
    def _scalar_exp(cls, value: Any) -> mpmath.mpc:
        return mpmath.exp(value)

    @classmethod
    def _scalar_log(cls, value: Any) -> mpmath.mpc:
        return mpmath.log(value)

    @classmethod
    def of(cls, *coeffs: Any) -> "NilpotentComplex":
        return cls(tuple(coeffs))

    @classmethod
    def p(cls, order: int = 4) -> "NilpotentComplex":
        return cls.generator(order)

    @classmethod
    def from_gw(cls, value: GwClass, precision: Optional[int] = None) -> "NilpotentComplex":
        return cls(tuple(c.to_complex(precision) for c in value.coeffs))

    def pow_complex(self, exponent: Any) -> "NilpotentComplex":
        """self**exponent = exp(exponent * log(self)) on the principal branch."""
        return (self.log() * exponent).exp()

    def sin(self) -> "NilpotentComplex":
        i = mpmath.mpc(0, 1)
        return ((self * i).exp() - (self * -i).exp()) / (2 * i)

    def cos(self) -> "NilpotentComplex":
        i = mpmath.mpc(0, 1)
        return ((self * i).exp() + (self * -i).exp()) / 2

    def norm(self) -> mpmath.mpf:
        return max(abs(c) for c in self.coeffs)

    def distance(self, other: "NilpotentComplex") -> mpmath.mpf:
        return (self - other).norm()

    def relative_error(self, reference: "NilpotentComplex") -> mpmath.mpf:
        scale = reference.norm()
        diff = self.distance(reference)
        return diff / scale if scale else diff

    def to_dict(self) -> List[List[float]]:
        return [[float(c.real), float(c.imag)] for c in self.coeffs]

    def __str__(self) -> str:
        return "[" + ", ".join(mpmath.nstr(c, 12) for c in self.coeffs) + "]"

    def __repr__(self) -> str:
        return f"NilpotentComplex({self})"
