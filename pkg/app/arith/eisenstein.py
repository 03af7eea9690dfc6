# app/arith/eisenstein.py
"""
Exact elements a + b*zeta of Q(zeta), zeta a primitive cube root of unity.

zeta satisfies zeta^2 + zeta + 1 = 0, so every element has the unique
normal form a + b*zeta with a, b rational.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Optional, Union

import mpmath

from app.arith.rational import format_rational, parse_rational

Scalar = Union[int, Fraction, "EisensteinScalar"]


class NotInvertibleError(ZeroDivisionError):
    """Raised when inverting zero in Q(zeta) or a non-unit truncated series"""
    pass


@dataclass(frozen=True)
class EisensteinScalar:
    """Normal form a + b*zeta"""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @classmethod
    def coerce(cls, value: Any) -> "EisensteinScalar":
        if isinstance(value, EisensteinScalar):
            return value
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return cls(Fraction(value), Fraction(0))
        raise TypeError(f"Cannot coerce {value!r} to an Eisenstein scalar")

    # Ring operations

    def __add__(self, other: Any) -> "EisensteinScalar":
        try:
            other = EisensteinScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return EisensteinScalar(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self) -> "EisensteinScalar":
        return EisensteinScalar(-self.a, -self.b)

    def __sub__(self, other: Any) -> "EisensteinScalar":
        try:
            other = EisensteinScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return EisensteinScalar(self.a - other.a, self.b - other.b)

    def __rsub__(self, other: Any) -> "EisensteinScalar":
        try:
            other = EisensteinScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return other - self

    def __mul__(self, other: Any) -> "EisensteinScalar":
        try:
            other = EisensteinScalar.coerce(other)
        except TypeError:
            return NotImplemented
        # zeta^2 = -1 - zeta
        bd = self.b * other.b
        return EisensteinScalar(
            self.a * other.a - bd,
            self.a * other.b + self.b * other.a - bd,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "EisensteinScalar":
        return EisensteinScalar(self.a - self.b, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def inverse(self) -> "EisensteinScalar":
        n = self.norm()
        if n == 0:
            raise NotInvertibleError("Zero has no inverse in Q(zeta)")
        c = self.conjugate()
        return EisensteinScalar(c.a / n, c.b / n)

    def __truediv__(self, other: Any) -> "EisensteinScalar":
        try:
            other = EisensteinScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Any) -> "EisensteinScalar":
        try:
            other = EisensteinScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int) -> "EisensteinScalar":
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = ONE
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def __eq__(self, other: Any) -> bool:
        try:
            other = EisensteinScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    # Conversions

    def to_complex(self, precision: Optional[int] = None) -> mpmath.mpc:
        """Numeric value with zeta = -1/2 + i*sqrt(3)/2 (precision in bits)."""
        ctx_prec = precision if precision is not None else mpmath.mp.prec
        with mpmath.workprec(ctx_prec):
            a = mpmath.mpf(self.a.numerator) / self.a.denominator
            b = mpmath.mpf(self.b.numerator) / self.b.denominator
            zeta = mpmath.mpc(-0.5, mpmath.sqrt(3) / 2)
            return a + b * zeta

    def to_dict(self) -> Dict[str, str]:
        return {"a": format_rational(self.a), "b": format_rational(self.b)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "EisensteinScalar":
        if not isinstance(data, dict) or set(data) != {"a", "b"}:
            raise ValueError(f"Malformed Eisenstein scalar: {data!r}")
        return cls(parse_rational(data["a"]), parse_rational(data["b"]))

    def __str__(self) -> str:
        if self.b == 0:
            return format_rational(self.a)
        if self.a == 0:
            return f"{format_rational(self.b)}*z"
        sign = "+" if self.b > 0 else "-"
        return f"{format_rational(self.a)} {sign} {format_rational(abs(self.b))}*z"

    def __repr__(self) -> str:
        return f"EisensteinScalar({self})"


ZERO = EisensteinScalar(0, 0)
ONE = EisensteinScalar(1, 0)
ZETA = EisensteinScalar(0, 1)


def zeta_power(k: int) -> EisensteinScalar:
    """zeta^k for any integer k."""
    r = k % 3
    if r == 0:
        return ONE
    if r == 1:
        return ZETA
    return EisensteinScalar(-1, -1)


def eis_mul(x: Scalar, y: Scalar) -> EisensteinScalar:
    return EisensteinScalar.coerce(x) * EisensteinScalar.coerce(y)


def eis_inv(x: Scalar) -> EisensteinScalar:
    return EisensteinScalar.coerce(x).inverse()


def eis_to_complex(x: Scalar, precision: Optional[int] = None) -> mpmath.mpc:
    return EisensteinScalar.coerce(x).to_complex(precision)
