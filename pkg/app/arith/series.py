# app/arith/series.py
"""
Truncated power series c_0 + c_1 x + ... + c_{N-1} x^{N-1} with x^N = 0.

The coefficient ring is whatever the subclass puts in `coeffs` (Fraction,
EisensteinScalar, mpmath.mpc); only +, -, *, / by integers and the hooks
below are needed from it.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Any, Iterable, Sequence, Tuple

from app.arith.eisenstein import NotInvertibleError


@dataclass(frozen=True)
class TruncatedSeries:
    coeffs: Tuple[Any, ...]

    def __post_init__(self):
        coeffs = tuple(self._coerce(c) for c in self.coeffs)
        if not coeffs:
            raise ValueError("A truncated series needs at least one coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    # Hooks for the coefficient ring

    @classmethod
    def _coerce(cls, value: Any) -> Any:
        return Fraction(value)

    @classmethod
    def _zero(cls) -> Any:
        return cls._coerce(0)

    @classmethod
    def _one(cls) -> Any:
        return cls._coerce(1)

    @classmethod
    def _scalar_inverse(cls, value: Any) -> Any:
        return cls._one() / value

    @classmethod
    def _scalar_exp(cls, value: Any) -> Any:
        raise ValueError("exp needs a series with zero constant term in an exact ring")

    @classmethod
    def _scalar_log(cls, value: Any) -> Any:
        raise ValueError("log needs a series with constant term 1 in an exact ring")

    # Construction

    def _new(self, coeffs: Iterable[Any]) -> "TruncatedSeries":
        return type(self)(tuple(coeffs))

    @classmethod
    def constant(cls, value: Any, order: int) -> "TruncatedSeries":
        return cls(tuple([value] + [cls._zero()] * (order - 1)))

    @classmethod
    def generator(cls, order: int) -> "TruncatedSeries":
        """The nilpotent generator x."""
        if order < 2:
            return cls.constant(0, order)
        coeffs = [cls._zero()] * order
        coeffs[1] = cls._one()
        return cls(tuple(coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, index: int) -> Any:
        return self.coeffs[index]

    def _check_order(self, other: "TruncatedSeries"):
        if other.order != self.order:
            raise ValueError(f"Truncation orders differ: {self.order} vs {other.order}")

    def _lift(self, other: Any) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            self._check_order(other)
            return other
        return type(self).constant(other, self.order)

    # Arithmetic

    def __add__(self, other: Any) -> "TruncatedSeries":
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self._new(a + b for a, b in zip(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return self._new(-c for c in self.coeffs)

    def __sub__(self, other: Any) -> "TruncatedSeries":
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self._new(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __rsub__(self, other: Any) -> "TruncatedSeries":
        return (-self) + other

    def __mul__(self, other: Any) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            try:
                scalar = self._coerce(other)
            except TypeError:
                return NotImplemented
            return self._new(c * scalar for c in self.coeffs)
        self._check_order(other)
        n = self.order
        out = [self._zero()] * n
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(n - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] = out[i + j] + a * b
        return self._new(out)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return self * other.inverse()
        return self._new(c / other for c in self.coeffs)

    def __rtruediv__(self, other: Any) -> "TruncatedSeries":
        return self._lift(other) * self.inverse()

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def nilpotent_part(self) -> "TruncatedSeries":
        return self._new([self._zero()] + list(self.coeffs[1:]))

    def inverse(self) -> "TruncatedSeries":
        """(c0 (1 + n))^{-1} = c0^{-1} * sum_j (-n)^j."""
        c0 = self.coeffs[0]
        if c0 == 0:
            raise NotInvertibleError("Series with zero constant term is not invertible")
        c0_inv = self._scalar_inverse(c0)
        n = self.nilpotent_part() * c0_inv
        term = type(self).constant(1, self.order)
        total = term
        for _ in range(1, self.order):
            term = term * (-n)
            total = total + term
        return total * c0_inv

    def exp(self) -> "TruncatedSeries":
        c0 = self.coeffs[0]
        n = self.nilpotent_part()
        term = type(self).constant(1, self.order)
        total = term
        for j in range(1, self.order):
            term = term * n
            total = total + term / factorial(j)
        if c0 != 0:
            total = total * self._scalar_exp(c0)
        return total

    def log(self) -> "TruncatedSeries":
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError("log of a series with zero constant term")
        n = self.nilpotent_part() * self._scalar_inverse(c0)
        total = type(self).constant(0, self.order)
        term = type(self).constant(1, self.order)
        for j in range(1, self.order):
            term = term * n
            sign = 1 if j % 2 == 1 else -1
            total = total + term * sign / j
        if c0 != 1:
            total = total + self._scalar_log(c0)
        return total

    def __pow__(self, exponent: int) -> "TruncatedSeries":
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = type(self).constant(1, self.order)
        e = abs(exponent)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def to_list(self) -> Sequence[Any]:
        return list(self.coeffs)
