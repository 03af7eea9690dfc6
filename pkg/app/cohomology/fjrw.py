# app/cohomology/fjrw.py
"""
Narrow FJRW state space of the Landau-Ginzburg model: two sectors
k = 1, 2, each spanned by 1^{(k)} and H^{(k)} with (H^{(k)})^2 = 0.
Sectors multiply independently.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Tuple

from app.arith.eisenstein import ONE, ZERO, EisensteinScalar, zeta_power

SECTORS = (1, 2)


@dataclass(frozen=True)
class FjrwClass:
    """s1_unit*1^{(1)} + s1_H*H^{(1)} + s2_unit*1^{(2)} + s2_H*H^{(2)}"""

    s1_unit: EisensteinScalar = ZERO
    s1_H: EisensteinScalar = ZERO
    s2_unit: EisensteinScalar = ZERO
    s2_H: EisensteinScalar = ZERO

    # Gr and deg_0 of (1^{(1)}, H^{(1)}, 1^{(2)}, H^{(2)})
    GR = (0, 2, 4, 6)
    DEG0 = (-4, -2, -4, -2)

    def __post_init__(self):
        for name in ("s1_unit", "s1_H", "s2_unit", "s2_H"):
            object.__setattr__(self, name, EisensteinScalar.coerce(getattr(self, name)))

    @classmethod
    def from_sectors(cls, sectors: Dict[int, Tuple[Any, Any]]) -> "FjrwClass":
        s1 = sectors.get(1, (ZERO, ZERO))
        s2 = sectors.get(2, (ZERO, ZERO))
        return cls(s1[0], s1[1], s2[0], s2[1])

    @classmethod
    def unit(cls) -> "FjrwClass":
        return cls(ONE, ZERO, ONE, ZERO)

    def sector(self, k: int) -> Tuple[EisensteinScalar, EisensteinScalar]:
        if k == 1:
            return self.s1_unit, self.s1_H
        if k == 2:
            return self.s2_unit, self.s2_H
        raise ValueError(f"Narrow sectors are 1 and 2, got {k}")

    def components(self) -> Tuple[EisensteinScalar, ...]:
        return (self.s1_unit, self.s1_H, self.s2_unit, self.s2_H)

    def _map_sectors(self, other: "FjrwClass", op) -> "FjrwClass":
        return FjrwClass.from_sectors(
            {k: op(self.sector(k), other.sector(k)) for k in SECTORS}
        )

    def __add__(self, other: "FjrwClass") -> "FjrwClass":
        if not isinstance(other, FjrwClass):
            return NotImplemented
        return self._map_sectors(other, lambda x, y: (x[0] + y[0], x[1] + y[1]))

    def __sub__(self, other: "FjrwClass") -> "FjrwClass":
        if not isinstance(other, FjrwClass):
            return NotImplemented
        return self._map_sectors(other, lambda x, y: (x[0] - y[0], x[1] - y[1]))

    def __neg__(self) -> "FjrwClass":
        return FjrwClass(*(-c for c in self.components()))

    def __mul__(self, other: Any) -> "FjrwClass":
        if isinstance(other, FjrwClass):
            # (u1 + h1 H)(u2 + h2 H) = u1 u2 + (u1 h2 + h1 u2) H
            return self._map_sectors(
                other, lambda x, y: (x[0] * y[0], x[0] * y[1] + x[1] * y[0])
            )
        try:
            scalar = EisensteinScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return FjrwClass(*(c * scalar for c in self.components()))

    __rmul__ = __mul__

    def inverse(self) -> "FjrwClass":
        """Sector-wise (u + hH)^{-1} = u^{-1} - h u^{-2} H."""
        sectors = {}
        for k in SECTORS:
            u, h = self.sector(k)
            u_inv = u.inverse()
            sectors[k] = (u_inv, -h * u_inv * u_inv)
        return FjrwClass.from_sectors(sectors)

    def __pow__(self, exponent: int) -> "FjrwClass":
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = FjrwClass.unit()
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components())

    def to_dict(self) -> Dict[str, List[Dict[str, str]]]:
        return {
            "sector1": [self.s1_unit.to_dict(), self.s1_H.to_dict()],
            "sector2": [self.s2_unit.to_dict(), self.s2_H.to_dict()],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FjrwClass":
        try:
            s1 = [EisensteinScalar.from_dict(d) for d in data["sector1"]]
            s2 = [EisensteinScalar.from_dict(d) for d in data["sector2"]]
        except (KeyError, TypeError) as e:
            raise ValueError(f"Malformed FJRW class: {e}")
        if len(s1) != 2 or len(s2) != 2:
            raise ValueError("Each FJRW sector has exactly two coefficients")
        return cls(s1[0], s1[1], s2[0], s2[1])

    def __str__(self) -> str:
        parts = []
        labels = ("1^(1)", "H^(1)", "1^(2)", "H^(2)")
        for label, c in zip(labels, self.components()):
            if not c.is_zero():
                parts.append(f"({c})*{label}")
        return " + ".join(parts) if parts else "0"


def fjrw_ch_line(n: int, m: int) -> FjrwClass:
    """ch(O(n)[m]) = (-1)^m sum_{k=1,2} zeta^{kn} (1^{(k)} + (n/3) H^{(k)})."""
    sign = -1 if m % 2 else 1
    sectors = {}
    for k in SECTORS:
        z = zeta_power(k * n) * sign
        sectors[k] = (z, z * _third(n))
    return FjrwClass.from_sectors(sectors)


def _third(n: int) -> EisensteinScalar:
    return EisensteinScalar(Fraction(n, 3), 0)


def todd_inverse_narrow() -> FjrwClass:
    """
    Narrow part of (Todd)^{-1}: on sector k, ((1 - zeta^k) - zeta^k H/3)^6,
    i.e. (1 - zeta^k)^6 + 6 (1 - zeta^k)^5 (-zeta^k / 3) H.
    """
    sectors = {}
    for k in SECTORS:
        z = zeta_power(k)
        base = ONE - z
        unit = base ** 6
        h = base ** 5 * z * (-2)
        sectors[k] = (unit, h)
    return FjrwClass.from_sectors(sectors)


def ch_kminus(q: int, m: int) -> FjrwClass:
    """
    Narrow Chern character of K_-(q)[m]:
    (-1)^m sum_k (zeta^{-k} (1 - H/3))^{q+6} * (sector-k Todd inverse).
    """
    sign = -1 if m % 2 else 1
    todd = todd_inverse_narrow()
    e = q + 6
    sectors = {}
    for k in SECTORS:
        # (1 - H/3)^e = 1 - (e/3) H
        z = zeta_power(-k * e)
        twist = (z, z * _third(-e))
        tu, th = todd.sector(k)
        sectors[k] = (twist[0] * tu * sign, (twist[0] * th + twist[1] * tu) * sign)
    return FjrwClass.from_sectors(sectors)


