# app/cohomology/gw.py
"""
The ring Q(zeta)[p]/(p^4): ambient cohomology of the complete intersection
X_{3,3} in P^5, with p the hyperplane class.
"""
from __future__ import annotations

from typing import Any, Dict, List, Tuple

from app.arith.eisenstein import EisensteinScalar
from app.arith.series import TruncatedSeries

GW_ORDER = 4


class GwClass(TruncatedSeries):
    """c_0 + c_1 p + c_2 p^2 + c_3 p^3 with Eisenstein coefficients"""

    # Gr(p^i) and deg_0(p^i)
    GR: Tuple[int, ...] = (0, 2, 4, 6)
    DEG0: Tuple[int, ...] = (0, 2, 4, 6)

    def __post_init__(self):
        super().__post_init__()
        if len(self.coeffs) != GW_ORDER:
            raise ValueError(f"GwClass needs {GW_ORDER} coefficients, got {len(self.coeffs)}")

    @classmethod
    def _coerce(cls, value: Any) -> EisensteinScalar:
        return EisensteinScalar.coerce(value)

    @classmethod
    def zero(cls) -> "GwClass":
        return cls.constant(0, GW_ORDER)

    @classmethod
    def one(cls) -> "GwClass":
        return cls.constant(1, GW_ORDER)

    @classmethod
    def p(cls) -> "GwClass":
        return cls.generator(GW_ORDER)

    @classmethod
    def from_list(cls, values: List[Any]) -> "GwClass":
        return cls(tuple(values))

    def to_dict(self) -> List[Dict[str, str]]:
        return [c.to_dict() for c in self.coeffs]

    @classmethod
    def from_dict(cls, data: List[Dict[str, Any]]) -> "GwClass":
        if not isinstance(data, list):
            raise ValueError(f"Malformed GW class: {data!r}")
        return cls(tuple(EisensteinScalar.from_dict(d) for d in data))

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = "" if i == 0 else ("p" if i == 1 else f"p^{i}")
            coeff = str(c)
            if not c.is_rational() and mono:
                coeff = f"({coeff})"
            parts.append(coeff if not mono else f"{coeff}*{mono}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"GwClass({self})"


def gw_exp(k: int) -> GwClass:
    """e^{kp} = sum_{i<4} k^i p^i / i!."""
    return (GwClass.p() * k).exp()


def gw_nilpotent_inverse(x: GwClass) -> GwClass:
    """Inverse of a class with invertible constant term."""
    return x.inverse()
