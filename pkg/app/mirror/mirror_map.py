# app/mirror/mirror_map.py
"""
The linear maps U_l : H_FJRW -> H_GW.

With x = zeta^k e^p,
    H^{(k)} -> (1/3) x^l / (1 - x)
    1^{(k)} -> (l/9) x^l / (1 - x) + (1/9) x^{l+1} / (1 - x)^2
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from app.arith.eisenstein import ONE, EisensteinScalar, zeta_power
from app.arith.rational import binomial
from app.cohomology.fjrw import FjrwClass
from app.cohomology.gw import GwClass, gw_exp

BASIS_LABELS = ("1^(1)", "H^(1)", "1^(2)", "H^(2)")


@dataclass(frozen=True)
class MirrorMap:
    """Images of (1^{(1)}, H^{(1)}, 1^{(2)}, H^{(2)}) under U_l"""

    l: int
    columns: Tuple[GwClass, GwClass, GwClass, GwClass]

    @property
    def matrix(self) -> List[List[EisensteinScalar]]:
        """4x4 array: row i holds the p^i coefficients of the four columns."""
        return [[col[i] for col in self.columns] for i in range(4)]

    def image(self, label: str) -> GwClass:
        return self.columns[BASIS_LABELS.index(label)]

    def to_dict(self) -> Dict[str, object]:
        return {
            "l": self.l,
            "columns": {
                label: col.to_dict() for label, col in zip(BASIS_LABELS, self.columns)
            },
        }


def _sector_columns(l: int, k: int) -> Tuple[GwClass, GwClass]:
    x = gw_exp(1) * zeta_power(k)
    inv = (GwClass.one() - x).inverse()
    x_l = x ** l
    h_col = x_l * inv * Fraction(1, 3)
    unit_col = x_l * inv * Fraction(l, 9) + x ** (l + 1) * inv * inv * Fraction(1, 9)
    return unit_col, h_col


def build_mirror_map(l: int) -> MirrorMap:
    u1, h1 = _sector_columns(l, 1)
    u2, h2 = _sector_columns(l, 2)
    return MirrorMap(l=l, columns=(u1, h1, u2, h2))


def _unit_weight(n: int) -> Fraction:
    return Fraction(n, 9)


def _h_weight(n: int) -> Fraction:
    return Fraction(1, 3)


def _matrix_row(l: int, row: int, k: int, weight: Callable[[int], Fraction], damping: int) -> GwClass:
    """Row `row` of the damped semi-infinite product for sector k."""
    acc = GwClass.zero()
    for i in range(min(damping, row - l) + 1):
        sign = -1 if i % 2 else 1
        acc = acc + gw_exp(row - i) * (weight(row - i) * binomial(damping, i) * sign)
    return acc * zeta_power(k * row)


def build_mirror_map_matrix_form(l: int, damping: int = 6, margin: int = 8) -> MirrorMap:
    """
    U_l from the semi-infinite matrix form.

    Each sector-k basis vector is written as (1 - zeta^k)^{-D} times
    (1 - zeta^k)^D 1^{(k)}; the formal sector 0 has (1 - zeta^0)^D = 0 and
    contributes nothing. After multiplying the row sum by (1 - zeta^k)^D,
    rows at index l + D and beyond vanish in Q(zeta)[p]/(p^4) for D >= 5,
    so the sum over the first D rows is exact.
    """
    if damping < 5:
        raise ValueError(f"damping must be at least 5 for rows to vanish mod p^4, got {damping}")

    columns = []
    for k in (1, 2):
        scale = (ONE - zeta_power(k)) ** damping
        for weight in (_unit_weight, _h_weight):
            total = GwClass.zero()
            for row in range(l, l + damping):
                total = total + _matrix_row(l, row, k, weight, damping)
            for row in range(l + damping, l + damping + margin):
                if not _matrix_row(l, row, k, weight, damping).is_zero():
                    raise ArithmeticError(f"Row {row} of the matrix form does not vanish (l={l}, k={k})")
            columns.append(total * scale.inverse())
    return MirrorMap(l=l, columns=tuple(columns))


def apply_mirror(mirror: MirrorMap, c: FjrwClass) -> GwClass:
    total = GwClass.zero()
    for coeff, col in zip(c.components(), mirror.columns):
        if not coeff.is_zero():
            total = total + col * coeff
    return total
