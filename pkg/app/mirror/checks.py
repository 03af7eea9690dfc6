# app/mirror/checks.py
"""
Exact identity checks built on U_l: the three expansion identities, the
closed form of U_l on ch(K_-(q)[m]) and the main comparison with the
Orlov-window Chern characters.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional

from app.arith.eisenstein import ONE, zeta_power
from app.arith.rational import binomial
from app.cohomology.fjrw import FjrwClass, ch_kminus
from app.cohomology.gw import GwClass, gw_exp
from app.mirror.mirror_map import MirrorMap, apply_mirror, build_mirror_map


class OrlovMethod(Enum):
    """How the CY side of the main comparison is computed"""
    LEDGER = "ledger"
    CLOSED = "closed"
    BOTH = "both"


@dataclass
class IdentityCheck:
    name: str
    lhs: GwClass
    rhs: GwClass

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "lhs": self.lhs.to_dict(),
            "rhs": self.rhs.to_dict(),
            "pass": self.passed,
        }


@dataclass
class CheckReport:
    params: Dict[str, Any]
    checks: List[IdentityCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> Dict[str, Any]:
        if len(self.checks) == 1:
            only = self.checks[0]
            return {
                "params": self.params,
                "lhs": only.lhs.to_dict(),
                "rhs": only.rhs.to_dict(),
                "pass": self.passed,
            }
        return {
            "params": self.params,
            "checks": [c.to_dict() for c in self.checks],
            "pass": self.passed,
        }


def _sign(m: int) -> int:
    return -1 if m % 2 else 1


def _residues(q: int, lo: int, hi: int) -> List[int]:
    return [s for s in range(lo, hi + 1) if (s - q) % 3 == 0]


def weighted_sector_class(q: int, power: int, on_h: bool) -> FjrwClass:
    """sum_k zeta^{-qk} (1 - zeta^k)^power times 1^{(k)} or H^{(k)}."""
    sectors = {}
    for k in (1, 2):
        coeff = zeta_power(-q * k) * (ONE - zeta_power(k)) ** power
        zero = coeff * 0
        sectors[k] = (zero, coeff) if on_h else (coeff, zero)
    return FjrwClass.from_sectors(sectors)


def _elem1_leading(l: int, q: int) -> GwClass:
    total = GwClass.zero()
    for s in _residues(q, l, l + 5):
        for k in range(s - l + 1):
            j = l + k + 6 - s
            total = total + gw_exp(k + l) * (Fraction(s, 3) * _sign(j) * binomial(6, j))
    return total


def _elem1_tail(l: int, q: int) -> GwClass:
    total = GwClass.zero()
    for s in _residues(q, l, l + 5):
        for k in range(s - l):
            total = total + gw_exp(k + l) * (-2 * _sign(s - l - k) * binomial(5, s - l - k - 1))
    return total


def _elem_h_rhs(l: int, q: int, power: int) -> GwClass:
    total = GwClass.zero()
    for s in _residues(q, l, l + power - 1):
        for k in range(s - l + 1):
            total = total + gw_exp(k + l) * (_sign(s - l - k) * binomial(power, s - l - k))
    return total


def check_elem_identities(l: int, q: int, mirror: Optional[MirrorMap] = None) -> CheckReport:
    """
    The three expansions of U_l on (1 - zeta^k)^6 1^{(k)}, (1 - zeta^k)^5 H^{(k)}
    and (1 - zeta^k)^6 H^{(k)}, plus the combination in which the tail of the
    first cancels against twice the second at q - 1.
    """
    mirror = mirror or build_mirror_map(l)
    lhs1 = apply_mirror(mirror, weighted_sector_class(q, 6, on_h=False))
    lhs2 = apply_mirror(mirror, weighted_sector_class(q, 5, on_h=True))
    lhs3 = apply_mirror(mirror, weighted_sector_class(q, 6, on_h=True))
    lhs2_shifted = apply_mirror(mirror, weighted_sector_class(q - 1, 5, on_h=True))

    leading = _elem1_leading(l, q)
    checks = [
        IdentityCheck("unit_power6", lhs1, leading + _elem1_tail(l, q)),
        IdentityCheck("h_power5", lhs2, _elem_h_rhs(l, q, 5)),
        IdentityCheck("h_power6", lhs3, _elem_h_rhs(l, q, 6)),
        IdentityCheck("combined", lhs1 - lhs2_shifted * 2, leading),
    ]
    return CheckReport(params={"l": l, "q": q}, checks=checks)


def slope_line_contribution(l: int, m: int, t: int) -> GwClass:
    """
    Contribution of one slash line below the second in the matrix form:
    (1/3) e^{lp} sum_{k=0}^{6} (m + 3t + k)(-1)^{6-k} C(6, 6-k) e^{kp}.
    """
    total = GwClass.zero()
    for k in range(7):
        total = total + gw_exp(k) * (Fraction(m + 3 * t + k, 3) * _sign(6 - k) * binomial(6, 6 - k))
    return total * gw_exp(l)


def slope_line_factored(l: int, m: int, t: int) -> GwClass:
    """(1/3) e^{lp} (m + 3t)(1 - e^p)^6 - 2 e^{(l+1)p} (1 - e^p)^5."""
    base = GwClass.one() - gw_exp(1)
    return gw_exp(l) * base ** 6 * Fraction(m + 3 * t, 3) - gw_exp(l + 1) * base ** 5 * 2


def mirror_image_closed(l: int, q: int, m: int) -> GwClass:
    """
    Closed form of U_l(ch(K_-(q)[m])):
    (-1)^m sum_{s = q mod 3, l <= s <= l+5} ((s-q-6)/3) sum_{k=0}^{s-l}
        (-1)^{l+k+6-s} C(6, l+k+6-s) e^{(k+l)p}.
    """
    total = GwClass.zero()
    for s in _residues(q, l, l + 5):
        for k in range(s - l + 1):
            j = l + k + 6 - s
            total = total + gw_exp(k + l) * (Fraction(s - q - 6, 3) * _sign(j) * binomial(6, j))
    return total * _sign(m)


def check_mirror_closed_form(l: int, q: int, m: int) -> CheckReport:
    lhs = apply_mirror(build_mirror_map(l), ch_kminus(q, m))
    return CheckReport(
        params={"l": l, "q": q, "m": m},
        checks=[IdentityCheck("closed_form", lhs, mirror_image_closed(l, q, m))],
    )


def check_main_theorem(
    t: int,
    q: int,
    m: int,
    orlov_method: OrlovMethod = OrlovMethod.LEDGER,
    engine: Optional[Any] = None,
    mirror: Optional[MirrorMap] = None,
) -> CheckReport:
    """
    U_t(ch(K_-(q)[m])) against ch(Orl_{t-3}(K_-(q)[m])) e^{-3p}, exactly.
    A `mirror` other than build_mirror_map(t) may be passed to exercise the failure path.
    """
    from app.mf.orlov import orlov_chern_closed, orlov_chern_ledger

    lhs = apply_mirror(mirror or build_mirror_map(t), ch_kminus(q, m))
    cy_sides = {}
    if orlov_method in (OrlovMethod.LEDGER, OrlovMethod.BOTH):
        cy_sides["ledger"] = orlov_chern_ledger(t - 3, q, m, engine=engine)
    if orlov_method in (OrlovMethod.CLOSED, OrlovMethod.BOTH):
        cy_sides["closed"] = orlov_chern_closed(t - 3, q, m)
    checks = [
        IdentityCheck("main" if len(cy_sides) == 1 else f"main_{route}", lhs, rhs * gw_exp(-3))
        for route, rhs in cy_sides.items()
    ]
    return CheckReport(params={"t": t, "q": q, "m": m, "method": orlov_method.value}, checks=checks)
