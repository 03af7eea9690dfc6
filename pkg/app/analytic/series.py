# app/analytic/series.py
"""
Numeric I- and h-functions with nilpotent p (GW side, p^4 = 0) and
nilpotent H per sector (FJRW side, H^2 = 0).

    I_GW(v,z)  = z v^{p/z} sum_n v^n prod_{b<=3n}(3p+bz)^2 / prod_{b<=n}(p+bz)^6
    h_GW(v,z)  = sum_n z v^{P+n} Gamma(3P+3n+1)^2 / Gamma(P+n+1)^6,   P = p/(2 pi i)
    I_FJRW(u,z) = sum_{d != 2 mod 3} z u^{d+1+H/z} 3^{-6[d/3]}
                  prod_{b<=d, b=d+1 mod 3}(H+bz)^6 / prod_{b<=d}(H+bz)^2  1^{(d+1)}
    h_FJRW: on sector k, (2 pi i)^2 g_0 + (2 pi i) g_1 H where g_0 + g_1 H is
            z sum_d u^{d+1+H} Gamma(d/3+1/3+H/3)^6
              / (Gamma(c_k+H/3)^6 Gamma(1-c_k-H/3)^6 Gamma(d+1+H)^2),
            c_1 = 1/3, c_2 = 2/3 (the inverse of the (2 pi i)^{deg_0/2} grading).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple, Union

import mpmath

from app.analytic.nilpotent import NilpotentComplex
from app.analytic.special import gamma_nilpotent, rgamma_nilpotent
from app.cohomology.fjrw import FjrwClass
from app.cohomology.gw import GwClass

GW_RADIUS_LOG = -6 * mpmath.log(3)   # |v| < 3^{-6}
FJRW_RADIUS_LOG = 2 * mpmath.log(3)  # |u| < 3^2


class ConvergenceError(ValueError):
    """Raised when a series is evaluated outside its disk of convergence"""
    pass


class SeriesKind(Enum):
    IGW = "IGW"
    IFJRW = "IFJRW"
    HGW = "HGW"
    HFJRW = "HFJRW"


@dataclass(frozen=True)
class FjrwValue:
    """Numeric FJRW class: per sector an order-2 series in H"""
    sector1: NilpotentComplex
    sector2: NilpotentComplex

    @classmethod
    def zero(cls) -> "FjrwValue":
        z = NilpotentComplex.constant(0, 2)
        return cls(z, z)

    def sector(self, k: int) -> NilpotentComplex:
        return self.sector1 if k == 1 else self.sector2

    def components(self) -> Tuple[Any, Any, Any, Any]:
        return (self.sector1[0], self.sector1[1], self.sector2[0], self.sector2[1])

    def __add__(self, other: "FjrwValue") -> "FjrwValue":
        return FjrwValue(self.sector1 + other.sector1, self.sector2 + other.sector2)

    def __sub__(self, other: "FjrwValue") -> "FjrwValue":
        return FjrwValue(self.sector1 - other.sector1, self.sector2 - other.sector2)

    def __mul__(self, other: "FjrwValue") -> "FjrwValue":
        return FjrwValue(self.sector1 * other.sector1, self.sector2 * other.sector2)

    def norm(self) -> mpmath.mpf:
        return max(self.sector1.norm(), self.sector2.norm())

    def relative_error(self, reference: "FjrwValue") -> mpmath.mpf:
        scale = reference.norm()
        diff = (self - reference).norm()
        return diff / scale if scale else diff

    @classmethod
    def from_exact(cls, value: FjrwClass) -> "FjrwValue":
        c = [x.to_complex() for x in value.components()]
        return cls(NilpotentComplex.of(c[0], c[1]), NilpotentComplex.of(c[2], c[3]))

    def to_dict(self) -> Dict[str, List[List[float]]]:
        return {"sector1": self.sector1.to_dict(), "sector2": self.sector2.to_dict()}


SeriesValue = Union[NilpotentComplex, FjrwValue]


@dataclass
class SeriesResult:
    kind: SeriesKind
    value: SeriesValue
    terms: int
    tail_estimate: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "value": self.value.to_dict(),
            "terms": self.terms,
            "tail_estimate": self.tail_estimate,
        }


def two_pi_i() -> mpmath.mpc:
    return 2 * mpmath.pi * mpmath.mpc(0, 1)


def p_over_2pii(order: int = 4) -> NilpotentComplex:
    return NilpotentComplex.p(order) / two_pi_i()


def _tail(last: mpmath.mpf, previous: mpmath.mpf) -> float:
    if previous == 0:
        return float(last)
    ratio = last / previous
    if ratio >= 1:
        return float("inf")
    return float(last * ratio / (1 - ratio))


def _check_gw_domain(log_v: Any):
    if mpmath.re(log_v) >= GW_RADIUS_LOG:
        raise ConvergenceError(
            f"Re(log v) = {mpmath.nstr(mpmath.re(log_v), 8)} is outside the GW disk Re(log v) < -6 log 3"
        )


def _check_fjrw_domain(log_u: Any):
    if mpmath.re(log_u) >= FJRW_RADIUS_LOG:
        raise ConvergenceError(
            f"Re(log u) = {mpmath.nstr(mpmath.re(log_u), 8)} is outside the FJRW disk |u| < 9"
        )


def i_gw(log_v: Any, z: Any = 1, terms: int = 60) -> SeriesResult:
    _check_gw_domain(log_v)
    log_v, z = mpmath.mpc(log_v), mpmath.mpc(z)
    p = NilpotentComplex.p()
    v = mpmath.exp(log_v)
    coeff = NilpotentComplex.constant(1, 4)
    total = NilpotentComplex.constant(0, 4)
    norms = []
    for n in range(terms):
        if n > 0:
            num = NilpotentComplex.constant(1, 4)
            for b in range(3 * n - 2, 3 * n + 1):
                num = num * (p * 3 + b * z)
            coeff = coeff * num * num * v / (p + n * z) ** 6
        total = total + coeff
        norms.append(coeff.norm())
    value = (p * (log_v / z)).exp() * total * z
    tail = _tail(norms[-1], norms[-2]) if terms > 1 else float(norms[-1])
    return SeriesResult(SeriesKind.IGW, value, terms, tail * float(abs(z)))


def h_gw_term(n: int, log_v: Any, z: Any = 1) -> NilpotentComplex:
    """z v^{P+n} Gamma(3P+3n+1)^2 / Gamma(P+n+1)^6."""
    P = p_over_2pii()
    g = gamma_nilpotent(P * 3 + (3 * n + 1))
    r = rgamma_nilpotent(P + (n + 1))
    return ((P + n) * mpmath.mpc(log_v)).exp() * g * g * r ** 6 * mpmath.mpc(z)


def h_gw(log_v: Any, z: Any = 1, terms: int = 60) -> SeriesResult:
    _check_gw_domain(log_v)
    log_v, z = mpmath.mpc(log_v), mpmath.mpc(z)
    P = p_over_2pii()
    v = mpmath.exp(log_v)
    term = h_gw_term(0, log_v, z)
    total = term
    norms = [term.norm()]
    for n in range(terms - 1):
        # T_{n+1} / T_n = v ((3P+3n+1)(3P+3n+2)(3P+3n+3))^2 / (P+n+1)^6
        ratio = NilpotentComplex.constant(1, 4)
        for b in (1, 2, 3):
            ratio = ratio * (P * 3 + (3 * n + b))
        term = term * ratio * ratio * v / (P + (n + 1)) ** 6
        total = total + term
        norms.append(term.norm())
    tail = _tail(norms[-1], norms[-2]) if terms > 1 else float(norms[-1])
    return SeriesResult(SeriesKind.HGW, total, terms, tail)


def _fjrw_degrees(terms: int) -> List[int]:
    return [d for d in range(terms) if d % 3 != 2]


def _sector_of(d: int) -> int:
    return (d + 1) % 3


def _sector_tail(norms: Dict[int, List[mpmath.mpf]]) -> float:
    tail = 0.0
    for values in norms.values():
        if len(values) >= 2:
            tail = max(tail, _tail(values[-1], values[-2]))
        elif values:
            tail = max(tail, float(values[-1]))
    return tail


def i_fjrw_coefficient(d: int, z: Any = 1) -> NilpotentComplex:
    """
    Product-formula coefficient of u^{H/z + d + 1} in I_FJRW:
    z 3^{-6 floor(d/3)} prod_{b <= d, b = d+1 mod 3} (H + bz)^6 / prod_{b <= d} (H + bz)^2.
    """
    if d % 3 == 2:
        raise ValueError("I_FJRW has no summand for d = 2 mod 3")
    z = mpmath.mpc(z)
    H = NilpotentComplex.p(2)
    num = NilpotentComplex.constant(1, 2)
    den = NilpotentComplex.constant(1, 2)
    for b in range(1, d + 1):
        factor = H + b * z
        den = den * factor * factor
        if b % 3 == (d + 1) % 3:
            num = num * factor ** 6
    scale = mpmath.mpf(3) ** (-6 * (d // 3))
    return num / den * (z * scale)


def i_fjrw(log_u: Any, z: Any = 1, terms: int = 60) -> SeriesResult:
    _check_fjrw_domain(log_u)
    log_u, z = mpmath.mpc(log_u), mpmath.mpc(z)
    H = NilpotentComplex.p(2)
    sums = {1: NilpotentComplex.constant(0, 2), 2: NilpotentComplex.constant(0, 2)}
    norms: Dict[int, List[mpmath.mpf]] = {1: [], 2: []}
    for d in _fjrw_degrees(terms):
        term = ((H / z + (d + 1)) * log_u).exp() * i_fjrw_coefficient(d, z)
        k = _sector_of(d)
        sums[k] = sums[k] + term
        norms[k].append(term.norm())
    value = FjrwValue(sums[1], sums[2])
    return SeriesResult(SeriesKind.IFJRW, value, terms, _sector_tail(norms))


def g_fjrw_term(d: int, log_u: Any, z: Any = 1) -> NilpotentComplex:
    """The d-th Gamma-function summand g_0 + g_1 H of h_FJRW before (2 pi i) scaling."""
    if d % 3 == 2:
        raise ValueError("h_FJRW has no summand for d = 2 mod 3")
    H = NilpotentComplex.p(2)
    third = mpmath.mpf(1) / 3
    c = third if d % 3 == 0 else 2 * third
    num = gamma_nilpotent(H * third + (d * third + third))
    den_a = rgamma_nilpotent(H * third + c)
    den_b = rgamma_nilpotent(H * (-third) + (1 - c))
    den_c = rgamma_nilpotent(H + (d + 1))
    power = ((H + (d + 1)) * mpmath.mpc(log_u)).exp()
    return power * (num * den_a * den_b) ** 6 * den_c * den_c * mpmath.mpc(z)


def h_fjrw_scale(g: NilpotentComplex) -> NilpotentComplex:
    """(g_0, g_1) -> ((2 pi i)^2 g_0, (2 pi i) g_1)."""
    w = two_pi_i()
    return NilpotentComplex.of(g[0] * w * w, g[1] * w)


def h_fjrw(log_u: Any, z: Any = 1, terms: int = 60) -> SeriesResult:
    _check_fjrw_domain(log_u)
    sums = {1: NilpotentComplex.constant(0, 2), 2: NilpotentComplex.constant(0, 2)}
    norms: Dict[int, List[mpmath.mpf]] = {1: [], 2: []}
    for d in _fjrw_degrees(terms):
        term = h_fjrw_scale(g_fjrw_term(d, log_u, z))
        k = _sector_of(d)
        sums[k] = sums[k] + term
        norms[k].append(term.norm())
    value = FjrwValue(sums[1], sums[2])
    return SeriesResult(SeriesKind.HFJRW, value, terms, _sector_tail(norms))


def eval_series(which: Union[SeriesKind, str], log_arg: Any, z: Any = 1, terms: int = 60) -> SeriesResult:
    """Evaluate one of the four series at log v (GW) or log u (FJRW)."""
    kind = SeriesKind(which) if not isinstance(which, SeriesKind) else which
    if terms < 1:
        raise ValueError(f"terms must be at least 1, got {terms}")
    dispatch = {
        SeriesKind.IGW: i_gw,
        SeriesKind.HGW: h_gw,
        SeriesKind.IFJRW: i_fjrw,
        SeriesKind.HFJRW: h_fjrw,
    }
    return dispatch[kind](log_arg, z, terms)


def gamma_class_gw() -> NilpotentComplex:
    """Gamma(1+p)^6 / Gamma(1+3p)^2."""
    p = NilpotentComplex.p()
    g1 = gamma_nilpotent(p + 1)
    return g1 ** 6 * rgamma_nilpotent(p * 3 + 1) ** 2


def gamma_class_fjrw() -> FjrwValue:
    """Gamma(2/3 - H/3)^6 Gamma(1+H)^2 on sector 1, Gamma(1/3 - H/3)^6 Gamma(1+H)^2 on sector 2."""
    H = NilpotentComplex.p(2)
    third = mpmath.mpf(1) / 3
    common = gamma_nilpotent(H + 1) ** 2
    s1 = gamma_nilpotent(H * (-third) + 2 * third) ** 6 * common
    s2 = gamma_nilpotent(H * (-third) + third) ** 6 * common
    return FjrwValue(s1, s2)


def deg0_operator_gw(value: NilpotentComplex) -> NilpotentComplex:
    """(2 pi i)^{deg_0/2} on the p^j basis."""
    w = two_pi_i()
    return NilpotentComplex(tuple(c * w ** (GwClass.DEG0[j] // 2) for j, c in enumerate(value.coeffs)))


def deg0_operator_fjrw(value: FjrwValue) -> FjrwValue:
    w = two_pi_i()
    c = value.components()
    scaled = [c[j] * w ** (FjrwClass.DEG0[j] // 2) for j in range(4)]
    return FjrwValue(NilpotentComplex.of(scaled[0], scaled[1]), NilpotentComplex.of(scaled[2], scaled[3]))


def i_from_h(which: Union[SeriesKind, str], h_value: SeriesValue) -> SeriesValue:
    """I = Gamma * (2 pi i)^{deg_0/2} h at z = 1."""
    kind = SeriesKind(which) if not isinstance(which, SeriesKind) else which
    if kind in (SeriesKind.HGW, SeriesKind.IGW):
        return gamma_class_gw() * deg0_operator_gw(h_value)
    return gamma_class_fjrw() * deg0_operator_fjrw(h_value)
