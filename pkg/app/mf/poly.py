# app/mf/poly.py
"""
Sparse polynomials in x1..x6, p1, p2 with rational coefficients.

A monomial is an 8-tuple of exponents (a1..a6, b1, b2). Weights:
    G-weight = sum(a) - 3*sum(b)
    R-weight = 2*sum(b)
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, Iterable, Iterator, List, Optional, Tuple, Union

from app.arith.rational import format_rational, parse_rational

Monomial = Tuple[int, int, int, int, int, int, int, int]
NUM_X = 6
NUM_VARS = 8
P1 = 6
P2 = 7

_ZERO_MONO: Monomial = (0,) * NUM_VARS


def g_weight(mono: Monomial) -> int:
    return sum(mono[:NUM_X]) - 3 * (mono[P1] + mono[P2])


def r_weight(mono: Monomial) -> int:
    return 2 * (mono[P1] + mono[P2])


def p_degree(mono: Monomial) -> int:
    return mono[P1] + mono[P2]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


class BigradedPoly:
    """Immutable sparse polynomial; zero coefficients are never stored"""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Dict[Monomial, Any]] = None):
        clean: Dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != NUM_VARS or any(e < 0 for e in mono):
                raise ValueError(f"Bad monomial exponents: {mono}")
            coeff = Fraction(coeff)
            if coeff != 0:
                clean[mono] = clean.get(mono, Fraction(0)) + coeff
                if clean[mono] == 0:
                    del clean[mono]
        self._terms = clean

    # Constructors

    @classmethod
    def zero(cls) -> "BigradedPoly":
        return cls()

    @classmethod
    def const(cls, c: Any) -> "BigradedPoly":
        return cls({_ZERO_MONO: c})

    @classmethod
    def one(cls) -> "BigradedPoly":
        return cls.const(1)

    @classmethod
    def var(cls, index: int, power: int = 1) -> "BigradedPoly":
        mono = [0] * NUM_VARS
        mono[index] = power
        return cls({tuple(mono): 1})

    @classmethod
    def x(cls, i: int, power: int = 1) -> "BigradedPoly":
        """x_i for i in 1..6."""
        if not 1 <= i <= NUM_X:
            raise ValueError(f"x index must be in 1..6, got {i}")
        return cls.var(i - 1, power)

    @classmethod
    def p(cls, j: int, power: int = 1) -> "BigradedPoly":
        """p_j for j in 1..2."""
        if j not in (1, 2):
            raise ValueError(f"p index must be 1 or 2, got {j}")
        return cls.var(P1 + j - 1, power)

    # Access

    def terms(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    # Arithmetic

    def __add__(self, other: Any) -> "BigradedPoly":
        other = _lift(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for mono, c in other._terms.items():
            out[mono] = out.get(mono, Fraction(0)) + c
        return BigradedPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "BigradedPoly":
        return BigradedPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Any) -> "BigradedPoly":
        other = _lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "BigradedPoly":
        return (-self) + other

    def __mul__(self, other: Any) -> "BigradedPoly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return BigradedPoly({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, BigradedPoly):
            return NotImplemented
        out: Dict[Monomial, Fraction] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                mono = _mono_mul(ma, mb)
                out[mono] = out.get(mono, Fraction(0)) + ca * cb
        return BigradedPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BigradedPoly":
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = BigradedPoly.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other: Any) -> bool:
        other = _lift(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # Weights

    def weights(self) -> Optional[Tuple[int, int]]:
        """(G, R) if bihomogeneous, None for zero or mixed polynomials."""
        found = {(g_weight(m), r_weight(m)) for m in self._terms}
        if len(found) == 1:
            return found.pop()
        return None

    def is_bihomogeneous(self) -> bool:
        return self.is_zero() or self.weights() is not None

    def p_degrees(self) -> set:
        return {p_degree(m) for m in self._terms}

    def p_degree_part(self, degree: int) -> "BigradedPoly":
        return BigradedPoly({m: c for m, c in self._terms.items() if p_degree(m) == degree})

    def has_pure_x_terms(self) -> bool:
        return any(p_degree(m) == 0 for m in self._terms)

    def divide_by_p(self, j: int) -> "BigradedPoly":
        """Exact division by p_j; raises ValueError if some term lacks p_j."""
        idx = P1 + j - 1
        out = {}
        for mono, c in self._terms.items():
            if mono[idx] == 0:
                raise ValueError(f"Term {mono} is not divisible by p{j}")
            m = list(mono)
            m[idx] -= 1
            out[tuple(m)] = c
        return BigradedPoly(out)

    def split_by_p(self) -> Tuple["BigradedPoly", "BigradedPoly"]:
        """
        For a polynomial in the ideal (p1, p2), the pair (d1, d2) with
        self = p1*d1 + p2*d2: terms containing p1 go to d1, the rest to d2.
        """
        with_p1 = {}
        rest = {}
        for mono, c in self._terms.items():
            if mono[P1] > 0:
                with_p1[mono] = c
            elif mono[P2] > 0:
                rest[mono] = c
            else:
                raise ValueError(f"Term {mono} is not in the ideal (p1, p2)")
        return BigradedPoly(with_p1).divide_by_p(1), BigradedPoly(rest).divide_by_p(2)

    # Serialization

    def to_json(self) -> List[Dict[str, Any]]:
        return [
            {"exps": list(mono), "coeff": format_rational(c)}
            for mono, c in sorted(self._terms.items())
        ]

    @classmethod
    def from_json(cls, data: Iterable[Dict[str, Any]]) -> "BigradedPoly":
        terms: Dict[Monomial, Fraction] = {}
        for item in data:
            try:
                exps = tuple(int(e) for e in item["exps"])
                coeff = parse_rational(item["coeff"])
            except (KeyError, TypeError) as e:
                raise ValueError(f"Malformed monomial {item!r}: {e}")
            if len(exps) != NUM_VARS:
                raise ValueError(f"Monomial needs {NUM_VARS} exponents, got {len(exps)}")
            terms[exps] = terms.get(exps, Fraction(0)) + coeff
        return cls(terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        names = [f"x{i}" for i in range(1, 7)] + ["p1", "p2"]
        parts = []
        for mono, c in sorted(self._terms.items(), reverse=True):
            factors = []
            for name, e in zip(names, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono_str = "*".join(factors)
            if not mono_str:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(mono_str)
            elif c == -1:
                parts.append(f"-{mono_str}")
            else:
                parts.append(f"{format_rational(c)}*{mono_str}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"BigradedPoly({self})"


def _lift(value: Union[BigradedPoly, int, Fraction]) -> Optional[BigradedPoly]:
    if isinstance(value, BigradedPoly):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return BigradedPoly.const(value)
    return None
