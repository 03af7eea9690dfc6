# app/mf/potential.py
from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

from app.mf.poly import BigradedPoly


class PotentialError(Exception):
    """Raised when a potential file is malformed or violates W_j = sum x_i f_ji"""
    pass


@dataclass(frozen=True)
class Potential:
    W1: BigradedPoly
    W2: BigradedPoly
    f: Tuple[Tuple[BigradedPoly, ...], Tuple[BigradedPoly, ...]]
    name: str = "custom"

    def __post_init__(self):
        self.validate()

    def validate(self):
        if len(self.f) != 2 or any(len(row) != 6 for row in self.f):
            raise PotentialError("f must be a 2x6 array of polynomials")
        for label, w in (("W1", self.W1), ("W2", self.W2)):
            if w.is_zero() or w.weights() != (3, 0):
                raise PotentialError(f"{label} must be a nonzero cubic in x (G-weight 3, R-weight 0)")
        for j, row in enumerate(self.f, start=1):
            for i, fji in enumerate(row, start=1):
                if not fji.is_zero() and fji.weights() != (2, 0):
                    raise PotentialError(f"f{j}{i} must be a quadric in x (G-weight 2, R-weight 0)")
        for j, (w, row) in enumerate(((self.W1, self.f[0]), (self.W2, self.f[1])), start=1):
            total = BigradedPoly.zero()
            for i, fji in enumerate(row, start=1):
                total = total + BigradedPoly.x(i) * fji
            if total != w:
                raise PotentialError(f"Decomposition W{j} = sum_i x_i f{j}i does not hold")

    def cubic(self, j: int) -> BigradedPoly:
        return self.W1 if j == 1 else self.W2

    @property
    def W(self) -> BigradedPoly:
        """p1*W1 + p2*W2."""
        return BigradedPoly.p(1) * self.W1 + BigradedPoly.p(2) * self.W2

    def s_pf(self) -> List[BigradedPoly]:
        """Cosection (p1 f_1i + p2 f_2i)_i."""
        p1, p2 = BigradedPoly.p(1), BigradedPoly.p(2)
        return [p1 * self.f[0][i] + p2 * self.f[1][i] for i in range(6)]

    def to_json(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "W1": self.W1.to_json(),
            "W2": self.W2.to_json(),
            "f": [[fji.to_json() for fji in row] for row in self.f],
        }

    def fingerprint(self) -> str:
        payload = json.dumps(
            {k: v for k, v in self.to_json().items() if k != "name"}, sort_keys=True
        )
        return hashlib.md5(payload.encode()).hexdigest()

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "Potential":
        try:
            W1 = BigradedPoly.from_json(data["W1"])
            W2 = BigradedPoly.from_json(data["W2"])
            rows = data["f"]
            f = tuple(tuple(BigradedPoly.from_json(entry) for entry in row) for row in rows)
        except (KeyError, TypeError, ValueError) as e:
            raise PotentialError(f"Malformed potential: {e}")
        return cls(W1=W1, W2=W2, f=f, name=str(data.get("name", "custom")))


def fermat_split() -> Potential:
    """W1 = x1^3 + x2^3 + x3^3, W2 = x4^3 + x5^3 + x6^3 with f_ji = x_i^2 on its block."""
    zero = BigradedPoly.zero()
    f1 = tuple(BigradedPoly.x(i, 2) if i <= 3 else zero for i in range(1, 7))
    f2 = tuple(BigradedPoly.x(i, 2) if i >= 4 else zero for i in range(1, 7))
    W1 = sum((BigradedPoly.x(i, 3) for i in (1, 2, 3)), BigradedPoly.zero())
    W2 = sum((BigradedPoly.x(i, 3) for i in (4, 5, 6)), BigradedPoly.zero())
    return Potential(W1=W1, W2=W2, f=(f1, f2), name="fermat_split")


def load_potential(path: str) -> Potential:
    if not os.path.exists(path):
        raise PotentialError(f"Potential file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as e:
        raise PotentialError(f"Potential file {path} is not valid JSON: {e}")
    return Potential.from_json(data)
