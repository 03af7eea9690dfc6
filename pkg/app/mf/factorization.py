# app/mf/factorization.py
"""
Graded matrix factorizations of W = p1 W1 + p2 W2 on a direct sum of
lines O(k)[l], with the differential stored as a sparse matrix whose
entry (i, j) maps summand j to summand i.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from app.mf.matrix import SparseMatrix
from app.mf.poly import BigradedPoly
from app.mf.potential import Potential


class MfValidationError(Exception):
    """Raised when a constructed object fails weight or d^2 = W checks"""
    pass


@dataclass(frozen=True, order=True)
class Summand:
    """One line O(twist)[shift]"""
    twist: int
    shift: int

    def moved(self, a: int, b: int) -> "Summand":
        return Summand(self.twist + a, self.shift + b)

    def __str__(self) -> str:
        return f"O({self.twist})[{self.shift}]"


@dataclass
class MfDiagnostics:
    weight_failures: List[Tuple[int, int, str]] = field(default_factory=list)
    square_failures: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.weight_failures and not self.square_failures

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ok": self.ok,
            "weight_failures": [list(w) for w in self.weight_failures],
            "square_failures": [list(s) for s in self.square_failures],
        }

    def summary(self) -> str:
        if self.ok:
            return "ok"
        return (
            f"{len(self.weight_failures)} weight failures, "
            f"{len(self.square_failures)} d^2 != W entries"
        )


@dataclass(frozen=True)
class MatrixFactorization:
    summands: Tuple[Summand, ...]
    differential: SparseMatrix
    potential: Potential

    def __post_init__(self):
        n = len(self.summands)
        if self.differential.rows != n or self.differential.cols != n:
            raise ValueError(
                f"Differential is {self.differential.rows}x{self.differential.cols} for {n} summands"
            )

    @property
    def size(self) -> int:
        return len(self.summands)

    def multiset(self) -> Counter:
        return Counter(self.summands)

    def twists(self) -> List[int]:
        return [s.twist for s in self.summands]

    def summary(self) -> Dict[str, Any]:
        counts = sorted(self.multiset().items())
        return {
            "size": self.size,
            "nnz": self.differential.nnz(),
            "summands": [{"twist": s.twist, "shift": s.shift, "mult": m} for s, m in counts],
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            "summands": [[s.twist, s.shift] for s in self.summands],
            "entries": self.differential.to_triples(),
        }


def _entry_weight_failure(
    value: BigradedPoly, target: Summand, source: Summand, r_offset: int
) -> Optional[str]:
    expected = (target.twist - source.twist, target.shift - source.shift + r_offset)
    found = value.weights()
    if found != expected:
        return f"expected weights {expected}, found {found if found else 'mixed'}"
    return None


def check_weights(
    matrix: SparseMatrix,
    targets: Sequence[Summand],
    sources: Sequence[Summand],
    r_offset: int,
) -> List[Tuple[int, int, str]]:
    failures = []
    for (i, j), value in matrix.items():
        reason = _entry_weight_failure(value, targets[i], sources[j], r_offset)
        if reason:
            failures.append((i, j, reason))
    return failures


def validate_mf(M: MatrixFactorization) -> MfDiagnostics:
    """Weights of every entry (R-degree 1) and d^2 = W * Id exactly."""
    diag = MfDiagnostics()
    diag.weight_failures = check_weights(M.differential, M.summands, M.summands, r_offset=1)
    square = M.differential @ M.differential
    expected = SparseMatrix.scalar_identity(M.size, M.potential.W)
    diag.square_failures = square.differences(expected)
    return diag


def ensure_valid(M: MatrixFactorization, context: str = "") -> MatrixFactorization:
    diag = validate_mf(M)
    if not diag.ok:
        raise MfValidationError(f"Invalid matrix factorization{' ' + context if context else ''}: {diag.summary()}")
    return M


def twist_shift(M: MatrixFactorization, a: int, b: int) -> MatrixFactorization:
    """M(a)[b]: summands move by (a, b), the differential is unchanged."""
    return MatrixFactorization(
        summands=tuple(s.moved(a, b) for s in M.summands),
        differential=M.differential,
        potential=M.potential,
    )


def shift_one(M: MatrixFactorization) -> MatrixFactorization:
    """M[1] = (E[1], -d)."""
    return MatrixFactorization(
        summands=tuple(s.moved(0, 1) for s in M.summands),
        differential=-M.differential,
        potential=M.potential,
    )


@dataclass(frozen=True)
class MfMorphism:
    source: MatrixFactorization
    target: MatrixFactorization
    matrix: SparseMatrix

    def __post_init__(self):
        if self.matrix.rows != self.target.size or self.matrix.cols != self.source.size:
            raise ValueError("Morphism matrix shape does not match source/target sizes")

    def weight_failures(self) -> List[Tuple[int, int, str]]:
        return check_weights(self.matrix, self.target.summands, self.source.summands, r_offset=0)

    def commutator_failures(self) -> List[Tuple[int, int]]:
        lhs = self.target.differential @ self.matrix
        rhs = self.matrix @ self.source.differential
        return lhs.differences(rhs)

    def is_valid(self) -> bool:
        return not self.weight_failures() and not self.commutator_failures()


def cone(f: MfMorphism) -> MatrixFactorization:
    """cone(f: E1 -> E2) = (E1[1] + E2, [[-d1, 0], [f, d2]])."""
    if f.commutator_failures():
        raise MfValidationError("cone needs a morphism that intertwines the differentials")
    if f.weight_failures():
        raise MfValidationError("cone needs a morphism with correct entry weights")
    n1 = f.source.size
    n = n1 + f.target.size
    entries: Dict[Tuple[int, int], BigradedPoly] = {}
    for (i, j), v in f.source.differential.items():
        entries[(i, j)] = -v
    for (i, j), v in f.target.differential.items():
        entries[(n1 + i, n1 + j)] = v
    for (i, j), v in f.matrix.items():
        entries[(n1 + i, j)] = v
    summands = tuple(s.moved(0, 1) for s in f.source.summands) + f.target.summands
    return MatrixFactorization(summands=summands, differential=SparseMatrix(n, n, entries), potential=f.source.potential)


def identity_morphism(M: MatrixFactorization) -> MfMorphism:
    return MfMorphism(source=M, target=M, matrix=SparseMatrix.identity(M.size))


def empty_factorization(potential: Potential) -> MatrixFactorization:
    return MatrixFactorization(summands=(), differential=SparseMatrix(0, 0), potential=potential)
