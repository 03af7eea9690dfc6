# app/mf/koszul.py
"""
Koszul matrix factorizations

    K_- : wedge^* O(1)[-1]^6,  d = s_x ^ (-) + iota_{s_pf}(-)
    K_+ : wedge^* O(-3)[1]^2,  d = s_p ^ (-) + iota_{s_W}(-)

Basis of the exterior algebra: subsets ordered by size, then
lexicographically; e_S ^ e_i and iota use the position-parity signs.
"""
from __future__ import annotations

from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from app.mf.factorization import MatrixFactorization, Summand, ensure_valid
from app.mf.matrix import SparseMatrix
from app.mf.poly import BigradedPoly
from app.mf.potential import Potential


def exterior_basis(rank: int) -> List[Tuple[int, ...]]:
    basis: List[Tuple[int, ...]] = []
    for size in range(rank + 1):
        basis.extend(combinations(range(rank), size))
    return basis


def koszul_differential(
    rank: int, section: Sequence[BigradedPoly], cosection: Sequence[BigradedPoly]
) -> SparseMatrix:
    """Matrix of s ^ (-) + iota_t (-) on the exterior algebra of a rank-n bundle."""
    basis = exterior_basis(rank)
    index = {S: n for n, S in enumerate(basis)}
    entries: Dict[Tuple[int, int], BigradedPoly] = {}
    for col, S in enumerate(basis):
        # wedge: e_i ^ e_S, moving e_i past the smaller elements of S
        for i in range(rank):
            if i in S or section[i].is_zero():
                continue
            sign = -1 if sum(1 for s in S if s < i) % 2 else 1
            target = tuple(sorted(S + (i,)))
            entries[(index[target], col)] = section[i] * sign
        # contraction: iota_t e_S = sum_pos (-1)^pos t_{S[pos]} e_{S minus S[pos]}
        for pos, s in enumerate(S):
            if cosection[s].is_zero():
                continue
            sign = -1 if pos % 2 else 1
            target = S[:pos] + S[pos + 1:]
            key = (index[target], col)
            value = cosection[s] * sign
            entries[key] = entries[key] + value if key in entries else value
    n = len(basis)
    return SparseMatrix(n, n, entries)


def build_koszul_minus(P: Potential, validate: bool = True) -> MatrixFactorization:
    basis = exterior_basis(6)
    summands = tuple(Summand(len(S), -len(S)) for S in basis)
    s_x = [BigradedPoly.x(i) for i in range(1, 7)]
    d = koszul_differential(6, s_x, P.s_pf())
    M = MatrixFactorization(summands=summands, differential=d, potential=P)
    return ensure_valid(M, "K_-") if validate else M


def build_koszul_plus(P: Potential, validate: bool = True) -> MatrixFactorization:
    basis = exterior_basis(2)
    summands = tuple(Summand(-3 * len(S), len(S)) for S in basis)
    s_p = [BigradedPoly.p(1), BigradedPoly.p(2)]
    s_W = [P.W1, P.W2]
    d = koszul_differential(2, s_p, s_W)
    M = MatrixFactorization(summands=summands, differential=d, potential=P)
    return ensure_valid(M, "K_+") if validate else M
