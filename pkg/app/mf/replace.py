# app/mf/replace.py
"""
Replacing a block A of summands by A(3)[-2]^2 + A(6)[-3].

Write Q for the summands outside A, D_QA for the arrows A -> Q, D_QQ for
the arrows inside Q and P_AQ = p1*delta1 + p2*delta2 for the arrows Q -> A.
A is replaceable when there are no arrows inside A, every arrow Q -> A
lies in (p1, p2), delta_j * D_QA = W_j * Id and delta1 * D_QQ = p2 * mu
with delta2 * D_QQ = -p1 * mu.

When the block is p-linear (delta pure in x, D_QA = d + p1 e1 + p2 e2 with
d, e1, e2 pure in x) the identity delta_j * D_QA = W_j * Id splits by
p-degree into delta_j * d = W_j, delta_j * e1 = 0 and delta_j * e2 = 0,
so delta2 * e1 = delta1 * e2 = 0 holds as well; that pair is checked
directly as condition 2. Deeper windows produce arrows of p-degree 2, where
only the identity itself is checked. The new differential is

    A(6)[-3] -> A(3)[-2]^2 : (p2, -p1)^T
    A(3)[-2]^2 -> A(6)[-3] : (W2, -W1)
    A(3)[-2]^2 -> Q        : -D_QA (p1, p2)
    Q -> A(3)[-2]^2        : -(delta1, delta2)^T
    Q -> A(6)[-3]          : mu
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from app.mf.factorization import (
    MatrixFactorization,
    MfMorphism,
    Summand,
    cone,
    ensure_valid,
    shift_one,
)
from app.mf.matrix import SparseMatrix
from app.mf.poly import BigradedPoly


class NotReplaceableError(Exception):
    """Raised when a block fails one of the replaceability conditions"""

    def __init__(self, condition: str, detail: str):
        super().__init__(f"{condition}: {detail}")
        self.condition = condition
        self.detail = detail


@dataclass(frozen=True)
class ReplaceableBlock:
    a_idx: Tuple[int, ...]
    q_idx: Tuple[int, ...]
    delta1: SparseMatrix  # |A| x |Q|
    delta2: SparseMatrix  # |A| x |Q|
    d_qa: SparseMatrix    # |Q| x |A|
    d_qq: SparseMatrix    # |Q| x |Q|
    mu: SparseMatrix      # |A| x |Q|

    @property
    def p_linear(self) -> bool:
        """True when every arrow adjacent to A has p-degree at most 1."""
        return _is_p_linear(self.delta1, self.delta2, self.d_qa)


def _is_p_linear(delta1: SparseMatrix, delta2: SparseMatrix, d_qa: SparseMatrix) -> bool:
    pure_x = all(v.p_degrees() == {0} for mat in (delta1, delta2) for _, v in mat.items())
    return pure_x and all(max(v.p_degrees()) <= 1 for _, v in d_qa.items())


def p_parts(mat: SparseMatrix) -> Tuple[SparseMatrix, SparseMatrix]:
    """(e1, e2) with the p-divisible part of every entry equal to p1*e1 + p2*e2."""
    e1: Dict[Tuple[int, int], BigradedPoly] = {}
    e2: Dict[Tuple[int, int], BigradedPoly] = {}
    for key, v in mat.items():
        rest = v - v.p_degree_part(0)
        if rest:
            a, b = rest.split_by_p()
            if a:
                e1[key] = a
            if b:
                e2[key] = b
    return SparseMatrix(mat.rows, mat.cols, e1), SparseMatrix(mat.rows, mat.cols, e2)


def find_replaceable(M: MatrixFactorization, A: Sequence[int]) -> ReplaceableBlock:
    a_idx = tuple(A)
    if not a_idx:
        raise ValueError("The block to replace must be nonempty")
    if len(set(a_idx)) != len(a_idx) or any(not 0 <= a < M.size for a in a_idx):
        raise ValueError(f"Bad summand indices {a_idx} for a factorization of size {M.size}")
    a_set = set(a_idx)
    q_idx = tuple(i for i in range(M.size) if i not in a_set)
    d = M.differential

    if M.differential.submatrix(a_idx, a_idx).nnz():
        raise NotReplaceableError("arrows inside A", "the block has nonzero self-arrows")

    p_aq = d.submatrix(a_idx, q_idx)
    d1: Dict[Tuple[int, int], BigradedPoly] = {}
    d2: Dict[Tuple[int, int], BigradedPoly] = {}
    for (i, j), v in p_aq.items():
        try:
            d1[(i, j)], d2[(i, j)] = v.split_by_p()
        except ValueError as e:
            raise NotReplaceableError(
                "condition 1", f"arrow {M.summands[q_idx[j]]} -> {M.summands[a_idx[i]]} is not in (p1, p2): {e}"
            )
    m, nq = len(a_idx), len(q_idx)
    delta1 = SparseMatrix(m, nq, d1)
    delta2 = SparseMatrix(m, nq, d2)
    d_qa = d.submatrix(q_idx, a_idx)
    d_qq = d.submatrix(q_idx, q_idx)

    if _is_p_linear(delta1, delta2, d_qa):
        e1, e2 = p_parts(d_qa)
        if (delta2 @ e1).nnz() or (delta1 @ e2).nnz():
            raise NotReplaceableError("condition 2", "delta2_AB * delta1_BA or delta1_AB * delta2_BA is nonzero")

    P = M.potential
    for j, delta in ((1, delta1), (2, delta2)):
        expected = SparseMatrix.scalar_identity(m, P.cubic(j))
        if (delta @ d_qa).differences(expected):
            raise NotReplaceableError("factorization", f"delta{j} * D_QA != W{j} * Id")

    x1 = delta1 @ d_qq
    mu_entries = {}
    for key, v in x1.items():
        try:
            mu_entries[key] = v.divide_by_p(2)
        except ValueError:
            raise NotReplaceableError("correction", "delta1 * D_QQ is not divisible by p2")
    mu = SparseMatrix(m, nq, mu_entries)
    if (delta2 @ d_qq).differences(mu.scale(BigradedPoly.p(1) * -1)):
        raise NotReplaceableError("correction", "delta2 * D_QQ != -p1 * mu")

    return ReplaceableBlock(
        a_idx=a_idx, q_idx=q_idx, delta1=delta1, delta2=delta2, d_qa=d_qa, d_qq=d_qq, mu=mu
    )


@dataclass(frozen=True)
class ReplacementLayout:
    """Positions of Q, A(3)[-2] (two copies) and A(6)[-3] in M minus A"""
    nq: int
    m: int

    def q(self, j: int) -> int:
        return j

    def a_prime(self, copy: int, a: int) -> int:
        return self.nq + (copy - 1) * self.m + a

    def a_double(self, a: int) -> int:
        return self.nq + 2 * self.m + a


def replace_summand(
    M: MatrixFactorization,
    A: Sequence[int],
    block: Optional[ReplaceableBlock] = None,
    validate: bool = True,
) -> MatrixFactorization:
    block = block or find_replaceable(M, A)
    P = M.potential
    p1, p2 = BigradedPoly.p(1), BigradedPoly.p(2)
    m, nq = len(block.a_idx), len(block.q_idx)
    lay = ReplacementLayout(nq=nq, m=m)

    a_summands = [M.summands[i] for i in block.a_idx]
    summands: List[Summand] = [M.summands[i] for i in block.q_idx]
    summands += [s.moved(3, -2) for s in a_summands]
    summands += [s.moved(3, -2) for s in a_summands]
    summands += [s.moved(6, -3) for s in a_summands]

    entries: Dict[Tuple[int, int], BigradedPoly] = {}
    for (i, j), v in block.d_qq.items():
        entries[(lay.q(i), lay.q(j))] = v
    for a in range(m):
        entries[(lay.a_prime(1, a), lay.a_double(a))] = p2
        entries[(lay.a_prime(2, a), lay.a_double(a))] = -p1
        entries[(lay.a_double(a), lay.a_prime(1, a))] = P.W2
        entries[(lay.a_double(a), lay.a_prime(2, a))] = -P.W1
    for (q, a), v in block.d_qa.items():
        entries[(lay.q(q), lay.a_prime(1, a))] = -(v * p1)
        entries[(lay.q(q), lay.a_prime(2, a))] = -(v * p2)
    for (a, q), v in block.delta1.items():
        entries[(lay.a_prime(1, a), lay.q(q))] = -v
    for (a, q), v in block.delta2.items():
        entries[(lay.a_prime(2, a), lay.q(q))] = -v
    for (a, q), v in block.mu.items():
        entries[(lay.a_double(a), lay.q(q))] = v

    n = len(summands)
    result = MatrixFactorization(
        summands=tuple(summands), differential=SparseMatrix(n, n, entries), potential=P
    )
    return ensure_valid(result, "after replacement") if validate else result


@dataclass
class HomotopyWitnesses:
    """
    f : M -> T with T = A (x) K_+(6)[-2], the cone C_f, Y = (M minus A)[1]
    and the maps F : C_f -> Y, G : Y -> C_f, H : C_f -> C_f.
    """
    f: MfMorphism
    cone: MatrixFactorization
    target: MatrixFactorization
    F: MfMorphism
    G: MfMorphism
    H: SparseMatrix

    def check(self) -> Dict[str, bool]:
        d = self.cone.differential
        gf_minus_id = (self.G.matrix @ self.F.matrix) - SparseMatrix.identity(self.cone.size)
        homotopy = (self.H @ d) + (d @ self.H)
        return {
            "f_is_morphism": self.f.is_valid(),
            "F_is_morphism": self.F.is_valid(),
            "G_is_morphism": self.G.is_valid(),
            "FG_identity": not (self.F.matrix @ self.G.matrix).differences(
                SparseMatrix.identity(self.target.size)
            ),
            "GF_homotopic_to_identity": not gf_minus_id.differences(homotopy),
        }

    def all_pass(self) -> bool:
        return all(self.check().values())


def homotopy_witnesses(M: MatrixFactorization, A: Sequence[int]) -> HomotopyWitnesses:
    block = find_replaceable(M, A)
    P = M.potential
    p1, p2 = BigradedPoly.p(1), BigradedPoly.p(2)
    one = BigradedPoly.one()
    m, nq, N = len(block.a_idx), len(block.q_idx), M.size

    # T layout: T''(a), T'_1(a), T'_2(a), T0(a)
    def t2(a): return a
    def t1(j, a): return j * m + a
    def t0(a): return 3 * m + a

    a_summands = [M.summands[i] for i in block.a_idx]
    t_summands = (
        [s.moved(6, -2) for s in a_summands]
        + [s.moved(3, -1) for s in a_summands]
        + [s.moved(3, -1) for s in a_summands]
        + list(a_summands)
    )
    dt: Dict[Tuple[int, int], BigradedPoly] = {}
    for a in range(m):
        dt[(t1(1, a), t2(a))] = -p2
        dt[(t1(2, a), t2(a))] = p1
        dt[(t2(a), t1(1, a))] = -P.W2
        dt[(t2(a), t1(2, a))] = P.W1
        dt[(t0(a), t1(1, a))] = p1
        dt[(t0(a), t1(2, a))] = p2
        dt[(t1(1, a), t0(a))] = P.W1
        dt[(t1(2, a), t0(a))] = P.W2
    T = MatrixFactorization(
        summands=tuple(t_summands), differential=SparseMatrix(4 * m, 4 * m, dt), potential=P
    )

    f_entries: Dict[Tuple[int, int], BigradedPoly] = {}
    for a, orig in enumerate(block.a_idx):
        f_entries[(t0(a), orig)] = one
    for (a, q), v in block.delta1.items():
        f_entries[(t1(1, a), block.q_idx[q])] = v
    for (a, q), v in block.delta2.items():
        f_entries[(t1(2, a), block.q_idx[q])] = v
    for (a, q), v in block.mu.items():
        f_entries[(t2(a), block.q_idx[q])] = -v
    f = MfMorphism(source=M, target=T, matrix=SparseMatrix(4 * m, N, f_entries))

    C = cone(f)
    Y = shift_one(replace_summand(M, A, block=block, validate=False))
    lay = ReplacementLayout(nq=nq, m=m)

    F_entries: Dict[Tuple[int, int], BigradedPoly] = {}
    G_entries: Dict[Tuple[int, int], BigradedPoly] = {}
    for j, orig in enumerate(block.q_idx):
        F_entries[(lay.q(j), orig)] = one
        G_entries[(orig, lay.q(j))] = one
    for a, orig in enumerate(block.a_idx):
        F_entries[(lay.a_double(a), N + t2(a))] = one
        G_entries[(N + t2(a), lay.a_double(a))] = one
        for copy, pj in ((1, p1), (2, p2)):
            F_entries[(lay.a_prime(copy, a), N + t1(copy, a))] = one
            G_entries[(N + t1(copy, a), lay.a_prime(copy, a))] = one
            G_entries[(orig, lay.a_prime(copy, a))] = -pj
    for (q, a), v in block.d_qa.items():
        F_entries[(lay.q(q), N + t0(a))] = v

    F = MfMorphism(source=C, target=Y, matrix=SparseMatrix(Y.size, C.size, F_entries))
    G = MfMorphism(source=Y, target=C, matrix=SparseMatrix(C.size, Y.size, G_entries))
    H = SparseMatrix(
        C.size, C.size, {(orig, N + t0(a)): -one for a, orig in enumerate(block.a_idx)}
    )
    return HomotopyWitnesses(f=f, cone=C, target=Y, F=F, G=G, H=H)
