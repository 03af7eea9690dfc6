import json
from collections import Counter
from fractions import Fraction
from math import comb
from pathlib import Path

import pytest

from app.mf.factorization import (
    MatrixFactorization,
    MfValidationError,
    Summand,
    cone,
    ensure_valid,
    identity_morphism,
    shift_one,
    twist_shift,
    validate_mf,
)
from app.mf.koszul import build_koszul_minus, build_koszul_plus, exterior_basis
from app.mf.matrix import SparseMatrix
from app.mf.poly import BigradedPoly
from app.mf.potential import Potential, PotentialError, fermat_split, load_potential
from app.mf.replace import (
    NotReplaceableError,
    find_replaceable,
    homotopy_witnesses,
    p_parts,
    replace_summand,
)
from app.mf.window import window_push

DATA_DIR = Path(__file__).resolve().parents[1] / "data" / "potentials"


def x(i, power=1):
    return BigradedPoly.x(i, power)


def p(j, power=1):
    return BigradedPoly.p(j, power)


def test_poly_weights():
    assert x(1).weights() == (1, 0)
    assert p(2).weights() == (-3, 2)
    assert (p(1) * x(1, 3)).weights() == (0, 2)
    assert (x(1) + x(2, 2)).weights() is None
    assert BigradedPoly.zero().weights() is None
    assert BigradedPoly.zero().is_bihomogeneous()


def test_poly_arithmetic_cancels():
    f = x(1) * x(2) + Fraction(1, 2) * x(3)
    assert (f - f).is_zero()
    assert (x(1) + x(2)) ** 2 == x(1, 2) + x(1) * x(2) * 2 + x(2, 2)


def test_poly_rejects_bad_monomials():
    with pytest.raises(ValueError):
        BigradedPoly({(0,) * 7: 1})
    with pytest.raises(ValueError):
        BigradedPoly({(-1,) + (0,) * 7: 1})
    with pytest.raises(ValueError):
        BigradedPoly.x(7)
    with pytest.raises(ValueError):
        BigradedPoly.p(3)


def test_split_and_divide_by_p():
    f = p(1) * x(1) + p(2) * x(2, 2) + p(1) * p(2)
    d1, d2 = f.split_by_p()
    assert p(1) * d1 + p(2) * d2 == f
    with pytest.raises(ValueError):
        (x(1) + p(1)).split_by_p()
    with pytest.raises(ValueError):
        (x(1) * p(1)).divide_by_p(2)


def test_poly_json_form():
    f = x(1, 3) * Fraction(-2, 3) + p(2)
    data = f.to_json()
    assert {"exps": [3, 0, 0, 0, 0, 0, 0, 0], "coeff": "-2/3"} in data
    assert BigradedPoly.from_json(data) == f
    with pytest.raises(ValueError):
        BigradedPoly.from_json([{"exps": [1, 0], "coeff": "1"}])


def test_sparse_matrix_products():
    a = SparseMatrix(2, 2, {(0, 1): x(1), (1, 0): x(2)})
    assert SparseMatrix.identity(2) @ a == a
    assert (a @ a) == SparseMatrix.scalar_identity(2, x(1) * x(2))
    assert (a - a).nnz() == 0
    assert a.differences(SparseMatrix.zeros(2, 2)) == [(0, 1), (1, 0)]
    with pytest.raises(IndexError):
        SparseMatrix(1, 1, {(1, 0): x(1)})


def test_fermat_potential(fermat):
    assert fermat.W1 == x(1, 3) + x(2, 3) + x(3, 3)
    assert fermat.W.weights() == (0, 2)
    assert all(s.weights() == (-1, 2) for s in fermat.s_pf())


def test_potential_decomposition_is_checked(fermat):
    rows = (fermat.f[0], fermat.f[1][:5] + (x(1, 2),))
    with pytest.raises(PotentialError):
        Potential(W1=fermat.W1, W2=fermat.W2, f=rows)


def test_potential_must_be_cubic(fermat):
    with pytest.raises(PotentialError):
        Potential(W1=x(1, 2), W2=fermat.W2, f=fermat.f)


def test_load_potential_file_matches_builtin(fermat):
    loaded = load_potential(str(DATA_DIR / "fermat_split.json"))
    assert loaded.fingerprint() == fermat.fingerprint()
    assert loaded.name == "fermat_split"


def test_load_potential_errors(tmp_path):
    with pytest.raises(PotentialError):
        load_potential(str(tmp_path / "missing.json"))
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(PotentialError):
        load_potential(str(broken))
    incomplete = tmp_path / "incomplete.json"
    incomplete.write_text(json.dumps({"W1": []}))
    with pytest.raises(PotentialError):
        load_potential(str(incomplete))


def test_koszul_minus_shape(fermat):
    K = build_koszul_minus(fermat)
    assert K.size == 64
    counts = K.multiset()
    for j in range(7):
        assert counts[Summand(j, -j)] == comb(6, j)
    assert validate_mf(K).ok


def test_koszul_plus_shape(fermat):
    K = build_koszul_plus(fermat)
    assert K.multiset() == Counter({Summand(0, 0): 1, Summand(-3, 1): 2, Summand(-6, 2): 1})
    assert validate_mf(K).ok


def test_exterior_basis_order():
    basis = exterior_basis(3)
    assert basis[0] == ()
    assert basis[1:4] == [(0,), (1,), (2,)]
    assert basis[-1] == (0, 1, 2)


def test_twist_and_shift_keep_factorizations_valid(fermat):
    K = build_koszul_plus(fermat)
    moved = twist_shift(K, 6, -2)
    assert moved.summands[0] == Summand(6, -2)
    assert validate_mf(moved).ok
    shifted = shift_one(K)
    assert shifted.summands[0] == Summand(0, 1)
    assert validate_mf(shifted).ok


def test_broken_differential_is_reported(fermat):
    K = build_koszul_plus(fermat)
    broken = type(K)(summands=K.summands, differential=K.differential.scale(BigradedPoly.const(2)), potential=fermat)
    diag = validate_mf(broken)
    assert not diag.ok
    assert diag.square_failures
    with pytest.raises(MfValidationError):
        ensure_valid(broken, "test")


def test_cone_of_identity(fermat):
    K = build_koszul_plus(fermat)
    C = cone(identity_morphism(K))
    assert C.size == 2 * K.size
    assert validate_mf(C).ok


def _index(M, summand):
    return [i for i, s in enumerate(M.summands) if s == summand]


def test_replace_lowest_summand_of_koszul_minus(fermat):
    K = build_koszul_minus(fermat)
    A = _index(K, Summand(0, 0))
    block = find_replaceable(K, A)
    assert block.p_linear
    R = replace_summand(K, A, block=block)
    expected = K.multiset()
    expected[Summand(0, 0)] -= 1
    expected[Summand(3, -2)] += 2
    expected[Summand(6, -3)] += 1
    assert R.multiset() == +expected
    assert validate_mf(R).ok


def test_block_with_x_arrows_is_not_replaceable(fermat):
    K = build_koszul_minus(fermat)
    with pytest.raises(NotReplaceableError) as excinfo:
        find_replaceable(K, _index(K, Summand(1, -1)))
    assert excinfo.value.condition == "condition 1"


def test_replace_rejects_bad_indices(fermat):
    K = build_koszul_minus(fermat)
    with pytest.raises(ValueError):
        find_replaceable(K, [])
    with pytest.raises(ValueError):
        find_replaceable(K, [0, 0])
    with pytest.raises(ValueError):
        find_replaceable(K, [K.size])


def test_homotopy_witnesses_for_the_first_replacement(fermat):
    K = build_koszul_minus(fermat)
    witnesses = homotopy_witnesses(K, _index(K, Summand(0, 0)))
    checks = witnesses.check()
    assert checks == {key: True for key in checks}
    assert witnesses.all_pass()


def test_homotopy_witnesses_for_the_second_replacement(fermat):
    first, _ = window_push(build_koszul_minus(fermat), 1)
    witnesses = homotopy_witnesses(first, _index(first, Summand(1, -1)))
    assert witnesses.all_pass(), witnesses.check()


def test_p_parts_splits_off_the_x_part():
    m = SparseMatrix(1, 2, {(0, 0): x(1, 2) + p(1) * x(2), (0, 1): p(2) * x(3)})
    e1, e2 = p_parts(m)
    assert e1.get(0, 0) == x(2)
    assert e1.get(0, 1).is_zero()
    assert e2.get(0, 1) == x(3)
    assert e2.get(0, 0).is_zero()


def test_koszul_block_satisfies_condition_two(fermat):
    K = build_koszul_minus(fermat)
    block = find_replaceable(K, _index(K, Summand(0, 0)))
    e1, e2 = p_parts(block.d_qa)
    assert (block.delta2 @ e1).nnz() == 0
    assert (block.delta1 @ e2).nnz() == 0


def test_condition_two_failure_is_reported(fermat):
    # Q -> A is p1 + p2*x2 and A -> Q is p1*x3, so delta2_AB * delta1_BA = x2*x3
    entries = {(0, 1): p(1) + p(2) * x(2), (1, 0): p(1) * x(3)}
    M = MatrixFactorization(
        summands=(Summand(0, 0), Summand(3, -1)),
        differential=SparseMatrix(2, 2, entries),
        potential=fermat,
    )
    with pytest.raises(NotReplaceableError) as excinfo:
        find_replaceable(M, [0])
    assert excinfo.value.condition == "condition 2"
