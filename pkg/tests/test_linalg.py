import random
from fractions import Fraction

import pytest

from enumtc.errors import InvalidInput
from enumtc.fields import QQ, PrimeField
from enumtc.linalg import Matrix, row_span_contains


def qmat(rows):
    return Matrix.from_rows([[Fraction(e) for e in r] for r in rows], QQ)


def test_identity_rank():
    assert Matrix.identity(3, QQ).rank() == 3


def test_zero_matrix_rank():
    M = Matrix(3, 4, [Fraction(0)] * 12, QQ)
    assert M.rank() == 0
    assert len(M.kernel_basis()) == 4


def test_kernel_of_identity_empty():
    assert Matrix.identity(4, QQ).kernel_basis() == []


def test_kernel_f2():
    F2 = PrimeField(2)
    M = Matrix.from_rows([[F2.one(), F2.one()]], F2)
    ker = M.kernel_basis()
    assert len(ker) == 1
    assert ker[0] == [F2.one(), F2.one()]


def test_degree8_differential_matrix():
    # Differential on degree-8 monomials {c1^4, c1^2 c2, c2^2, c1 c3, c4}
    # for n=4, written in the degree-6 basis (c1^3, c1 c2, c3).
    cols = [(16, 0, 0), (3, 8, 0), (0, 6, 0), (0, 2, 4), (0, 0, 1)]
    rows = [[Fraction(cols[j][i]) for j in range(5)] for i in range(3)]
    M = Matrix.from_rows(rows, QQ)
    assert M.rank() == 3
    ker = M.kernel_basis()
    assert len(ker) == 2
    v = [Fraction(3), Fraction(-16), Fraction(0), Fraction(64), Fraction(-256)]
    assert all(not e for e in M.mul_vec(v))
    assert row_span_contains(ker, v, QQ)


def test_kernel_vectors_annihilated_exactly():
    rng = random.Random(3)
    for _ in range(20):
        rows = [[Fraction(rng.randrange(-5, 6)) for _ in range(6)]
                for _ in range(4)]
        M = qmat(rows)
        ker = M.kernel_basis()
        assert M.rank() + len(ker) == 6
        for v in ker:
            assert all(not e for e in M.mul_vec(v))


def test_rank_invariant_under_row_ops():
    rng = random.Random(17)
    F5 = PrimeField(5)
    for _ in range(20):
        rows = [[F5.from_int(rng.randrange(5)) for _ in range(4)]
                for _ in range(4)]
        M = Matrix.from_rows(rows, F5)
        r = M.rank()
        # random row operation: add a multiple of one row to another
        i, j = rng.randrange(4), rng.randrange(4)
        if i == j:
            continue
        c = F5.from_int(rng.randrange(1, 5))
        rows2 = [list(row) for row in rows]
        rows2[i] = [a + c * b for a, b in zip(rows2[i], rows2[j])]
        assert Matrix.from_rows(rows2, F5).rank() == r


def test_matmul_and_transpose():
    A = qmat([[1, 2], [3, 4]])
    B = qmat([[0, 1], [1, 0]])
    C = A * B
    assert C.row_lists() == [[Fraction(2), Fraction(1)],
                             [Fraction(4), Fraction(3)]]
    assert A.transpose().row_lists() == [[Fraction(1), Fraction(3)],
                                         [Fraction(2), Fraction(4)]]


def test_shape_validation():
    with pytest.raises(InvalidInput):
        Matrix(2, 2, [Fraction(1)], QQ)
    with pytest.raises(InvalidInput):
        Matrix.from_rows([[Fraction(1)], [Fraction(1), Fraction(2)]], QQ)


def test_row_span_contains():
    rows = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    assert row_span_contains(rows, [Fraction(5), Fraction(-3)], QQ)
    assert not row_span_contains([rows[0]], [Fraction(0), Fraction(1)], QQ)
