import random
from fractions import Fraction

import pytest
import sympy

from conftest import bareiss_rank
from rrbleib.exact import (Matrix, NotASubspace, as_rational, complement_basis, image_basis, in_span,
                           kernel_basis, quotient_dim, rank, rref, solve)


def rand_matrix(rng, m, n, density=0.5):
    vals = (-3, -2, -1, 1, 2, 3, Fraction(1, 2), Fraction(-2, 3))
    return Matrix.from_rows([[rng.choice(vals) if rng.random() < density else 0 for _ in range(n)]
                             for _ in range(m)])


def test_rank_matches_bareiss_and_sympy():
    rng = random.Random(1)
    for _ in range(60):
        m, n = rng.randint(1, 7), rng.randint(1, 7)
        A = rand_matrix(rng, m, n, rng.choice((0.2, 0.5, 0.9)))
        r = rank(A)
        assert r == bareiss_rank(A.tolist())
        assert r == sympy.Matrix(A.tolist()).rank()


def test_low_rank_products():
    rng = random.Random(2)
    for _ in range(20):
        k = rng.randint(1, 3)
        A = rand_matrix(rng, 6, k, 0.9) @ rand_matrix(rng, k, 5, 0.9)
        assert rank(A) == bareiss_rank(A.tolist()) <= k


def test_kernel_and_image():
    rng = random.Random(3)
    for _ in range(30):
        A = rand_matrix(rng, rng.randint(1, 5), rng.randint(1, 6))
        K = kernel_basis(A)
        assert len(K) == A.cols - rank(A)
        for v in K:
            assert not any(A @ v)
        if K:
            assert bareiss_rank(K) == len(K)
        I = image_basis(A)
        assert len(I) == rank(A)


def test_rref_pivots():
    A = Matrix.from_rows([[0, 2, 4], [0, 1, 2], [1, 0, 1]])
    R, piv = rref(A)
    assert piv == [0, 1]
    assert R.tolist() == [[1, 0, 1], [0, 1, 2], [0, 0, 0]]


def test_solve_and_span():
    A = Matrix.from_rows([[1, 1], [1, -1], [2, 0]])
    x = solve(A, [3, 1, 4])
    assert x == [2, 1]
    assert solve(A, [1, 0, 0]) is None
    assert in_span([[1, 1, 2], [1, -1, 0]], [3, 1, 4])
    assert not in_span([[1, 1, 2]], [1, 0, 0])


def test_quotient_and_complement():
    big = [[1, 0, 0], [0, 1, 0]]
    small = [[1, 1, 0]]
    assert quotient_dim(small, big) == 1
    keep = complement_basis(small, big, 3)
    assert len(keep) == 1
    with pytest.raises(NotASubspace):
        quotient_dim([[0, 0, 1]], big)


def test_matrix_algebra():
    A = Matrix.from_rows([[1, 2], [3, 4]])
    B = Matrix.identity(2)
    assert A @ B == A
    assert (A - A).is_zero()
    assert A.T.tolist() == [[1, 3], [2, 4]]
    assert A[1, 0] == 3
    assert A.scale(Fraction(1, 2))[0, 1] == 1
    assert A @ [1, 1] == [3, 7]


def test_as_rational():
    assert as_rational("3/6") == Fraction(1, 2)
    assert as_rational("4/2") == 2 and isinstance(as_rational("4/2"), int)
    with pytest.raises(TypeError):
        as_rational(0.5)
