from fractions import Fraction

import pytest

from amschan.errors import SingularMatrixError
from amschan.linalg import identity, mat_eq, mat_mul, solve, vec_mat
from amschan.rng import SplitMix64


def test_solve_exact_small():
    a = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]]
    b = [Fraction(5), Fraction(10)]
    x = solve(a, b)
    assert x == [Fraction(1), Fraction(3)]
    assert all(isinstance(v, Fraction) for v in x)


def test_solve_needs_pivoting():
    a = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
    assert solve(a, [Fraction(7), Fraction(9)]) == [Fraction(9), Fraction(7)]


def test_solve_singular():
    with pytest.raises(SingularMatrixError):
        solve([[Fraction(1), Fraction(1)], [Fraction(2), Fraction(2)]], [1, 2])


def test_solve_random_roundtrip():
    rng = SplitMix64(3)
    for n in (1, 2, 3, 4):
        for _ in range(5):
            a = [
                [Fraction(rng.randint(19) - 9, 1 + rng.randint(7)) for _ in range(n)]
                for _ in range(n)
            ]
            x_true = [Fraction(rng.randint(9), 1 + rng.randint(5)) for _ in range(n)]
            b = [sum(a[i][j] * x_true[j] for j in range(n)) for i in range(n)]
            try:
                x = solve(a, b)
            except SingularMatrixError:
                continue
            assert x == x_true


def test_solve_float():
    x = solve([[2.0, 0.0], [0.0, 4.0]], [1.0, 1.0])
    assert abs(x[0] - 0.5) < 1e-12 and abs(x[1] - 0.25) < 1e-12


def test_matrix_helpers():
    ident = identity(3)
    assert mat_eq(mat_mul(ident, ident), ident)
    assert vec_mat((Fraction(1), Fraction(0), Fraction(0)), ident) == (1, 0, 0)
