"""Small dense linear algebra over exact rationals or floats.

Matrices are immutable tuples of row tuples; probability vectors are row
vectors (a distribution times a stochastic matrix is ``vec_mat(pi, P)``).

Exact systems are solved by fraction-free (Bareiss) Gaussian elimination on
an integer-scaled augmented matrix, so intermediate entries stay integers and
the back-substituted solution is exact.  Float systems fall back to ordinary
elimination with partial pivoting.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import SingularMatrixError
from .scalars import Scalar

Vector = tuple[Scalar, ...]
Matrix = tuple[tuple[Scalar, ...], ...]


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def vec_mat(v: Vector, m: Matrix) -> Vector:
    n = len(m[0])
    return tuple(sum(v[i] * m[i][j] for i in range(len(v))) for j in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = range(len(b[0]))
    return tuple(
        tuple(sum(row[k] * b[k][j] for k in range(len(b))) for j in cols) for row in a
    )


def mat_eq(a: Matrix, b: Matrix) -> bool:
    from .scalars import scalar_eq

    if len(a) != len(b) or any(len(r) != len(s) for r, s in zip(a, b)):
        return False
    return all(scalar_eq(x, y) for r, s in zip(a, b) for x, y in zip(r, s))


def solve(a: list[list[Scalar]], b: list[Scalar]) -> list[Scalar]:
    """Solve the square system a x = b.

    Raises SingularMatrixError if no unique solution exists.
    """
    if any(isinstance(x, float) for row in a for x in row) or any(
        isinstance(x, float) for x in b
    ):
        return _solve_float([list(map(float, row)) for row in a], [float(x) for x in b])
    return _solve_bareiss(a, b)


def _solve_bareiss(a: list[list[Scalar]], b: list[Scalar]) -> list[Fraction]:
    n = len(a)
    if n == 0:
        return []
    # scale each row (including the rhs) to integers
    m: list[list[int]] = []
    for i in range(n):
        row = [Fraction(x) for x in a[i]] + [Fraction(b[i])]
        d = lcm(*(x.denominator for x in row))
        m.append([int(x * d) for x in row])

    prev = 1
    for k in range(n):
        pivot = next((i for i in range(k, n) if m[i][k] != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]

    x: list[Fraction] = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(m[i][n])
        for j in range(i + 1, n):
            acc -= m[i][j] * x[j]
        x[i] = acc / m[i][i]
    return x


def _solve_float(a: list[list[float]], b: list[float]) -> list[float]:
    n = len(a)
    m = [a[i] + [b[i]] for i in range(n)]
    for k in range(n):
        pivot = max(range(k, n), key=lambda i: abs(m[i][k]))
        if abs(m[pivot][k]) < 1e-14:
            raise SingularMatrixError("matrix is numerically singular")
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            for j in range(k, n + 1):
                m[i][j] -= f * m[k][j]
    x = [0.0] * n
    for i in range(n - 1, -1, -1):
        x[i] = (m[i][n] - sum(m[i][j] * x[j] for j in range(i + 1, n))) / m[i][i]
    return x
