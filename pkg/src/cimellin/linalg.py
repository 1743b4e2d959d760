"""Exact integer and rational linear algebra.

Matrices are plain row-major lists of lists holding ``int`` or
``fractions.Fraction`` entries. Nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence, Union

from .errors import DimensionError, SingularityError

Number = Union[int, Fraction]
IntMatrix = list[list[int]]
RatMatrix = list[list[Fraction]]


def _check_rect(m: Sequence[Sequence[Number]]) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    for r in m:
        if len(r) != cols:
            raise DimensionError("ragged matrix: rows have different lengths")
    return rows, cols


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence[Number]]) -> list[list[Number]]:
    rows, cols = _check_rect(m)
    return [[m[i][j] for i in range(rows)] for j in range(cols)]


def matmul(a: Sequence[Sequence[Number]], b: Sequence[Sequence[Number]]) -> list[list[Number]]:
    ar, ac = _check_rect(a)
    br, bc = _check_rect(b)
    if ac != br:
        raise DimensionError(f"cannot multiply {ar}x{ac} by {br}x{bc}")
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence[Number]], v: Sequence[Number]) -> list[Number]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def _normalize(x: Number) -> Number:
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def det(m: Sequence[Sequence[Number]]) -> Number:
    """Determinant by fraction-free (Bareiss) elimination.

    Integer input yields an ``int``; rational input a reduced value.
    """
    n, cols = _check_rect(m)
    if n != cols:
        raise DimensionError(f"determinant of a non-square {n}x{cols} matrix")
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev: Number = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                num = pivot * row_i[j] - aik * row_k[j]
                row_i[j] = num // prev if isinstance(num, int) and isinstance(prev, int) else num / prev
            row_i[k] = 0
        prev = pivot
    return _normalize(sign * a[n - 1][n - 1])


def adjugate_pair(m: Sequence[Sequence[Number]]) -> tuple[Number, list[list[Number]]]:
    """Return ``(d, adj)`` with ``m @ adj == d * I`` and ``d == det(m)``.

    Fraction-free Gauss-Jordan on ``[m | I]``: every division is exact and
    the left block ends as ``d * I``.
    """
    n, cols = _check_rect(m)
    if n != cols:
        raise DimensionError(f"inverse of a non-square {n}x{cols} matrix")
    a = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(m)]
    width = 2 * n
    sign = 1
    prev: Number = 1
    exact_int = all(isinstance(x, int) for r in m for x in r)
    for k in range(n):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                raise SingularityError(det=0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        row_k = a[k]
        for i in range(n):
            if i == k:
                continue
            row_i = a[i]
            aik = row_i[k]
            for j in range(width):
                num = pivot * row_i[j] - aik * row_k[j]
                row_i[j] = num // prev if exact_int else num / prev
        prev = pivot
    d = a[0][0]
    adj = [[_normalize(x) for x in r[n:]] for r in a]
    # Row swaps change the sign of the determinant but not the inverse.
    return _normalize(sign * d), [[x * sign for x in r] for r in adj]


def inverse(m: Sequence[Sequence[Number]]) -> RatMatrix:
    d, adj = adjugate_pair(m)
    return [[Fraction(x) / d for x in r] for r in adj]


def scaled_inverse(m: Sequence[Sequence[Number]]) -> tuple[int, IntMatrix]:
    """Return ``(delta, t)`` with ``t / delta == m^-1`` and minimal positive ``delta``."""
    inv = inverse(m)
    delta = 1
    for r in inv:
        for x in r:
            delta = lcm(delta, x.denominator)
    t = [[int(x * delta) for x in r] for r in inv]
    return delta, t


def row_content(row: Sequence[int]) -> int:
    g = 0
    for x in row:
        g = gcd(g, int(x))
    return g


def rref(m: Sequence[Sequence[Number]]) -> tuple[RatMatrix, list[int]]:
    """Reduced row echelon form over Q and the pivot column list."""
    rows, cols = _check_rect(m)
    a = [[Fraction(x) for x in r] for r in m]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: Sequence[Sequence[Number]]) -> int:
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def nullspace(m: Sequence[Sequence[Number]]) -> RatMatrix:
    """Rational basis of the right kernel (one vector per free column)."""
    rows, cols = _check_rect(m)
    if rows == 0:
        return [[Fraction(int(i == j)) for j in range(cols)] for i in range(cols)]
    a, pivots = rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -a[i][f]
        basis.append(v)
    return basis


def solve(m: Sequence[Sequence[Number]], b: Sequence[Number]) -> list[Fraction] | None:
    """One rational solution of ``m x = b`` (free variables set to 0), or None."""
    rows, cols = _check_rect(m)
    aug = [list(r) + [b[i]] for i, r in enumerate(m)]
    a, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for i, p in enumerate(pivots):
        x[p] = a[i][cols]
    return x


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf_rows(basis: Sequence[Sequence[int]]) -> IntMatrix:
    """Row Hermite normal form of the lattice spanned by ``basis``.

    Zero rows are dropped; pivots are positive and entries above each pivot
    are reduced into ``[0, pivot)``.
    """
    a = [list(map(int, r)) for r in basis]
    if not a:
        return []
    cols = len(a[0])
    r = 0
    for c in range(cols):
        if r >= len(a):
            break
        for i in range(r + 1, len(a)):
            if a[i][c] == 0:
                continue
            if a[r][c] == 0:
                a[r], a[i] = a[i], a[r]
                continue
            g, x, y = _ext_gcd(a[r][c], a[i][c])
            u, v = a[r][c] // g, a[i][c] // g
            new_r = [x * p + y * q for p, q in zip(a[r], a[i])]
            new_i = [u * q - v * p for p, q in zip(a[r], a[i])]
            a[r], a[i] = new_r, new_i
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            f = a[i][c] // a[r][c]
            if f:
                a[i] = [p - f * q for p, q in zip(a[i], a[r])]
        r += 1
    return [row for row in a[:r] if any(row)]


def integer_kernel(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Lattice basis of ``{v in Z^n : m v = 0}``, HNF-reduced.

    Unimodular column operations are tracked on ``[m; I]``; columns whose
    top part vanishes span the integer kernel. Each returned vector is
    primitive with its first nonzero entry positive.
    """
    rows, cols = _check_rect(m)
    # Work on columns: col j = (m[.][j], e_j).
    work = [[int(m[i][j]) for i in range(rows)] + [int(i == j) for i in range(cols)] for j in range(cols)]
    start = 0
    for r in range(rows):
        for j in range(start + 1, cols):
            if work[j][r] == 0:
                continue
            if work[start][r] == 0:
                work[start], work[j] = work[j], work[start]
                continue
            g, x, y = _ext_gcd(work[start][r], work[j][r])
            u, v = work[start][r] // g, work[j][r] // g
            a_col, b_col = work[start], work[j]
            work[start] = [x * p + y * q for p, q in zip(a_col, b_col)]
            work[j] = [u * q - v * p for p, q in zip(a_col, b_col)]
        if start < cols and work[start][r] != 0:
            start += 1
    kernel = [col[rows:] for col in work[start:]]
    return hnf_rows(kernel)


def to_fraction_matrix(m: Sequence[Sequence[Number]]) -> RatMatrix:
    return [[Fraction(x) for x in r] for r in m]


def is_zero_matrix(m: Sequence[Sequence[Number]]) -> bool:
    return all(x == 0 for r in m for x in r)
