"""Printed matrices transcribed entry by entry, with the permutations that map them to canonical order."""

from __future__ import annotations

from fractions import Fraction as F

# (1.6) three curves x1^a + x2^b with (a, b) = (3, 2), (2, 3), (5, 5).
A1, B1, A2, B2, A3, B3 = 3, 2, 2, 3, 5, 5


def delta(i: int, j: int) -> int:
    a = (A1, A2, A3)
    b = (B1, B2, B3)
    return a[i - 1] * b[j - 1] - a[j - 1] * b[i - 1]


D12, D13, D23 = delta(1, 2), delta(1, 3), delta(2, 3)

# Columns (x1, x2, x'1, s1, s2, s3, y1, y2, y3); rows T1..T9.
L3 = [
    [A1, 0, 0, 0, 0, 0, 1, 0, 0],
    [0, B1, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 1, 0, 0, 1, 0, 0],
    [A2, 0, 0, 0, 0, 0, 0, 1, 0],
    [0, B2, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 1, 0, 0, 1, 0],
    [A3, 0, 0, 0, 0, 0, 0, 0, 1],
    [0, B3, 1, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 1, 0, 0, 1],
]

L3_INV_SCALED = [
    [B2, -B2, 0, -B1, B1, 0, 0, 0, 0],
    [A2, -A2, 0, -A1, A1, 0, 0, 0, 0],
    [-D23, D23, 0, D13, -D13, 0, -D12, D12, 0],
    [B1 * A2, -A1 * B2, D12, -A1 * B1, A1 * B1, 0, 0, 0, 0],
    [B2 * A2, -B2 * A2, 0, -A1 * B2, B1 * A2, D12, 0, 0, 0],
    [A3 * B2, -A3 * B2, 0, -B1 * A3, B1 * A3, 0, -D12, 0, D12],
    [-B1 * A2, A1 * B2, 0, A1 * B1, -A1 * B1, 0, 0, 0, 0],
    [-B2 * A2, B2 * A2, 0, A1 * B2, -B1 * A2, 0, 0, 0, 0],
    [-A3 * B2, A3 * B2, 0, B1 * A3, -B1 * A3, 0, D12, 0, 0],
]
L3_INV = [[F(x, D12) for x in row] for row in L3_INV_SCALED]

L2 = [row[:] for row in L3]
L2[4] = [0, B2, 1, 0, 0, 0, 0, 1, 0]
L2[7] = [0, B3, 0, 0, 0, 0, 0, 0, 1]

L2_INV_SCALED = [
    [B3, -B3, 0, 0, 0, 0, -B1, B1, 0],
    [A3, -A3, 0, 0, 0, 0, -A1, A1, 0],
    [D23, -D23, 0, -D13, D13, 0, D12, -D12, 0],
    [B1 * A3, -A1 * B3, D13, 0, 0, 0, -B1 * A1, B1 * A1, 0],
    [B3 * A2, -B3 * A2, 0, -D13, 0, D13, -B1 * A2, B1 * A2, 0],
    [A3 * B3, -A3 * B3, 0, 0, 0, 0, -A1 * B3, A3 * B1, D13],
    [-B1 * A3, A1 * B3, 0, 0, 0, 0, B1 * A1, -B1 * A1, 0],
    [-B3 * A2, B3 * A2, 0, D13, 0, 0, B1 * A2, -B1 * A2, 0],
    [-A3 * B3, A3 * B3, 0, 0, 0, 0, A1 * B3, -B1 * A3, 0],
]
L2_INV = [[F(x, D13) for x in row] for row in L2_INV_SCALED]

# Schimmrigk: printed columns x0..x6, y1..y4, s1, s2; rows follow the phase terms.
SCHIMMRIGK_COLUMNS = ("x0", "x1", "x2", "x3", "x4", "x5", "x6", "y1", "y2", "y3", "y4", "s1", "s2")
SCHIMMRIGK_L = [
    [3, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0],
    [0, 3, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 3, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 3, 0, 0, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0],
    [0, 1, 1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 1, 0, 0, 3, 0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 1, 0, 0, 3, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 3, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1],
    [1, 0, 0, 0, 1, 1, 1, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0],
]


def _row(text: str) -> list[F]:
    return [F(x) for x in text.split()]


SCHIMMRIGK_L_INV = [
    _row("1/3 -1/9 -1/9 -1/9 0 1/3 -1/3 0 0 0 0 0 0"),
    _row("0 2/9 -1/9 -1/9 0 1/3 -1/3 0 0 0 0 0 0"),
    _row("0 -1/9 2/9 -1/9 0 1/3 -1/3 0 0 0 0 0 0"),
    _row("0 -1/9 -1/9 2/9 0 1/3 -1/3 0 0 0 0 0 0"),
    _row("-1/9 -1/27 2/27 2/27 0 -1/9 1/9 2/9 -1/9 -1/9 0 1/3 -1/3"),
    _row("-1/9 2/27 -1/27 2/27 0 -1/9 1/9 -1/9 2/9 -1/9 0 1/3 -1/3"),
    _row("-1/9 2/27 2/27 -1/27 0 -1/9 1/9 -1/9 -1/9 2/9 0 1/3 -1/3"),
    _row("0 1/3 1/3 1/3 0 -1 1 0 0 0 0 0 0"),
    _row("0 0 0 0 0 0 1 0 0 0 0 0 0"),
    _row("1/3 -1/9 -1/9 -1/9 0 0 0 1/3 1/3 1/3 0 -1 1"),
    _row("0 0 0 0 0 0 0 0 0 0 0 0 1"),
    _row("0 -1/3 -1/3 -1/3 1 1 -1 0 0 0 0 0 0"),
    _row("-1/3 1/9 1/9 1/9 0 0 0 -1/3 -1/3 -1/3 1 1 -1"),
]

# Degree 7 chain: printed columns x1..x5, y1, y2, s1.
CHAIN_COLUMNS = ("x1", "x2", "x3", "x4", "x5", "y1", "y2", "s1")
CHAIN_L = [
    [7, 0, 0, 0, 0, 1, 0, 0],
    [0, 7, 0, 1, 0, 1, 0, 0],
    [0, 0, 7, 0, 1, 1, 0, 0],
    [0, 0, 0, 3, 0, 1, 0, 0],
    [0, 0, 0, 0, 3, 1, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 1],
    [1, 1, 1, 1, 1, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 1, 0],
]
CHAIN_L_INV = [
    _row("6/49 -1/49 -1/49 -2/49 -2/49 0 1/7 -1/7"),
    _row("-2/147 19/147 -2/147 -11/147 -4/147 0 2/21 -2/21"),
    _row("-2/147 -2/147 19/147 -4/147 -11/147 0 2/21 -2/21"),
    _row("-1/21 -1/21 -1/21 5/21 -2/21 0 1/3 -1/3"),
    _row("-1/21 -1/21 -1/21 -2/21 5/21 0 1/3 -1/3"),
    _row("1/7 1/7 1/7 2/7 2/7 0 -1 1"),
    _row("0 0 0 0 0 0 0 1"),
    _row("-1/7 -1/7 -1/7 -2/7 -2/7 1 1 -1"),
]


def permute_columns(m: list[list], printed: tuple[str, ...], canonical: tuple[str, ...]) -> list[list]:
    """Reorder columns of a printed matrix (indexed by ``printed`` names) into ``canonical`` order."""
    idx = [printed.index(v) for v in canonical]
    return [[row[i] for i in idx] for row in m]


def permute_rows(m: list[list], printed: tuple[str, ...], canonical: tuple[str, ...]) -> list[list]:
    idx = [printed.index(v) for v in canonical]
    return [m[i] for i in idx]
