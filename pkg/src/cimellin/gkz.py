"""A-hypergeometric side: the A-matrix, its GKZ system, volumes and the Horn change of variables."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import sympy

from . import linalg, polytope
from .cayley import CayleyMatrix, LaurentSystem
from .errors import DimensionError, RankError, ShapeError, SingularityError


@dataclass(frozen=True)
class AMatrix:
    """``(k + N) x L`` matrix: block indicator rows, then exponent rows.

    Columns follow the phase term order: the monomials of each polynomial,
    then its constant column ``(0, q)`` when the polynomial is deformed.
    """

    m: list[list[int]]
    col_labels: tuple[tuple[int, int], ...]
    k: int
    n: int

    @property
    def n_cols(self) -> int:
        return len(self.col_labels)


def a_matrix(sys: LaurentSystem) -> AMatrix:
    cols: list[list[int]] = []
    labels: list[tuple[int, int]] = []
    for q, poly in enumerate(sys.polys):
        for j, mono in enumerate(poly):
            cols.append([int(b == q) for b in range(sys.k)] + list(mono))
            labels.append((j + 1, q + 1))
        if sys.deformed[q]:
            cols.append([int(b == q) for b in range(sys.k)] + [0] * sys.n_vars)
            labels.append((0, q + 1))
    m = linalg.transpose(cols)
    r = linalg.rank(m)
    if r != sys.k + sys.n_vars:
        raise RankError(f"rank M(A) = {r}, expected k + N = {sys.k + sys.n_vars}")
    return AMatrix(m, tuple(labels), sys.k, sys.n_vars)


@dataclass(frozen=True)
class BoxOperator:
    vector: tuple[int, ...]
    plus: tuple[int, ...]
    minus: tuple[int, ...]

    def render(self) -> str:
        def side(exps: tuple[int, ...]) -> str:
            parts = [f"d{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e]
            return "*".join(parts) if parts else "1"

        return f"{side(self.plus)} - {side(self.minus)}"


@dataclass(frozen=True)
class GkzSystem:
    """Euler rows ``(row, c)`` meaning ``sum row_j a_j d_j + c``, plus box operators."""

    euler_rows: tuple[tuple[tuple[int, ...], Fraction], ...]
    box_ops: tuple[BoxOperator, ...]
    lattice: tuple[tuple[int, ...], ...]


def gkz_system(am: AMatrix, J: Sequence[int], zeta: Sequence[int]) -> GkzSystem:
    rows = []
    for q in range(am.k):
        rows.append((tuple(am.m[q]), Fraction(zeta[q] + 1)))
    for l in range(am.n):
        rows.append((tuple(am.m[am.k + l]), Fraction(-(J[l] + 1))))
    lattice = linalg.integer_kernel(am.m)
    boxes = []
    for b in lattice:
        plus = tuple(max(x, 0) for x in b)
        minus = tuple(max(-x, 0) for x in b)
        boxes.append(BoxOperator(tuple(b), plus, minus))
    return GkzSystem(tuple(rows), tuple(boxes), tuple(tuple(b) for b in lattice))


def cayley_points(sys: LaurentSystem) -> list[tuple[int, ...]]:
    """Exponents of ``F(x, 1, y) = sum_q y_q (f_q + 1)`` in Z^(N+k)."""
    pts = set()
    for q, poly in enumerate(sys.polys):
        e = tuple(int(b == q) for b in range(sys.k))
        for mono in poly:
            pts.add(tuple(mono) + e)
        pts.add(tuple([0] * sys.n_vars) + e)
    return sorted(pts)


@dataclass(frozen=True)
class RankReport:
    value: int
    cone_volume: int
    base_volume: int

    @property
    def ok(self) -> bool:
        return self.cone_volume == self.base_volume


def gkz_rank_report(sys: LaurentSystem) -> RankReport:
    pts = cayley_points(sys)
    dim = sys.n_vars + sys.k
    cone = polytope.hull(pts + [tuple([0] * dim)])
    base = polytope.hull(pts)
    if cone.dim != dim or base.dim != dim - 1:
        raise DimensionError(f"Cayley polytope has dimension {cone.dim}, expected {dim}")
    v1 = polytope.normalized_volume(cone)
    v2 = polytope.normalized_volume(base)
    return RankReport(v1, v1, v2)


def gkz_rank(sys: LaurentSystem) -> int:
    """``(N+k)! vol(Delta(F(x,1,y)+1))``, asserted equal to the base volume."""
    rep = gkz_rank_report(sys)
    if not rep.ok:
        raise DimensionError(f"cone volume {rep.cone_volume} differs from base volume {rep.base_volume}")
    return rep.value


def euler_cayley(sys: LaurentSystem) -> int:
    """``|chi(Z_F(x,1,y))|`` through mixed volumes of ``Delta(f_q + 1)`` in R^N."""
    polys = [polytope.hull(list(p) + [tuple([0] * sys.n_vars)]) for p in sys.polys]
    n = sys.n_vars
    if n == 0:
        return 1
    total = 0
    # Minkowski-sum volumes depend only on the full multiplicity vector, so one cache serves every term.
    cache: dict[tuple[int, ...], int] = {}
    for a in itertools.product(range(n + 1), repeat=sys.k):
        if sum(a) == n:
            total += polytope.mixed_volume_cached(polys, list(a), cache)
    return total


@dataclass
class SigmaChange:
    """Change of variables between the A-parameters and the Horn variables.

    ``sigma[j]`` lists the exponents of ``a_j`` attached to the variables
    of L (in its column order), read from the middle block of
    ``L^-1 . L(A)``.
    """

    l_a: list[list[int]]
    product: list[list[Fraction]]
    sigma: list[list[Fraction]]
    var_order: tuple[str, ...]
    shape_ok: bool

    def exponents(self, var: str) -> list[Fraction]:
        i = self.var_order.index(var)
        return [row[i] for row in self.sigma]

    def monomial(self, var: str) -> sympy.Expr:
        a = sympy.symbols(f"a1:{len(self.sigma) + 1}")
        out = sympy.Integer(1)
        for aj, e in zip(a, self.exponents(var)):
            out *= aj ** sympy.Rational(e.numerator, e.denominator)
        return out

    def s_monomials(self) -> list[sympy.Expr]:
        return [self.monomial(v) for v in self.var_order if v.startswith("s")]

    def s_aux_monomials(self) -> list[sympy.Expr]:
        return [self.monomial(v) for v in self.var_order if v.startswith("x'")]

    def prefactor(self, J: Sequence[int], zeta: Sequence[int]) -> sympy.Expr:
        """``B_J^zeta(a)`` from the x rows (power I+1) and the y rows (power zeta+1)."""
        out = sympy.Integer(1)
        xs = [v for v in self.var_order if not v.startswith(("s", "x'", "y"))]
        ys = [v for v in self.var_order if v.startswith("y")]
        for v, j in zip(xs, J):
            out *= self.monomial(v) ** (j + 1)
        for v, t in zip(ys, zeta):
            out *= self.monomial(v) ** (t + 1)
        return out


def sigma_change(cm: CayleyMatrix, am: AMatrix) -> SigmaChange:
    size = cm.size
    if am.n_cols != size or am.n != cm.layout.n_x:
        raise ShapeError(f"A-matrix has {am.n_cols} columns for a {size}x{size} Cayley matrix")
    lay = cm.layout
    n = lay.n_x
    l_a = []
    for a in range(size):
        q = lay.term_blocks[a]
        row = [cm.l[a][i] for i in lay.x_cols()]
        row += [int(a == b) for b in range(size)]
        row += [int(q == p) for p in range(lay.k)]
        l_a.append(row)
    inv = cm.inverse()
    product = linalg.matmul(inv, l_a)
    sigma = [[product[i][n + j] for i in range(size)] for j in range(size)]
    ident = linalg.identity(size)
    ok = True
    for i in range(size):
        for c in range(n):
            ok &= product[i][c] == ident[i][c]
        y_rows = list(lay.y_cols())
        for p in range(lay.k):
            want = 1 if i == y_rows[p] else 0
            ok &= product[i][n + size + p] == want
    return SigmaChange(l_a, product, sigma, lay.var_order, ok)


def _branches(m: list[list[int]], rhs: list[Fraction], K: Sequence[int]) -> list[tuple[Fraction, ...]]:
    """One representative per class of solutions with integral off-K coordinates."""
    cols = len(m[0])
    mk = [[m[i][j] for j in K] for i in range(len(m))]
    d = linalg.det(mk)
    if d == 0:
        raise SingularityError("simplex columns are linearly dependent", det=0)
    inv = linalg.inverse(mk)
    off = [j for j in range(cols) if j not in K]
    base = linalg.matvec(inv, rhs)
    gens = []
    for j in off:
        col = [m[i][j] for i in range(len(m))]
        gens.append((j, linalg.matvec(inv, col)))

    def frac(v):
        return tuple(x - (x.numerator // x.denominator) for x in v)

    # Enumerate the finite group generated by the off-K shifts modulo Z^K.
    zero = tuple(Fraction(0) for _ in K)
    seen = {zero: tuple(0 for _ in off)}
    frontier = [zero]
    while frontier:
        nxt = []
        for v in frontier:
            for idx, (_, g) in enumerate(gens):
                w = frac([a + b for a, b in zip(v, g)])
                if w not in seen:
                    steps = list(seen[v])
                    steps[idx] += 1
                    seen[w] = tuple(steps)
                    nxt.append(w)
        frontier = nxt
    out = []
    for steps in seen.values():
        lam = [Fraction(0)] * cols
        shift = [Fraction(0)] * len(K)
        for (j, g), s in zip(gens, steps):
            lam[j] = Fraction(-s)
            shift = [a + s * b for a, b in zip(shift, g)]
        for pos, j in enumerate(K):
            lam[j] = base[pos] + shift[pos]
        out.append(tuple(lam))
    return out


def t_nonresonance(
    am: AMatrix,
    K1: Sequence[int],
    K2: Sequence[int],
    J: Sequence[int],
    zeta: Sequence[Fraction | int],
    lattice: Sequence[Sequence[int]] | None = None,
) -> bool:
    """False iff a branch from K1 and a different branch from K2 agree modulo the kernel lattice.

    Two solutions of ``M(A) lambda = rhs`` differ by a kernel vector, so
    congruence modulo the saturated kernel lattice is integrality of the
    difference.
    """
    if lattice is not None:
        for b in lattice:
            if any(x != 0 for x in linalg.matvec(am.m, b)):
                raise ShapeError("supplied lattice vector does not annihilate M(A)")
    rhs = [Fraction(-(Fraction(zeta[q]) + 1)) for q in range(am.k)]
    rhs += [Fraction(Fraction(J[l]) + 1) for l in range(am.n)]
    b1 = _branches(am.m, rhs, list(K1))
    b2 = _branches(am.m, rhs, list(K2))
    same = sorted(K1) == sorted(K2)
    for u in b1:
        for v in b2:
            if same and u == v:
                continue
            if all((x - y).denominator == 1 for x, y in zip(u, v)):
                return False
    return True


def verify_branch(am: AMatrix, lam: Sequence[Fraction], J: Sequence[int], zeta: Sequence) -> bool:
    rhs = [-(Fraction(zeta[q]) + 1) for q in range(am.k)] + [Fraction(J[l]) + 1 for l in range(am.n)]
    return linalg.matvec(am.m, lam) == rhs
