"""Projective and mirror-pair systems: weights, transposition, mirror Gamma forms and Poincare series."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

import sympy

from . import linalg
from .cayley import CayleyMatrix, LaurentSystem, build_phase, cayley_matrix, from_matrix
from .errors import CimellinError, ConditionError, DimensionError, ShapeError, SingularityError, StructuralError, WeightError
from .mellin import GammaProduct, ZForm, gamma_equivalent, gamma_product, linear_forms

LAMBDA = sympy.Symbol("lam")


def build_projective(n: int, ells: Sequence[int]) -> CayleyMatrix:
    """Cayley matrix of ``x_0...x_n + s = 0`` with linear blocks of sizes ``ells``.

    Block i is ``x_a + ... + x_{a + l_i - 1} + 1`` over consecutive
    variables; only the product equation is deformed.
    """
    if n < 1 or not ells or any(l < 1 for l in ells):
        raise DimensionError(f"need n >= 1 and positive block sizes, got n={n}, ells={list(ells)}")
    if sum(ells) != n + 1:
        raise DimensionError(f"block sizes sum to {sum(ells)}, the phase is square only for n + 1 = {n + 1}")
    width = n + 1
    polys = [(tuple([1] * width),)]
    start = 0
    for l in ells:
        monos = tuple(tuple(int(j == start + t) for j in range(width)) for t in range(l))
        polys.append(monos + (tuple([0] * width),))
        start += l
    sys = LaurentSystem(
        width,
        tuple(polys),
        names=tuple(f"x{i}" for i in range(width)),
        deformed=(True,) + (False,) * len(ells),
    )
    return cayley_matrix(build_phase(sys))


def projective_target(n: int, ells: Sequence[int]) -> GammaProduct:
    """``Gamma(z)^(n+1) / prod Gamma(l z)`` in canonical form."""
    z = ZForm.variable(0, 1)
    raw = [(z, n + 1)] + [(z.scale(l), -1) for l in ells]
    return GammaProduct.build(raw)


@dataclass(frozen=True)
class MirrorInput:
    """Pairs ``(sum of monomials + s_q, prod_{I^(q)} x + 1)`` over the torus of dimension n.

    ``l_lambda`` lists the monomial exponents block after block (``tau``
    gives the block sizes); ``partition[q]`` is the 0-based index set
    ``I^(q)`` of the q-th product.
    """

    n: int
    l_lambda: tuple[tuple[int, ...], ...]
    partition: tuple[tuple[int, ...], ...]
    tau: tuple[int, ...]
    names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in r) for r in self.l_lambda)
        object.__setattr__(self, "l_lambda", rows)
        object.__setattr__(self, "partition", tuple(tuple(int(i) for i in b) for b in self.partition))
        object.__setattr__(self, "tau", tuple(int(t) for t in self.tau))
        if not self.names:
            object.__setattr__(self, "names", tuple(f"x{i + 1}" for i in range(self.n)))
        if len(rows) != self.n or any(len(r) != self.n for r in rows):
            raise ShapeError(f"monomial matrix must be {self.n}x{self.n}")
        if len(self.tau) != len(self.partition) or sum(self.tau) != self.n or any(t < 1 for t in self.tau):
            raise ShapeError(f"block sizes {self.tau} do not split {self.n} monomials into {len(self.partition)} blocks")
        flat = [i for b in self.partition for i in b]
        if sorted(flat) != list(range(self.n)) or any(not b for b in self.partition):
            raise ShapeError("partition blocks must be nonempty, disjoint and cover every variable")
        if linalg.det([list(r) for r in rows]) == 0:
            raise SingularityError("the monomial matrix is singular")

    @property
    def k(self) -> int:
        return len(self.tau)

    def blocks(self) -> list[range]:
        out, start = [], 0
        for t in self.tau:
            out.append(range(start, start + t))
            start += t
        return out

    def block_of_row(self, r: int) -> int:
        return next(q for q, b in enumerate(self.blocks()) if r in b)

    def part_of_var(self, i: int) -> int:
        return next(q for q, b in enumerate(self.partition) if i in b)

    def v_matrix(self) -> list[list[int]]:
        """n x k indicator matrix of the partition."""
        return [[int(i in b) for b in self.partition] for i in range(self.n)]

    def system(self) -> LaurentSystem:
        polys = []
        deformed = []
        for q, rows in enumerate(self.blocks()):
            polys.append(tuple(self.l_lambda[r] for r in rows))
            prod = tuple(int(i in self.partition[q]) for i in range(self.n))
            polys.append((prod, tuple([0] * self.n)))
            deformed += [True, False]
        return LaurentSystem(self.n, tuple(polys), self.names, tuple(deformed), self.partition)

    def cayley(self) -> CayleyMatrix:
        return cayley_matrix(build_phase(self.system()))

    @classmethod
    def from_system(cls, sys: LaurentSystem) -> "MirrorInput":
        """Read the alternating shape back; the partition comes from the product polynomials."""
        if sys.k % 2:
            raise StructuralError("a mirror system has an even number of polynomials")
        rows, tau, parts = [], [], []
        zero = tuple([0] * sys.n_vars)
        for nu in range(sys.k // 2):
            mono, prod = sys.polys[2 * nu], sys.polys[2 * nu + 1]
            if not sys.deformed[2 * nu] or sys.deformed[2 * nu + 1]:
                raise StructuralError(f"pair {nu + 1}: expected a deformed monomial sum then an undeformed product")
            if len(prod) != 2 or zero not in prod:
                raise StructuralError(f"pair {nu + 1}: second polynomial must be a product plus 1")
            p = prod[0] if prod[1] == zero else prod[1]
            if any(e not in (0, 1) for e in p):
                raise StructuralError(f"pair {nu + 1}: product exponents must be 0 or 1")
            rows += list(mono)
            tau.append(len(mono))
            parts.append(tuple(i for i, e in enumerate(p) if e))
        if sys.mirror_partition is not None and tuple(map(tuple, sys.mirror_partition)) != tuple(parts):
            raise StructuralError("declared mirror partition disagrees with the product polynomials")
        return cls(sys.n_vars, tuple(rows), tuple(parts), tuple(tau), sys.names)

    def relabel(self, perm: Sequence[int]) -> "MirrorInput":
        """Rename variable ``perm[i]`` to ``i``."""
        inv = {p: i for i, p in enumerate(perm)}
        rows = tuple(tuple(r[perm[i]] for i in range(self.n)) for r in self.l_lambda)
        parts = tuple(tuple(sorted(inv[i] for i in b)) for b in self.partition)
        return MirrorInput(self.n, rows, parts, self.tau, tuple(self.names[p] for p in perm))


def transpose(mi: MirrorInput) -> MirrorInput:
    """Monomials of block q of the transpose are the columns ``i in I^(q)`` of the monomial matrix.

    The new variables are the old monomials (in order) and the new
    partition consists of the old monomial blocks.
    """
    perm = [i for b in mi.partition for i in b]
    rows = tuple(tuple(mi.l_lambda[r][i] for r in range(mi.n)) for i in perm)
    tau = tuple(len(b) for b in mi.partition)
    parts = tuple(tuple(b) for b in mi.blocks())
    names = tuple(f"x{i + 1}" for i in range(mi.n)) if mi.names == tuple(f"x{i + 1}" for i in range(mi.n)) else tuple(
        f"t{i + 1}" for i in range(mi.n)
    )
    return MirrorInput(mi.n, rows, parts, tau, names)


def _block_sets(mi: MirrorInput) -> list[tuple[frozenset, frozenset]]:
    return [
        (frozenset(mi.l_lambda[r] for r in rows), frozenset(mi.partition[q]))
        for q, rows in enumerate(mi.blocks())
    ]


def isomorphism(a: MirrorInput, b: MirrorInput) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Variable and block permutations carrying system a onto system b, if any.

    Returns ``(var_map, block_map)`` with ``var_map[i]`` the b-variable
    receiving a-variable i.
    """
    if a.n != b.n or a.k != b.k:
        return None
    b_sets = _block_sets(b)
    for bperm in itertools.permutations(range(a.k)):
        if any(a.tau[q] != b.tau[bperm[q]] or len(a.partition[q]) != len(b.partition[bperm[q]]) for q in range(a.k)):
            continue

        def invariant(m: MirrorInput, i: int, order: Sequence[int]) -> tuple:
            blocks = m.blocks()
            return tuple(
                (tuple(sorted(m.l_lambda[r][i] for r in blocks[q])), i in m.partition[q]) for q in order
            )

        a_inv = [invariant(a, i, range(a.k)) for i in range(a.n)]
        b_inv = [invariant(b, j, [bperm[q] for q in range(a.k)]) for j in range(b.n)]
        if sorted(a_inv) != sorted(b_inv):
            continue
        candidates = [[j for j in range(b.n) if b_inv[j] == a_inv[i]] for i in range(a.n)]
        target = [b_sets[bperm[q]] for q in range(a.k)]
        found = _match_vars(a, candidates, target)
        if found is not None:
            return tuple(found), tuple(bperm)
    return None


def _match_vars(a: MirrorInput, candidates: list[list[int]], target: list[tuple[frozenset, frozenset]]) -> list[int] | None:
    n = a.n
    assign: list[int] = [-1] * n
    used: set[int] = set()

    def check() -> bool:
        for q, rows in enumerate(a.blocks()):
            monos = set()
            for r in rows:
                img = [0] * n
                for i in range(n):
                    img[assign[i]] = a.l_lambda[r][i]
                monos.add(tuple(img))
            part = frozenset(assign[i] for i in a.partition[q])
            if (frozenset(monos), part) != target[q]:
                return False
        return True

    def rec(i: int) -> bool:
        if i == n:
            return check()
        for j in candidates[i]:
            if j in used:
                continue
            assign[i] = j
            used.add(j)
            if rec(i + 1):
                return True
            used.discard(j)
        assign[i] = -1
        return False

    return assign if rec(0) else None


@dataclass(frozen=True)
class WeightData:
    """Block weights ``g^(q)`` with ``<v, g^(q)>`` constant on every block.

    ``q_hat[q][j]`` is the common value on block j; ``g_diag[i]`` is the
    weight carried by variable i; ``extended[q] = q_hat[q][q]``.
    """

    g: tuple[tuple[int, ...], ...]
    q_hat: tuple[tuple[int, ...], ...]
    g_diag: tuple[int, ...]
    extended: tuple[int, ...]
    support: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.g)

    @property
    def calabi_yau(self) -> bool:
        return all(sum(self.q_hat[q]) == sum(self.g[q]) for q in range(self.k))

    def group_of(self, i: int) -> int:
        return next(q for q, s in enumerate(self.support) if i in s)


def _primitive_positive(v: Sequence[Fraction]) -> tuple[int, ...]:
    den = lcm(*[x.denominator for x in v])
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    if any(x < 0 for x in ints):
        ints = [-x for x in ints]
    return tuple(ints)


def weights(mi: MirrorInput) -> WeightData:
    """Minimal positive integral weights, one per block, with disjoint supports."""
    n, k = mi.n, mi.k
    eqs = []
    for q, rows in enumerate(mi.blocks()):
        prod = [int(i in mi.partition[q]) for i in range(n)]
        for r in rows:
            eqs.append([mi.l_lambda[r][i] - prod[i] for i in range(n)])
    basis = linalg.nullspace(eqs)
    if not basis:
        raise WeightError("no nonzero weight makes every block homogeneous")
    coords = [tuple(b[i] for b in basis) for i in range(n)]
    if any(all(x == 0 for x in c) for c in coords):
        raise WeightError("some variable gets weight 0 in every solution")

    def direction(c):
        lead = next(x for x in c if x != 0)
        return tuple(x / lead for x in c)

    classes: dict[tuple, list[int]] = {}
    for i, c in enumerate(coords):
        classes.setdefault(direction(c), []).append(i)
    groups = list(classes.values())
    if len(groups) != k:
        raise WeightError(f"solution space splits into {len(groups)} supports, expected {k}")
    vecs = []
    for s in groups:
        others = [[b[i] for b in basis] for i in range(n) if i not in s]
        lam = linalg.nullspace(others) if others else [[Fraction(int(j == 0)) for j in range(len(basis))]]
        if len(lam) != 1:
            raise WeightError(f"support {s} does not carry a unique weight")
        v = [sum((lam[0][j] * basis[j][i] for j in range(len(basis))), Fraction(0)) for i in range(n)]
        g = _primitive_positive(v)
        if any(g[i] <= 0 for i in s):
            raise WeightError(f"weight on {s} is not positive")
        vecs.append((tuple(s), g))
    blocks = mi.blocks()
    order = None
    for perm in itertools.permutations(range(k)):
        ok = True
        for q in range(k):
            s = vecs[perm[q]][0]
            if len(s) != mi.tau[q] or linalg.det([[mi.l_lambda[r][i] for i in s] for r in blocks[q]]) == 0:
                ok = False
                break
        if ok:
            order = perm
            break
    if order is None:
        raise WeightError("weight supports cannot be aligned with the monomial blocks")
    support = tuple(vecs[order[q]][0] for q in range(k))
    g = tuple(vecs[order[q]][1] for q in range(k))
    q_hat = tuple(tuple(sum(g[q][i] for i in mi.partition[j]) for j in range(k)) for q in range(k))
    for q in range(k):
        for r in range(n):
            value = sum(a * b for a, b in zip(mi.l_lambda[r], g[q]))
            if value != q_hat[q][mi.block_of_row(r)]:
                raise WeightError(f"weight {q + 1} is not constant on block {mi.block_of_row(r) + 1}")
    if linalg.rank([list(r) for r in q_hat]) != k:
        raise ConditionError("rank", f"the block-degree matrix {q_hat} has rank below {k}")
    g_diag = tuple(sum(g[q][i] for q in range(k)) for i in range(n))
    return WeightData(g, q_hat, g_diag, tuple(q_hat[q][q] for q in range(k)), support)


@dataclass(frozen=True)
class MirrorTerms:
    """Row indices of one pair in the Cayley matrix."""

    monomials: tuple[int, ...]
    s_term: int
    product: int
    constant: int


def mirror_terms(cm: CayleyMatrix) -> list[MirrorTerms]:
    lay = cm.layout
    if lay.k % 2 or lay.n_aux:
        raise StructuralError("not a mirror-shaped Cayley matrix")
    out = []
    for nu in range(lay.k // 2):
        first = lay.block_terms(2 * nu)
        second = lay.block_terms(2 * nu + 1)
        kinds = [lay.term_kinds[a] for a in first]
        if kinds[-1] != "s" or "s" in kinds[:-1] or len(second) != 2:
            raise StructuralError(f"pair {nu + 1} does not have the monomials / s / product / constant layout")
        const = [a for a in second if all(cm.l[a][c] == 0 for c in lay.x_cols())]
        if len(const) != 1:
            raise StructuralError(f"pair {nu + 1} has no constant term")
        prod = [a for a in second if a != const[0]][0]
        out.append(MirrorTerms(tuple(first[:-1]), first[-1], prod, const[0]))
    return out


def xi_forms(cm: CayleyMatrix) -> list[ZForm]:
    """``xi_a(z)``, the forms at J = 0, zeta = 0; pair-shaped matrices get the three-term check."""
    lay = cm.layout
    forms = [f.substitute([0] * lay.n_x, [0] * lay.k, [0] * lay.n_aux) for f in linear_forms(cm)]
    n_z = lay.n_s
    for j in range(n_z):
        if forms[lay.s_term(j)] != ZForm.variable(j, n_z):
            raise StructuralError(f"the s-term of s{j + 1} does not carry z{j + 1}")
    try:
        pairs = mirror_terms(cm)
    except StructuralError:
        return forms
    for nu, p in enumerate(pairs):
        z = ZForm.variable(nu, n_z)
        one_minus = z.scale(-1).shift(1)
        if forms[p.s_term] != z or forms[p.product] != z or forms[p.constant] != one_minus:
            raise StructuralError(f"pair {nu + 1}: expected (z, z, 1 - z) at the s, product and constant terms")
    return forms


def mirror_xi(wd_other: WeightData) -> list[ZForm]:
    """``xi^(q)(z)`` solving ``sum_q q_hat[q][nu] xi^(q) = 1 - z_nu``."""
    k = wd_other.k
    m = [[Fraction(wd_other.q_hat[q][nu]) for q in range(k)] for nu in range(k)]
    inv = linalg.inverse(m)
    out = []
    for q in range(k):
        coeffs = [-inv[q][nu] for nu in range(k)]
        const = sum((inv[q][nu] for nu in range(k)), Fraction(0))
        out.append(ZForm.make(coeffs, const))
    return out


def mirror_gamma(wd_other: WeightData) -> tuple[GammaProduct, list[ZForm]]:
    """``prod Gamma(g_a xi^(q(a))) / prod_nu Gamma(sum_q Q[q][nu] xi^(q))`` with the other side's weights."""
    xi = mirror_xi(wd_other)
    k = wd_other.k
    num = []
    for a in range(len(wd_other.g_diag)):
        q = wd_other.group_of(a)
        num.append(xi[q].scale(wd_other.g[q][a]))
    den = []
    for nu in range(k):
        acc = ZForm.make([0] * k, 0)
        for q in range(k):
            acc = acc + xi[q].scale(wd_other.q_hat[q][nu])
        den.append(acc)
    raw = [(f, 1) for f in num] + [(f, -1) for f in den]
    return GammaProduct.build(raw), xi


def factorization_holds(cm: CayleyMatrix, wd_other: WeightData) -> bool:
    """Monomial forms of ``cm`` equal ``g_a xi^(q(a))`` term by term."""
    forms = xi_forms(cm)
    xi = mirror_xi(wd_other)
    monos = [a for p in mirror_terms(cm) for a in p.monomials]
    if len(monos) != len(wd_other.g_diag):
        return False
    for pos, a in enumerate(monos):
        q = wd_other.group_of(pos)
        if forms[a] != xi[q].scale(wd_other.g[q][pos]):
            return False
    return True


@dataclass
class MirrorPair:
    x_side: tuple[MirrorInput, WeightData]
    y_side: tuple[MirrorInput, WeightData]
    conditions: dict[str, bool] = field(default_factory=dict)
    self_dual: bool = False

    @property
    def ok(self) -> bool:
        return all(self.conditions.values())


CONDITIONS = ("factorization", "transposed factorization", "partition", "rank")


def transpose_pair(mi: MirrorInput, strict: bool = True) -> MirrorPair:
    """Both sides with their weights; the four Gamma-form conditions are recorded.

    ``partition`` asks that the block sizes of the two sides agree up to a
    reordering of the blocks.
    """
    wx = weights(mi)
    ty = transpose(mi)
    wy = weights(ty)
    cx, cy = mi.cayley(), ty.cayley()
    part_sizes = tuple(len(b) for b in mi.partition)
    conditions = {
        "factorization": factorization_holds(cx, wy),
        "transposed factorization": factorization_holds(cy, wx),
        "partition": sorted(part_sizes) == sorted(mi.tau),
        "rank": linalg.rank([list(r) for r in wx.q_hat]) == mi.k == linalg.rank([list(r) for r in wy.q_hat]),
    }
    pair = MirrorPair((mi, wx), (ty, wy), conditions, isomorphism(mi, ty) is not None)
    if strict:
        for name in CONDITIONS:
            if not conditions[name]:
                raise ConditionError(name, "the mirror Gamma expression is not available for this pair")
    return pair


@dataclass
class MirrorMellin:
    x_mirror: GammaProduct
    x_direct: GammaProduct
    y_mirror: GammaProduct
    y_direct: GammaProduct
    x_xi: list[ZForm]
    y_xi: list[ZForm]

    @property
    def x_ok(self) -> bool:
        return gamma_equivalent(self.x_mirror, self.x_direct)

    @property
    def y_ok(self) -> bool:
        return gamma_equivalent(self.y_mirror, self.y_direct)


def _direct(mi: MirrorInput) -> GammaProduct:
    cm = mi.cayley()
    return gamma_product(linear_forms(cm), [0] * mi.n, [0] * cm.layout.k)


def mellin_mirror(pair: MirrorPair) -> MirrorMellin:
    for name in CONDITIONS:
        if not pair.conditions.get(name, False):
            raise ConditionError(name, "refusing to write the mirror Gamma expression")
    (mx, wx), (my, wy) = pair.x_side, pair.y_side
    gx, xi_x = mirror_gamma(wy)
    gy, xi_y = mirror_gamma(wx)
    return MirrorMellin(gx, _direct(mx), gy, _direct(my), xi_x, xi_y)


@dataclass(frozen=True)
class RationalFunction:
    """Reduced quotient of polynomials in ``gens`` with a monic-leading denominator."""

    num: sympy.Poly
    den: sympy.Poly

    @classmethod
    def make(cls, num: sympy.Expr, den: sympy.Expr, gens: Sequence[sympy.Symbol]) -> "RationalFunction":
        p = sympy.Poly(num, *gens, domain="QQ")
        q = sympy.Poly(den, *gens, domain="QQ")
        if q.is_zero:
            raise ZeroDivisionError("zero denominator")
        g = p.gcd(q)
        p, q = p.exquo(g), q.exquo(g)
        c = q.LC()
        return cls(p.quo_ground(c), q.quo_ground(c))

    @property
    def gens(self) -> tuple[sympy.Symbol, ...]:
        return self.num.gens

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero

    def __hash__(self) -> int:
        return hash((self.num.as_expr(), self.den.as_expr()))

    def substitute(self, mapping: dict, gens: Sequence[sympy.Symbol]) -> "RationalFunction":
        return RationalFunction.make(self.num.as_expr().subs(mapping), self.den.as_expr().subs(mapping), gens)

    def is_polynomial(self) -> bool:
        return self.den.is_ground

    def coefficients(self) -> list[int] | None:
        """Ascending coefficients when the quotient is a polynomial in one variable."""
        if not self.is_polynomial() or len(self.gens) != 1:
            return None
        poly = self.num.quo_ground(self.den.LC())
        return [sympy.Rational(c) for c in reversed(poly.all_coeffs())]

    def as_expr(self) -> sympy.Expr:
        return self.num.as_expr() / self.den.as_expr()


def _one_minus(var: sympy.Symbol, powers: Sequence[int]) -> sympy.Expr:
    return sympy.Mul(*[1 - var**e for e in powers if e])


def poincare_poly(wd: WeightData, var: sympy.Symbol = LAMBDA) -> RationalFunction:
    """``prod (1 - lam^Q) / prod (1 - lam^g)`` over all nonzero block degrees and weights."""
    qs = [x for row in wd.q_hat for x in row]
    gs = [x for row in wd.g for x in row]
    return RationalFunction.make(_one_minus(var, qs), _one_minus(var, gs), [var])


def euler_series(wd: WeightData, gens: Sequence[sympy.Symbol] | None = None) -> RationalFunction:
    """``prod_nu prod_q (1 - t_nu^Q[nu][q]) / prod_nu prod_j (1 - t_nu^g_j^(nu))``."""
    t = list(gens) if gens is not None else list(sympy.symbols(f"t1:{wd.k + 1}"))
    num = sympy.Mul(*[_one_minus(t[nu], wd.q_hat[nu]) for nu in range(wd.k)])
    den = sympy.Mul(*[_one_minus(t[nu], wd.g[nu]) for nu in range(wd.k)])
    return RationalFunction.make(num, den, t)


@dataclass(frozen=True)
class QuantumOperator:
    """``prod (-g theta_nu + r) - t_nu prod_mu prod_r (sum_q Q[q][mu] theta_q - r)``.

    ``theta_factors`` and ``t_factors`` store ``(coefficients, shift)``
    pairs, the factor being ``coefficients . theta + shift``.
    """

    nu: int
    theta_factors: tuple[tuple[tuple[int, ...], int], ...]
    t_factors: tuple[tuple[tuple[int, ...], int], ...]
    extended: int

    @property
    def theta_degree(self) -> int:
        return len(self.theta_factors)

    @property
    def t_degree(self) -> int:
        return len(self.t_factors)

    @property
    def balanced(self) -> bool:
        return self.theta_degree == self.t_degree

    @property
    def degree(self) -> int:
        return max(self.theta_degree, self.t_degree)

    def exponents_at_zero(self) -> list[Fraction]:
        return [Fraction(-s, c[self.nu]) for c, s in self.theta_factors]

    def exponents_at_infinity(self) -> list[Fraction]:
        """Roots of the t-part restricted to ``theta_nu``; factors without ``theta_nu`` are skipped."""
        return [Fraction(-s, c[self.nu]) for c, s in self.t_factors if c[self.nu] != 0]

    def expr(self) -> sympy.Expr:
        k = len(self.theta_factors[0][0]) if self.theta_factors else len(self.t_factors[0][0])
        th = sympy.symbols(f"theta1:{k + 1}")
        t = sympy.Symbol(f"t{self.nu + 1}")

        def lin(c, s):
            return sum((ci * x for ci, x in zip(c, th)), sympy.Integer(0)) + s

        left = sympy.Mul(*[lin(c, s) for c, s in self.theta_factors])
        right = sympy.Mul(*[lin(c, s) for c, s in self.t_factors])
        return left - t * right


def quantum_operators(wd_other: WeightData) -> list[QuantumOperator]:
    """One operator per t variable, read off the mirror Gamma expression built from ``wd_other``."""
    k = wd_other.k
    ops = []
    for nu in range(k):
        theta = []
        for a in wd_other.support[nu]:
            g = wd_other.g[nu][a]
            for r in range(g):
                c = [0] * k
                c[nu] = -g
                theta.append((tuple(c), r))
        tf = []
        for mu in range(k):
            c = tuple(wd_other.q_hat[q][mu] for q in range(k))
            for r in range(wd_other.q_hat[nu][mu]):
                tf.append((c, -r))
        ops.append(QuantumOperator(nu, tuple(theta), tuple(tf), wd_other.extended[nu]))
    return ops


def char_from_exponents(exps: Sequence[Fraction], var: sympy.Symbol) -> sympy.Expr:
    """``det(1 - var M)`` for a monodromy with eigenvalues ``exp(2 pi i e)``.

    The exponent multiset must be closed under Galois conjugation; it is
    then a product of cyclotomic polynomials.
    """
    counts: dict[Fraction, int] = {}
    for e in exps:
        r = e - (e.numerator // e.denominator)
        counts[r] = counts.get(r, 0) + 1
    by_den: dict[int, list[int]] = {}
    for r, c in counts.items():
        by_den.setdefault(r.denominator, []).append(c)
    out = sympy.Integer(1)
    for d, cs in by_den.items():
        units = sum(1 for a in range(d) if gcd(a, d) == 1)
        if len(cs) != units or len(set(cs)) != 1:
            raise StructuralError(f"exponents with denominator {d} are not Galois closed")
        base = (1 - var) if d == 1 else sympy.cyclotomic_poly(d, var)
        out *= base ** cs[0]
    return sympy.expand(out)


def monodromy_product(wd_other: WeightData, gens: Sequence[sympy.Symbol] | None = None) -> RationalFunction:
    """``prod_q det(1 - lam_q M_q^inf) / det(1 - lam_q M_q^0)`` from the local exponents of each operator."""
    lam = list(gens) if gens is not None else list(sympy.symbols(f"lam1:{wd_other.k + 1}"))
    num, den = sympy.Integer(1), sympy.Integer(1)
    for op in quantum_operators(wd_other):
        num *= char_from_exponents(op.exponents_at_infinity(), lam[op.nu])
        den *= char_from_exponents(op.exponents_at_zero(), lam[op.nu])
    return RationalFunction.make(num, den, lam)


def diagonal(rf: RationalFunction, var: sympy.Symbol = LAMBDA) -> RationalFunction:
    return rf.substitute({g: var for g in rf.gens}, [var])


@dataclass
class BckReport:
    """The two identity chains, each as monodromy = Euler series = Poincare polynomial on the diagonal."""

    x_monodromy_euler: bool
    x_euler_poincare: bool
    y_monodromy_euler: bool
    y_euler_poincare: bool
    values: dict[str, RationalFunction] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.x_monodromy_euler and self.x_euler_poincare and self.y_monodromy_euler and self.y_euler_poincare


def verify_bck(pair: MirrorPair) -> BckReport:
    """Chains for X (built from the transposed weights) and for Y (from the direct weights)."""
    wx, wy = pair.x_side[1], pair.y_side[1]
    mx = diagonal(monodromy_product(wy))
    ey = diagonal(euler_series(wy))
    py = poincare_poly(wy)
    my = diagonal(monodromy_product(wx))
    ex = diagonal(euler_series(wx))
    px = poincare_poly(wx)
    values = {"M_X": mx, "PO_Y": ey, "P_A_Y": py, "M_Y": my, "PO_X": ex, "P_A_X": px}
    return BckReport(mx == ey, ey == py, my == ex, ex == px, values)


@dataclass(frozen=True)
class MagicSquare:
    sigma: tuple[int, ...]
    block_map: tuple[int, ...]


def magic_square(cm: CayleyMatrix) -> MagicSquare | None:
    """Injection sigma of monomial terms into variables with ``p_q^b = w_sigma(b)^(a^pi(q))`` for all q.

    ``p_q^b`` is the s_q row of L^-1 at monomial term b and
    ``w_i^(a)`` the x_i row at the constant term of pair a; ``pi``
    ranges over block permutations. Edges are exact equalities, so a
    matching exists iff the two labelled multisets coincide.
    """
    lay = cm.layout
    pairs = mirror_terms(cm)
    inv = cm.inverse()
    s_rows = list(lay.s_cols())
    x_rows = list(lay.x_cols())
    monos = [a for p in pairs for a in p.monomials]
    k = len(pairs)
    if len(monos) > len(x_rows):
        return None
    for pi in itertools.permutations(range(k)):
        left = {b: tuple(inv[s_rows[q]][b] for q in range(k)) for b in monos}
        right = {i: tuple(inv[x_rows[i]][pairs[pi[q]].constant] for q in range(k)) for i in range(len(x_rows))}
        pool: dict[tuple, list[int]] = {}
        for i, key in right.items():
            pool.setdefault(key, []).append(i)
        sigma = []
        ok = True
        for b in monos:
            bucket = pool.get(left[b])
            if not bucket:
                ok = False
                break
            sigma.append(bucket.pop(0))
        if ok:
            return MagicSquare(tuple(sigma), tuple(pi))
    return None


def perturb(cm: CayleyMatrix, rng: random.Random, entries: int = 3, max_shift: int = 4, tries: int = 50) -> CayleyMatrix:
    """Add ``1..max_shift`` to ``entries`` random x-entries of monomial or product rows.

    Constant and s rows are left alone so the pair layout stays readable;
    singular draws are retried.
    """
    pairs = mirror_terms(cm)
    rows = [a for p in pairs for a in p.monomials] + [p.product for p in pairs]
    cols = list(cm.layout.x_cols())
    for _ in range(tries):
        l = [list(r) for r in cm.l]
        for _ in range(entries):
            l[rng.choice(rows)][rng.choice(cols)] += rng.randint(1, max_shift)
        try:
            return from_matrix(l, cm.layout)
        except CimellinError:
            continue
    raise SingularityError(f"no nonsingular perturbation in {tries} draws")
