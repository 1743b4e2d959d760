"""Horn-type operators annihilating the Mellin integral, with their checks."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import sympy

from . import polytope
from .cayley import PhaseFunction
from .errors import SamplingError
from .mellin import GammaProduct, IndexSets, LinearForm, ZForm


@dataclass(frozen=True)
class HornFactor:
    """``sign * (L_a(J, z, zeta) + shift)`` as a function of z."""

    form_index: int
    shift: int
    sign: int
    zform: ZForm

    def __call__(self, z: Sequence) -> Fraction:
        return self.sign * (self.zform(z) + self.shift)

    def as_zform(self) -> ZForm:
        return self.zform.shift(self.shift).scale(self.sign)


@dataclass(frozen=True)
class HornOperator:
    """The pair ``(P_q, s_q^delta Q_q)``; the operator is obtained by ``z -> -theta_s``.

    ``q`` indexes the s variables (0-based).
    """

    q: int
    p_factors: tuple[HornFactor, ...]
    q_factors: tuple[HornFactor, ...]
    delta: int
    n_z: int

    @property
    def p_degree(self) -> int:
        return len(self.p_factors)

    @property
    def q_degree(self) -> int:
        return len(self.q_factors)

    def p_at(self, z: Sequence) -> Fraction:
        return math.prod((f(z) for f in self.p_factors), start=Fraction(1))

    def q_at(self, z: Sequence) -> Fraction:
        return math.prod((f(z) for f in self.q_factors), start=Fraction(1))


def horn_operators(
    forms: Sequence[LinearForm],
    sets: IndexSets,
    J: Sequence[int],
    zeta: Sequence[int],
    Jaux: Sequence[int] | None = None,
) -> list[HornOperator]:
    """One operator per s variable following the P and Q factor recipes."""
    ops = []
    n_z = len(forms[0].coeff_z) if forms else 0
    subs = [f.substitute(J, zeta, Jaux) for f in forms]
    for q in range(n_z):
        p = []
        for a in sets.i_plus[q]:
            for j in range(forms[a].B[q]):
                p.append(HornFactor(a, j, 1, subs[a]))
        qf = []
        for a in sets.i_minus[q]:
            for j in range(-forms[a].B[q]):
                qf.append(HornFactor(a, j, -1, subs[a]))
        delta = forms[0].delta
        ops.append(HornOperator(q, tuple(p), tuple(qf), delta, n_z))
    return ops


@dataclass
class DegreeReport:
    q: int
    p_degree: int
    q_degree: int
    euler: int
    terms: dict[tuple[int, ...], int] = field(default_factory=dict)
    reduced_degree: int | None = None

    @property
    def ok(self) -> bool:
        return self.p_degree == self.q_degree == self.euler

    @property
    def reduced_ok(self) -> bool:
        return self.reduced_degree == self.euler


def fiber_polytopes(phase: PhaseFunction, q: int) -> list[polytope.LatticePolytope]:
    """Newton polytopes of ``f_i + s_i`` (and ``f_q + 1``) in the torus of X_q.

    Coordinates are (x, x') followed by every s except ``s_q``; the s-term of
    the block owning ``s_q`` becomes the origin.
    """
    lay = phase.layout
    keep = list(lay.x_cols()) + list(lay.aux_cols()) + [c for j, c in enumerate(lay.s_cols()) if j != q]
    polys = []
    for b in range(lay.k):
        pts = [tuple(phase.terms[a][c] for c in keep) for a in lay.block_terms(b)]
        polys.append(polytope.hull(pts))
    return polys


def euler_fiber(phase: PhaseFunction, q: int) -> tuple[int, dict[tuple[int, ...], int]]:
    """``|chi(X_q)|`` as the sum of normalized mixed volumes with all a_i >= 1."""
    polys = fiber_polytopes(phase, q)
    dim = polys[0].dim_ambient
    k = len(polys)
    terms: dict[tuple[int, ...], int] = {}
    cache: dict[tuple[int, ...], int] = {}
    for a in itertools.product(range(1, dim + 1), repeat=k):
        if sum(a) != dim:
            continue
        terms[a] = polytope.mixed_volume_cached(polys, list(a), cache)
    return sum(terms.values()), terms


def reduced_degree(gp: GammaProduct, q: int) -> int:
    """P-degree after reflection pairs cancel: ``sum e * delta * c_q`` over numerator factors with ``c_q > 0``."""
    total = Fraction(0)
    for f, e in gp.factors:
        c = f.coeffs[q]
        if c > 0 and e > 0:
            total += e * c * gp.delta
        elif c < 0 and e < 0:
            total += -e * -c * gp.delta
    return int(total)


def horn_degree_check(
    op: HornOperator, phase: PhaseFunction, q: int | None = None, gp: GammaProduct | None = None
) -> DegreeReport:
    q = op.q if q is None else q
    euler, terms = euler_fiber(phase, q)
    red = reduced_degree(gp, q) if gp is not None else None
    return DegreeReport(q, op.p_degree, op.q_degree, euler, terms, red)


@dataclass(frozen=True)
class OreSatoRatio:
    """``R_q(z) = P_q(z) / Q_q(z + delta e_q)``."""

    op: HornOperator

    def numerator(self, z: Sequence) -> Fraction:
        return self.op.p_at(z)

    def denominator(self, z: Sequence) -> Fraction:
        shifted = list(z)
        shifted[self.op.q] += self.op.delta
        return self.op.q_at(shifted)

    def __call__(self, z: Sequence) -> Fraction | None:
        d = self.denominator(z)
        return None if d == 0 else self.numerator(z) / d


def ore_sato(ops: Sequence[HornOperator]) -> list[OreSatoRatio]:
    return [OreSatoRatio(op) for op in ops]


@dataclass
class CompatibilityReport:
    ok: bool
    points: int
    failures: list[tuple[int, int, tuple[Fraction, ...]]] = field(default_factory=list)


def _random_point(rng: random.Random, n: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-60, 60), rng.randint(1, 97)) for _ in range(n))


def compatibility_check(ratios: Sequence[OreSatoRatio], seed: int = 0, n_points: int = 20) -> CompatibilityReport:
    """Exact check of ``R_q(z + d e_r) R_r(z) = R_r(z + d e_q) R_q(z)`` at random points."""
    if len(ratios) < 2:
        return CompatibilityReport(True, 0)
    rng = random.Random(seed)
    n = ratios[0].op.n_z
    d = ratios[0].op.delta
    good = 0
    failures = []
    attempts = 0
    while good < n_points:
        attempts += 1
        if attempts > 50 * n_points:
            raise SamplingError(f"only {good} of {n_points} sample points avoided the denominators")
        z = _random_point(rng, n)
        values = []
        degenerate = False
        for qi, rq in enumerate(ratios):
            for ri, rr in enumerate(ratios):
                if ri <= qi:
                    continue
                zr = list(z)
                zr[ri] += d
                zq = list(z)
                zq[qi] += d
                parts = [rq(zr), rr(z), rr(zq), rq(z)]
                if any(p is None for p in parts):
                    degenerate = True
                    break
                values.append((qi, ri, parts[0] * parts[1] == parts[2] * parts[3]))
            if degenerate:
                break
        if degenerate:
            continue
        good += 1
        failures.extend((qi, ri, z) for qi, ri, ok in values if not ok)
    return CompatibilityReport(not failures, good, failures)


def shifted_sets(op: HornOperator) -> tuple[set[ZForm], set[ZForm]]:
    """The two families of shifted forms compared by the non-resonance condition."""
    plus = {f.zform.shift(f.shift) for f in op.p_factors}
    minus = {f.zform.shift(f.shift) for f in op.q_factors}
    return plus, minus


def non_resonance(op: HornOperator) -> bool:
    plus, minus = shifted_sets(op)
    return not (plus & minus)


def char_symbols(ops: Sequence[HornOperator]) -> list[sympy.Expr]:
    """``P_q(s xi) - s_q^delta Q_q(s xi)`` with J = zeta = 0 already substituted in ``ops``."""
    if not ops:
        return []
    n = ops[0].n_z
    s = sympy.symbols(f"s1:{n + 1}")
    xi = sympy.symbols(f"xi1:{n + 1}")
    theta = [s[i] * xi[i] for i in range(n)]
    z = [-t for t in theta]

    def factor_expr(f: HornFactor) -> sympy.Expr:
        form = f.zform
        expr = sum((sympy.Rational(c.numerator, c.denominator) * zi for c, zi in zip(form.coeffs, z)), sympy.Integer(0))
        expr += sympy.Rational(form.const.numerator, form.const.denominator) + f.shift
        return f.sign * expr

    out = []
    for op in ops:
        p = sympy.Mul(*[factor_expr(f) for f in op.p_factors])
        q = sympy.Mul(*[factor_expr(f) for f in op.q_factors])
        out.append(sympy.expand(p - s[op.q] ** op.delta * q))
    return out


@dataclass
class GrowthReport:
    balanced: bool
    offending: list[int]
    alpha_lower: float
    heuristic: bool = True


def growth_check(numer: Sequence[ZForm], denom: Sequence[ZForm], samples: int = 2000, seed: int = 0) -> GrowthReport:
    """Column-sum balance and a sampled lower bound for the growth exponent alpha."""
    n = len((list(numer) + list(denom))[0].coeffs)
    offending = [
        i for i in range(n) if sum(f.coeffs[i] for f in numer) != sum(f.coeffs[i] for f in denom)
    ]

    def value(z: Sequence[float]) -> float:
        a = sum(abs(sum(float(c) * x for c, x in zip(f.coeffs, z))) for f in numer)
        b = sum(abs(sum(float(c) * x for c, x in zip(f.coeffs, z))) for f in denom)
        return a - b

    best = math.inf
    for i in range(n):
        for sgn in (1, -1):
            e = [0.0] * n
            e[i] = float(sgn)
            best = min(best, value(e))
    rng = random.Random(seed)
    for _ in range(samples):
        v = [rng.gauss(0.0, 1.0) for _ in range(n)]
        norm = math.sqrt(sum(x * x for x in v)) or 1.0
        best = min(best, value([x / norm for x in v]))
    return GrowthReport(not offending, offending, best)


def growth_check_gamma(gp: GammaProduct, samples: int = 2000, seed: int = 0) -> GrowthReport:
    numer = [f for f, e in gp.numerator() for _ in range(e)]
    denom = [f for f, e in gp.denominator() for _ in range(e)]
    return growth_check(numer, denom, samples, seed)
