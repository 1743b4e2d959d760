"""Linear forms of the Mellin transform and canonical Gamma products."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from . import linalg
from .cayley import CayleyMatrix

Vec = tuple[Fraction, ...]


def _fracs(xs: Iterable) -> Vec:
    return tuple(Fraction(x) for x in xs)


def _fmt_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True, order=True)
class ZForm:
    """Affine form ``sum coeffs[i] * z_i + const`` with rational coefficients."""

    coeffs: Vec
    const: Fraction = Fraction(0)

    @classmethod
    def make(cls, coeffs: Iterable, const=0) -> "ZForm":
        return cls(_fracs(coeffs), Fraction(const))

    @classmethod
    def variable(cls, i: int, n: int) -> "ZForm":
        return cls.make([1 if j == i else 0 for j in range(n)])

    def __call__(self, z: Sequence) -> Fraction:
        return sum((c * Fraction(v) for c, v in zip(self.coeffs, z)), self.const)

    def __add__(self, other: "ZForm") -> "ZForm":
        return ZForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.const + other.const)

    def __neg__(self) -> "ZForm":
        return ZForm(tuple(-a for a in self.coeffs), -self.const)

    def __sub__(self, other: "ZForm") -> "ZForm":
        return self + (-other)

    def scale(self, c) -> "ZForm":
        c = Fraction(c)
        return ZForm(tuple(a * c for a in self.coeffs), self.const * c)

    def shift(self, c) -> "ZForm":
        return ZForm(self.coeffs, self.const + Fraction(c))

    def reflect(self) -> "ZForm":
        """The form ``1 - self``."""
        return (-self).shift(1)

    def is_constant(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def leading_sign(self) -> int:
        for c in self.coeffs:
            if c:
                return 1 if c > 0 else -1
        return 0

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            name = f"z{i + 1}"
            if c == 1:
                parts.append(f"+ {name}")
            elif c == -1:
                parts.append(f"- {name}")
            elif c > 0:
                parts.append(f"+ {_fmt_frac(c)}*{name}")
            else:
                parts.append(f"- {_fmt_frac(-c)}*{name}")
        if self.const or not parts:
            parts.append(f"+ {_fmt_frac(self.const)}" if self.const >= 0 else f"- {_fmt_frac(-self.const)}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


@dataclass(frozen=True)
class LinearForm:
    """Affine function of (J+1, J'+1, z, zeta+1) read off one column of L^-1.

    ``delta`` is the common denominator; ``A``, ``C``, ``B``, ``D`` are the
    integer numerators of the J, J', z and zeta coefficients.
    """

    coeff_J: Vec
    coeff_Jaux: Vec
    coeff_z: Vec
    coeff_zeta: Vec
    delta: int
    index: int = 0
    const: Fraction = Fraction(0)

    @property
    def A(self) -> list[int]:
        return [int(c * self.delta) for c in self.coeff_J]

    @property
    def C(self) -> list[int]:
        return [int(c * self.delta) for c in self.coeff_Jaux]

    @property
    def B(self) -> list[int]:
        return [int(c * self.delta) for c in self.coeff_z]

    @property
    def D(self) -> list[int]:
        return [int(c * self.delta) for c in self.coeff_zeta]

    def content(self) -> int:
        g = 0
        for x in self.A + self.C + self.B + self.D:
            g = gcd(g, x)
        return g

    def substitute(self, J: Sequence[int], zeta: Sequence[int], Jaux: Sequence[int] | None = None) -> ZForm:
        """Fix J, J', zeta and keep z symbolic."""
        if Jaux is None:
            Jaux = [0] * len(self.coeff_Jaux)
        c = self.const
        c += sum((a * (Fraction(j) + 1) for a, j in zip(self.coeff_J, J)), Fraction(0))
        c += sum((a * (Fraction(j) + 1) for a, j in zip(self.coeff_Jaux, Jaux)), Fraction(0))
        c += sum((d * (Fraction(t) + 1) for d, t in zip(self.coeff_zeta, zeta)), Fraction(0))
        return ZForm(self.coeff_z, c)

    def evaluate(self, J: Sequence[int], z: Sequence, zeta: Sequence[int], Jaux: Sequence[int] | None = None) -> Fraction:
        return self.substitute(J, zeta, Jaux)(z)


def linear_forms(cm: CayleyMatrix, primitive: bool = False) -> list[LinearForm]:
    """One form per term: ``(J+1, J'+1, z, zeta+1)`` dotted with column a of L^-1.

    With ``primitive`` each form is carried over its own denominator
    ``delta / content`` so that its integer data is primitive; the values
    of the forms are unchanged.
    """
    lay = cm.layout
    inv = cm.inverse()
    forms = []
    for a in range(cm.size):
        col = [inv[i][a] for i in range(cm.size)]
        form = LinearForm(
            coeff_J=tuple(col[i] for i in lay.x_cols()),
            coeff_Jaux=tuple(col[i] for i in lay.aux_cols()),
            coeff_z=tuple(col[i] for i in lay.s_cols()),
            coeff_zeta=tuple(col[i] for i in lay.y_cols()),
            delta=cm.delta,
            index=a,
        )
        if primitive:
            g = form.content()
            if g > 1:
                form = LinearForm(form.coeff_J, form.coeff_Jaux, form.coeff_z, form.coeff_zeta, cm.delta // g, a)
        forms.append(form)
    return forms


@dataclass
class SumRuleReport:
    ok: bool
    failures: list[str] = field(default_factory=list)


def verify_sum_rules(forms: Sequence[LinearForm]) -> SumRuleReport:
    """Vanishing of the A, B, C column sums and ``sum_a L_a = sum_l (zeta_l + 1)``."""
    failures = []
    if not forms:
        return SumRuleReport(True)
    f0 = forms[0]
    for name, attr in (("A", "coeff_J"), ("B", "coeff_z"), ("C", "coeff_Jaux")):
        for i in range(len(getattr(f0, attr))):
            total = sum(getattr(f, attr)[i] for f in forms)
            if total != 0:
                failures.append(f"sum of {name}_{i + 1} is {total}, expected 0")
    for l in range(len(f0.coeff_zeta)):
        total = sum(f.coeff_zeta[l] for f in forms)
        if total != 1:
            failures.append(f"coefficient of (zeta_{l + 1}+1) in the sum of all forms is {total}, expected 1")
    return SumRuleReport(not failures, failures)


@dataclass(frozen=True)
class IndexSets:
    """Sign classes of the integer z- and J'-coefficients, 0-based term indices."""

    i_plus: tuple[tuple[int, ...], ...]
    i_minus: tuple[tuple[int, ...], ...]
    i_zero: tuple[tuple[int, ...], ...]
    j_plus: tuple[tuple[int, ...], ...] = ()
    j_minus: tuple[tuple[int, ...], ...] = ()
    j_zero: tuple[tuple[int, ...], ...] = ()


def _classify(values: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    plus = tuple(a for a, v in enumerate(values) if v > 0)
    minus = tuple(a for a, v in enumerate(values) if v < 0)
    zero = tuple(a for a, v in enumerate(values) if v == 0)
    return plus, minus, zero


def index_sets(forms: Sequence[LinearForm]) -> IndexSets:
    n_z = len(forms[0].coeff_z) if forms else 0
    n_aux = len(forms[0].coeff_Jaux) if forms else 0
    zs = [_classify([f.B[q] for f in forms]) for q in range(n_z)]
    js = [_classify([f.C[r] for f in forms]) for r in range(n_aux)]
    return IndexSets(
        tuple(z[0] for z in zs),
        tuple(z[1] for z in zs),
        tuple(z[2] for z in zs),
        tuple(j[0] for j in js),
        tuple(j[1] for j in js),
        tuple(j[2] for j in js),
    )


@dataclass(frozen=True)
class GammaProduct:
    """Signed multiset of Gamma factors in canonical reflection form.

    Each non-constant factor is stored as the representative of
    ``{l, 1 - l}`` whose first nonzero z-coefficient is positive, the
    exponent flipping sign when ``Gamma(l)`` is traded for
    ``Gamma(1 - l)^-1``. The dropped prefactor is only known modulo
    Delta-periodic units; ``constants`` keeps z-free factors for reference.
    """

    factors: tuple[tuple[ZForm, int], ...]
    delta: int = 1
    constants: tuple[tuple[Fraction, int], ...] = ()

    @classmethod
    def build(cls, raw: Iterable[tuple[ZForm, int]], delta: int = 1) -> "GammaProduct":
        acc: dict[ZForm, int] = {}
        consts: dict[Fraction, int] = {}
        for form, mult in raw:
            if mult == 0:
                continue
            if form.is_constant():
                consts[form.const] = consts.get(form.const, 0) + mult
                continue
            if form.leading_sign() < 0:
                form, mult = form.reflect(), -mult
            acc[form] = acc.get(form, 0) + mult
        factors = tuple(sorted(((f, e) for f, e in acc.items() if e != 0), key=lambda fe: (fe[0].coeffs, fe[0].const)))
        constants = tuple(sorted((c, e) for c, e in consts.items() if e != 0))
        return cls(factors, delta, constants)

    @property
    def constant_at_pole(self) -> bool:
        """A dropped constant factor sits at a pole of Gamma (value in Z<=0)."""
        return any(c.denominator == 1 and c <= 0 and e > 0 for c, e in self.constants)

    @property
    def n_vars(self) -> int:
        return len(self.factors[0][0].coeffs) if self.factors else 0

    def numerator(self) -> list[tuple[ZForm, int]]:
        return [(f, e) for f, e in self.factors if e > 0]

    def denominator(self) -> list[tuple[ZForm, int]]:
        return [(f, -e) for f, e in self.factors if e < 0]

    def degree_balance(self) -> tuple[Vec, Vec]:
        """Weighted z-coefficient sums of numerator and denominator."""
        n = self.n_vars
        num = [Fraction(0)] * n
        den = [Fraction(0)] * n
        for f, e in self.factors:
            target = num if e > 0 else den
            for i, c in enumerate(f.coeffs):
                target[i] += abs(e) * c
        return tuple(num), tuple(den)

    def __str__(self) -> str:
        def render(items: list[tuple[ZForm, int]]) -> str:
            if not items:
                return "1"
            out = []
            for f, e in items:
                s = f"Γ({f})"
                out.append(s if e == 1 else f"{s}^{e}")
            return " ".join(out)

        num, den = self.numerator(), self.denominator()
        text = render(num)
        if den:
            text += " / " + (render(den) if len(den) == 1 else f"({render(den)})")
        return text


def gamma_product(
    forms: Sequence[LinearForm], J: Sequence[int], zeta: Sequence[int], Jaux: Sequence[int] | None = None
) -> GammaProduct:
    delta = max((f.delta for f in forms), default=1)
    return GammaProduct.build(((f.substitute(J, zeta, Jaux), 1) for f in forms), delta)


def gamma_equivalent(g1: GammaProduct, g2: GammaProduct) -> bool:
    """Equality modulo the reflection involution (canonical forms compared)."""
    c1 = GammaProduct.build(g1.factors)
    c2 = GammaProduct.build(g2.factors)
    return c1.factors == c2.factors


def gamma_from_terms(num: Iterable[ZForm], den: Iterable[ZForm] = (), delta: int = 1) -> GammaProduct:
    """Convenience constructor: product of Gamma(num) over product of Gamma(den)."""
    raw = [(f, 1) for f in num] + [(f, -1) for f in den]
    return GammaProduct.build(raw, delta)


@dataclass(frozen=True)
class PoleFamily:
    """``{z : l(z) in Z<=0 for every l in forms}`` as base point plus cone generators."""

    forms: tuple[ZForm, ...]
    base_point: Vec
    directions: tuple[Vec, ...]
    order: int

    def point(self, steps: Sequence[int]) -> Vec:
        return tuple(
            b + sum((Fraction(n) * d[i] for n, d in zip(steps, self.directions)), Fraction(0))
            for i, b in enumerate(self.base_point)
        )


def support_q(gp: GammaProduct, q: int) -> list[PoleFamily]:
    """Pole lattices of the numerator factors that grow with ``z_q``.

    Factors of positive exponent whose ``z_q`` coefficient is positive are
    combined in subsets of size equal to the number of z variables; each
    independent subset yields the affine lattice where all of its forms are
    nonpositive integers. ``order`` sums the multiplicities of the subset.
    """
    cands = [(f, e) for f, e in gp.factors if e > 0 and f.coeffs[q] > 0]
    n = gp.n_vars
    families = []
    for subset in itertools.combinations(cands, n):
        m = [list(f.coeffs) for f, _ in subset]
        if linalg.det(m) == 0:
            continue
        inv = linalg.inverse(m)
        base = tuple(sum((inv[i][j] * (-subset[j][0].const) for j in range(n)), Fraction(0)) for i in range(n))
        dirs = tuple(tuple(-inv[i][j] for i in range(n)) for j in range(n))
        families.append(PoleFamily(tuple(f for f, _ in subset), base, dirs, sum(e for _, e in subset)))
    return families
