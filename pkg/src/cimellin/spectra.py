"""Weight vectors, pole spectra, placement transitions and Hodge-type levels."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Sequence

from . import linalg, polytope
from .cayley import CayleyMatrix
from .errors import MismatchError, NoDegreeError, StructuralError
from .mellin import GammaProduct, IndexSets, LinearForm, ZForm, linear_forms

Vec = tuple[Fraction, ...]


@dataclass(frozen=True)
class WeightVector:
    """Column ``index`` of L^-1 split by variable kind."""

    index: int
    w: Vec
    w_aux: Vec
    p: Vec
    q: Vec

    @property
    def trivial(self) -> bool:
        positive = [x for x in self.p if x > 0]
        return len(positive) == 1 and sum(1 for x in self.p if x != 0) == 1


@dataclass(frozen=True)
class WeightCounts:
    n_trivial: int
    n_nontrivial: int
    expected_trivial: int
    expected_nontrivial: int

    @property
    def ok(self) -> bool:
        return (self.n_trivial, self.n_nontrivial) == (self.expected_trivial, self.expected_nontrivial)


def classify_weights(cm: CayleyMatrix) -> tuple[list[WeightVector], WeightCounts]:
    lay = cm.layout
    inv = cm.inverse()
    vecs = []
    for nu in range(cm.size):
        col = [inv[i][nu] for i in range(cm.size)]
        vecs.append(
            WeightVector(
                nu,
                tuple(col[i] for i in lay.x_cols()),
                tuple(col[i] for i in lay.aux_cols()),
                tuple(col[i] for i in lay.s_cols()),
                tuple(col[i] for i in lay.y_cols()),
            )
        )
    n_t = sum(v.trivial for v in vecs)
    big_m = lay.n_x + lay.n_aux
    counts = WeightCounts(n_t, len(vecs) - n_t, lay.n_s, big_m + 1)
    return vecs, counts


def weight_vectors(cm: CayleyMatrix, strict: bool = True) -> list[WeightVector]:
    """Weight vectors of every column; ``strict`` enforces the trivial/nontrivial counts."""
    vecs, counts = classify_weights(cm)
    if strict and not counts.ok:
        raise StructuralError(
            f"{counts.n_trivial} trivial and {counts.n_nontrivial} nontrivial weights, "
            f"expected {counts.expected_trivial} and {counts.expected_nontrivial}"
        )
    return vecs


@dataclass(frozen=True)
class SpectraSet:
    """Union over ``a`` in I+_q of ``{L_a <= 0} cap {z_i >= 0, i != q}`` and its boundary forms."""

    q: int
    boundary: tuple[ZForm, ...]
    n_z: int

    @property
    def halfspaces(self) -> list[tuple[ZForm, str]]:
        out = [(f, "<= 0") for f in self.boundary]
        out += [(ZForm.variable(i, self.n_z), ">= 0") for i in range(self.n_z) if i != self.q]
        return out

    def contains(self, z: Sequence) -> bool:
        if any(Fraction(z[i]) < 0 for i in range(self.n_z) if i != self.q):
            return False
        return any(f(z) <= 0 for f in self.boundary)


def spectra(forms: Sequence[LinearForm], sets: IndexSets, J: Sequence[int], zeta: Sequence[int], q: int) -> SpectraSet:
    n_z = len(forms[0].coeff_z)
    seen: list[ZForm] = []
    for a in sets.i_plus[q]:
        f = forms[a].substitute(J, zeta)
        if f not in seen:
            seen.append(f)
    return SpectraSet(q, tuple(seen), n_z)


@dataclass
class Transition:
    """Placement change between two presentations of one system.

    ``matrix`` is ``L2 . L1^-1`` (terms by terms); ``pullback`` is
    ``C = L1^-1 . L2`` with ``L1 . C = L2``, which carries the Mellin
    parameters of the second presentation to those of the first.
    """

    matrix: list[list[Fraction]]
    pullback: list[list[Fraction]]
    det_ratio: Fraction
    forms_match: bool


def _same_system(cm1: CayleyMatrix, cm2: CayleyMatrix) -> bool:
    l1, l2 = cm1.layout, cm2.layout
    if (l1.n_x, l1.n_aux, l1.n_s, l1.k) != (l2.n_x, l2.n_aux, l2.n_s, l2.k):
        return False
    keep = list(l1.x_cols()) + list(l1.s_cols()) + list(l1.y_cols())
    rows1 = sorted(tuple(r[c] for c in keep) for r in cm1.l)
    rows2 = sorted(tuple(r[c] for c in keep) for r in cm2.l)
    return rows1 == rows2


def spectra_transition(cm1: CayleyMatrix, cm2: CayleyMatrix) -> Transition:
    if len(cm1.l) != len(cm2.l) or not _same_system(cm1, cm2):
        raise MismatchError("the two Cayley matrices do not present the same system")
    inv1 = cm1.inverse()
    inv2 = cm2.inverse()
    matrix = linalg.matmul(cm2.l, inv1)
    pullback = linalg.matmul(inv1, cm2.l)
    # Forms of cm2 evaluated at pulled-back parameters equal the forms of cm1.
    forms_match = linalg.matmul(pullback, inv2) == [[Fraction(x) for x in r] for r in inv1]
    return Transition(matrix, pullback, Fraction(cm2.det, cm1.det), forms_match)


def pi_polytope(cm: CayleyMatrix) -> polytope.LatticePolytope:
    """Hull of the origin and the non-s terms projected to (x, x', y)."""
    lay = cm.layout
    keep = list(lay.x_cols()) + list(lay.aux_cols()) + list(lay.y_cols())
    pts = [tuple([0] * len(keep))]
    for a, kind in enumerate(lay.term_kinds):
        if kind != "s":
            pts.append(tuple(cm.l[a][c] for c in keep))
    return polytope.hull(pts)


def _point(cm: CayleyMatrix, J: Sequence[int], zeta: Sequence[int], Jaux: Sequence[int] | None) -> tuple[int, ...]:
    Jaux = list(Jaux) if Jaux is not None else [0] * cm.layout.n_aux
    return tuple(j + 1 for j in J) + tuple(j + 1 for j in Jaux) + tuple(t + 1 for t in zeta)


@dataclass(frozen=True)
class HodgeLevel:
    r: int
    degree: int
    form_sum: Fraction
    consistent: bool


def hodge_level(cm: CayleyMatrix, J: Sequence[int], zeta: Sequence[int], Jaux: Sequence[int] | None = None) -> HodgeLevel:
    """Level ``r = M + k + 1 - d`` with d the point degree of (J+1, J'+1, zeta+1) in Pi.

    The cross-check reads d off the forms: on Pi the non-s forms at z = 0
    are barycentric coordinates, so d is the ceiling of their sum once all
    of them are nonnegative.
    """
    lay = cm.layout
    pi = pi_polytope(cm)
    e = _point(cm, J, zeta, Jaux)
    d = polytope.point_degree(pi, e)
    forms = linear_forms(cm)
    zero = [0] * lay.n_s
    values = [f.evaluate(J, zero, zeta, Jaux) for f, kind in zip(forms, lay.term_kinds) if kind != "s"]
    if any(v < 0 for v in values):
        raise NoDegreeError(f"{e} lies outside the cone over Pi")
    total = sum(values, Fraction(0))
    big_m = lay.n_x + lay.n_aux
    return HodgeLevel(big_m + lay.k + 1 - d, d, total, ceil(total) == d)


def _consistent(rows: list[ZForm]) -> bool:
    a = [list(f.coeffs) for f in rows]
    aug = [list(f.coeffs) + [-f.const] for f in rows]
    return linalg.rank(a) == linalg.rank(aug)


def weight_level(
    forms: Sequence[LinearForm], sets: IndexSets, J: Sequence[int], zeta: Sequence[int], l: int
) -> int:
    """Largest number of forms of I+_l vanishing simultaneously at some z.

    Identical forms are grouped and counted with multiplicity.
    """
    groups: dict[ZForm, int] = {}
    for a in sets.i_plus[l]:
        f = forms[a].substitute(J, zeta)
        groups[f] = groups.get(f, 0) + 1
    distinct = sorted(groups)
    best = 0
    for size in range(len(distinct), 0, -1):
        for subset in itertools.combinations(distinct, size):
            total = sum(groups[f] for f in subset)
            if total > best and _consistent(list(subset)):
                best = total
    return best


@dataclass(frozen=True)
class JordanReport:
    block: int
    count: int
    witness: Vec | None
    box: int
    note: str = "lower bound certified, upper bound heuristic (finite search box)"


def jordan_bound(
    forms: Sequence[LinearForm], J: Sequence[int], zeta: Sequence[int], box: int | None = None
) -> JordanReport:
    """Largest family of forms taking values in ``{0, -1, ..., -box}`` at a point with some ``z_i`` in Z<=0.

    Candidate points are cut out by k independent equations drawn from the
    forms and the coordinate conditions ``z_i = -m``; the block size is
    ``count - k + 1``.
    """
    subs = [f.substitute(J, zeta) for f in forms]
    n = len(forms[0].coeff_z)
    delta = forms[0].delta
    box = 3 * delta if box is None else box
    eqs = [(f, "form") for f in subs] + [(ZForm.variable(i, n), "coord") for i in range(n)]
    best = -1
    witness = None
    seen: set[Vec] = set()
    for combo in itertools.combinations(eqs, n):
        mat = [list(f.coeffs) for f, _ in combo]
        if linalg.det(mat) == 0:
            continue
        inv = linalg.inverse(mat)
        for values in itertools.product(range(box + 1), repeat=n):
            rhs = [-v - f.const for v, (f, _) in zip(values, combo)]
            z = tuple(sum((inv[i][j] * rhs[j] for j in range(n)), Fraction(0)) for i in range(n))
            if z in seen:
                continue
            seen.add(z)
            if not any(x.denominator == 1 and x <= 0 for x in z):
                continue
            count = 0
            for f in subs:
                v = f(z)
                if v.denominator == 1 and -box <= v <= 0:
                    count += 1
            if count > best:
                best, witness = count, z
    if best < n:
        return JordanReport(1, max(best, 0), witness, box)
    return JordanReport(best - n + 1, best, witness, box)


def jordan_bound_gamma(gp: GammaProduct) -> int:
    """Largest pole order of the canonical numerator at a single point: a cross-check for one variable."""
    if gp.n_vars != 1:
        raise StructuralError("pole-order cross-check implemented for one z variable")
    counts: dict[Fraction, int] = {}
    for f, e in gp.numerator():
        root = -f.const / f.coeffs[0]
        counts[root] = counts.get(root, 0) + e
    return max(counts.values(), default=0)
