"""Phase function, auxiliary-variable placement and the Cayley exponent matrix."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import (
    DegeneracyError,
    DimensionError,
    NotSimpliciableError,
    PlacementRuleError,
    ShapeError,
)

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class LaurentSystem:
    """k Laurent polynomials with unit coefficients in N variables.

    ``deformed[q]`` says whether polynomial q receives a deformation
    parameter ``s`` (the term ``y_q s_q``). Polynomials of the shape
    ``product + 1`` used by the projective and mirror constructions are not
    deformed and carry their constant as the zero exponent vector.
    """

    n_vars: int
    polys: tuple[tuple[Exponent, ...], ...]
    names: tuple[str, ...] = ()
    deformed: tuple[bool, ...] = ()
    mirror_partition: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self) -> None:
        polys = tuple(tuple(tuple(int(e) for e in mono) for mono in p) for p in self.polys)
        object.__setattr__(self, "polys", polys)
        if not polys:
            raise DimensionError("a system needs at least one polynomial")
        for q, p in enumerate(polys):
            if not p:
                raise DimensionError(f"polynomial {q + 1} is empty")
            if len(set(p)) != len(p):
                raise DimensionError(f"polynomial {q + 1} repeats an exponent vector")
            for mono in p:
                if len(mono) != self.n_vars:
                    raise DimensionError(f"polynomial {q + 1}: exponent {mono} has wrong length")
        if not self.names:
            object.__setattr__(self, "names", tuple(f"x{i + 1}" for i in range(self.n_vars)))
        elif len(self.names) != self.n_vars:
            raise DimensionError("names must match n_vars")
        if not self.deformed:
            object.__setattr__(self, "deformed", tuple(True for _ in polys))
        elif len(self.deformed) != len(polys):
            raise DimensionError("deformed flags must match the polynomial count")

    @property
    def k(self) -> int:
        return len(self.polys)

    @property
    def n_deformed(self) -> int:
        return sum(self.deformed)

    @property
    def term_count(self) -> int:
        return sum(len(p) for p in self.polys) + self.n_deformed


@dataclass(frozen=True)
class AuxPlacement:
    """``assignments[j]`` is the term index (0-based) multiplied by ``x'_{j+1}``."""

    assignments: tuple[int, ...] = ()


@dataclass(frozen=True)
class Layout:
    """Row and column bookkeeping shared by phases and Cayley matrices.

    Columns are ordered (x, x', s, y); rows follow the phase term order.
    """

    n_x: int
    n_aux: int
    s_polys: tuple[int, ...]
    k: int
    term_blocks: tuple[int, ...]
    term_kinds: tuple[str, ...]
    term_monos: tuple[int | None, ...]
    term_labels: tuple[str, ...]
    var_order: tuple[str, ...]

    @property
    def n_s(self) -> int:
        return len(self.s_polys)

    @property
    def size(self) -> int:
        return len(self.term_blocks)

    def x_cols(self) -> range:
        return range(0, self.n_x)

    def aux_cols(self) -> range:
        return range(self.n_x, self.n_x + self.n_aux)

    def s_cols(self) -> range:
        start = self.n_x + self.n_aux
        return range(start, start + self.n_s)

    def y_cols(self) -> range:
        start = self.n_x + self.n_aux + self.n_s
        return range(start, start + self.k)

    def s_term(self, j: int) -> int:
        """Row index of the term ``y_q s_q`` for the j-th s variable."""
        q = self.s_polys[j]
        for a, (b, kind) in enumerate(zip(self.term_blocks, self.term_kinds)):
            if b == q and kind == "s":
                return a
        raise ShapeError(f"no s-term for s variable {j + 1}")

    def block_terms(self, q: int) -> list[int]:
        return [a for a, b in enumerate(self.term_blocks) if b == q]


@dataclass(frozen=True)
class PhaseFunction:
    system: LaurentSystem
    placement: AuxPlacement
    terms: tuple[tuple[int, ...], ...]
    m: int
    balance: str
    layout: Layout


@dataclass(frozen=True)
class CayleyMatrix:
    l: linalg.IntMatrix
    delta: int
    t: linalg.IntMatrix
    var_order: tuple[str, ...]
    det: int
    layout: Layout
    phase: PhaseFunction | None = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return len(self.l)

    def inverse(self) -> linalg.RatMatrix:
        return [[Fraction(x, self.delta) for x in row] for row in self.t]


def _mono_label(expo: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for e, name in zip(expo, names):
        if e == 1:
            parts.append(name)
        elif e != 0:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def _check_rules(sys: LaurentSystem, modified: set[tuple[int, int]]) -> None:
    for q, p in enumerate(sys.polys):
        if all((q, i) in modified for i in range(len(p))):
            raise PlacementRuleError("b", q, f"every monomial of polynomial {q + 1} carries an auxiliary variable")
    for j in range(sys.n_vars):
        containing = [(q, i) for q, p in enumerate(sys.polys) for i, mono in enumerate(p) if mono[j] != 0]
        if containing and all(c in modified for c in containing):
            raise PlacementRuleError("a", j, f"every monomial containing {sys.names[j]} carries an auxiliary variable")


def build_phase(sys: LaurentSystem, placement: AuxPlacement = AuxPlacement()) -> PhaseFunction:
    """Terms of ``F = sum_q y_q (f_q [+ s_q])`` with auxiliaries inserted."""
    s_polys = tuple(q for q in range(sys.k) if sys.deformed[q])
    blocks: list[int] = []
    kinds: list[str] = []
    monos: list[int | None] = []
    for q, p in enumerate(sys.polys):
        for i in range(len(p)):
            blocks.append(q)
            kinds.append("mono")
            monos.append(i)
        if sys.deformed[q]:
            blocks.append(q)
            kinds.append("s")
            monos.append(None)
    n_terms = len(blocks)
    m = len(placement.assignments)
    if len(set(placement.assignments)) != m:
        raise ShapeError("a term may receive at most one auxiliary variable")
    modified: set[tuple[int, int]] = set()
    aux_of: dict[int, int] = {}
    for j, a in enumerate(placement.assignments):
        if not 0 <= a < n_terms:
            raise ShapeError(f"placement index {a} out of range 0..{n_terms - 1}")
        if kinds[a] != "mono":
            raise ShapeError(f"placement index {a} is an s-term; auxiliaries go on monomials")
        modified.add((blocks[a], monos[a]))
        aux_of[a] = j
    _check_rules(sys, modified)

    n_s = len(s_polys)
    width = sys.n_vars + m + n_s + sys.k
    aux_names = [f"x'{j + 1}" for j in range(m)]
    s_names = [f"s{j + 1}" for j in range(n_s)]
    y_names = [f"y{q + 1}" for q in range(sys.k)]
    var_order = tuple(sys.names) + tuple(aux_names) + tuple(s_names) + tuple(y_names)
    rows = []
    labels = []
    for a in range(n_terms):
        q = blocks[a]
        row = [0] * width
        row[sys.n_vars + m + n_s + q] = 1
        if kinds[a] == "mono":
            expo = sys.polys[q][monos[a]]
            row[: sys.n_vars] = list(expo)
            label = _mono_label(expo, sys.names)
        else:
            j = s_polys.index(q)
            row[sys.n_vars + m + j] = 1
            label = s_names[j]
        if a in aux_of:
            row[sys.n_vars + aux_of[a]] = 1
            label = f"{label}*{aux_names[aux_of[a]]}" if label != "1" else aux_names[aux_of[a]]
        rows.append(tuple(row))
        labels.append(f"{y_names[q]}*{label}" if label != "1" else y_names[q])
    if n_terms == width:
        balance = "square"
    elif n_terms > width:
        balance = "deficient"
    else:
        balance = "abundant"
    layout = Layout(
        n_x=sys.n_vars,
        n_aux=m,
        s_polys=s_polys,
        k=sys.k,
        term_blocks=tuple(blocks),
        term_kinds=tuple(kinds),
        term_monos=tuple(monos),
        term_labels=tuple(labels),
        var_order=var_order,
    )
    return PhaseFunction(sys, placement, tuple(rows), m, balance, layout)


def cayley_matrix(phase: PhaseFunction) -> CayleyMatrix:
    if phase.balance != "square":
        raise ShapeError(
            f"phase is {phase.balance}: {len(phase.terms)} terms for {len(phase.layout.var_order)} variables"
        )
    l = [list(r) for r in phase.terms]
    return from_matrix(l, phase.layout, phase)


def from_matrix(l: linalg.IntMatrix, layout: Layout, phase: PhaseFunction | None = None) -> CayleyMatrix:
    """Wrap an explicit square matrix with its row/column bookkeeping."""
    n, cols = len(l), len(l[0]) if l else 0
    if n != cols or n != layout.size:
        raise ShapeError(f"expected a {layout.size}x{layout.size} matrix, got {n}x{cols}")
    d = linalg.det(l)
    if d == 0:
        raise DegeneracyError("det L = 0: this placement does not simplicialize the system")
    delta, t = linalg.scaled_inverse(l)
    return CayleyMatrix([list(r) for r in l], delta, t, layout.var_order, int(d), layout, phase)


def auto_placement(sys: LaurentSystem) -> AuxPlacement:
    """First admissible placement in lexicographic order of term indices."""
    base = build_phase(sys)
    m = len(base.terms) - len(base.layout.var_order)
    if m < 0:
        raise NotSimpliciableError(f"system is abundant ({len(base.terms)} terms, {len(base.layout.var_order)} variables)")
    candidates = [a for a, kind in enumerate(base.layout.term_kinds) if kind == "mono"]
    for combo in itertools.combinations(candidates, m):
        placement = AuxPlacement(tuple(combo))
        try:
            phase = build_phase(sys, placement)
        except PlacementRuleError:
            continue
        if linalg.det([list(r) for r in phase.terms]) != 0:
            return placement
    raise NotSimpliciableError(f"no admissible placement of {m} auxiliary variables has det L != 0")


def check_nondegenerate(cm: CayleyMatrix | Sequence[Sequence[int]]) -> bool:
    """Nonsingularity of L, the determinant criterion for nondegeneracy."""
    l = cm.l if isinstance(cm, CayleyMatrix) else cm
    try:
        return linalg.det(l) != 0
    except DimensionError:
        return False


def aux_count_formula(n: int, k: int) -> int:
    """Auxiliary count ``(N-1)(k-1)-1`` predicted for A'Campo shaped systems."""
    return (n - 1) * (k - 1) - 1

