"""Exact lattice polytopes: hulls, volumes, mixed volumes, Ehrhart data."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, comb, factorial, floor, gcd
from typing import Iterable, Sequence

from . import linalg
from .errors import DimensionError, NoDegreeError

Point = tuple[int, ...]


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _sub(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b))


def _dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def _normal(pts: Sequence[Point]) -> tuple[int, ...]:
    """Integer normal to the hyperplane through d points in Z^d (cofactor minors)."""
    d = len(pts[0])
    rows = [_sub(p, pts[0]) for p in pts[1:]]
    normal = []
    for j in range(d):
        minor = [[r[c] for c in range(d) if c != j] for r in rows]
        normal.append((-1) ** j * linalg.det(minor) if minor else 1)
    return _primitive(normal)


@dataclass
class _Facet:
    verts: tuple[int, ...]
    normal: tuple[int, ...]
    offset: int


def _full_hull(pts: list[Point]) -> list[_Facet]:
    """Beneath-beyond triangulated boundary of full-dimensional points in Z^d."""
    d = len(pts[0])
    if d == 1:
        lo = min(range(len(pts)), key=lambda i: pts[i][0])
        hi = max(range(len(pts)), key=lambda i: pts[i][0])
        return [_Facet((hi,), (1,), pts[hi][0]), _Facet((lo,), (-1,), -pts[lo][0])]
    simplex = [0]
    edges: list[tuple[int, ...]] = []
    for i in range(1, len(pts)):
        cand = edges + [_sub(pts[i], pts[0])]
        if linalg.rank(cand) == len(cand):
            simplex.append(i)
            edges = cand
            if len(simplex) == d + 1:
                break
    interior = [sum(pts[i][c] for i in simplex) for c in range(d)]
    scale = d + 1

    def make(verts: tuple[int, ...]) -> _Facet:
        normal = _normal([pts[v] for v in verts])
        offset = _dot(normal, pts[verts[0]])
        if _dot(normal, interior) > scale * offset:
            normal = tuple(-x for x in normal)
            offset = -offset
        return _Facet(tuple(sorted(verts)), normal, offset)

    facets = [make(tuple(v for v in simplex if v != skip)) for skip in simplex]
    in_simplex = set(simplex)
    for i, p in enumerate(pts):
        if i in in_simplex:
            continue
        visible = [f for f in facets if _dot(f.normal, p) > f.offset]
        if not visible:
            continue
        ridge_count: dict[tuple[int, ...], int] = {}
        for f in visible:
            for ridge in itertools.combinations(f.verts, d - 1):
                ridge_count[ridge] = ridge_count.get(ridge, 0) + 1
        horizon = [r for r, c in ridge_count.items() if c == 1]
        vis_ids = {id(f) for f in visible}
        facets = [f for f in facets if id(f) not in vis_ids]
        facets.extend(make(r + (i,)) for r in horizon)
    return facets


def _lattice_frame(points: Sequence[Point]) -> tuple[Point, list[list[int]], list[list[int]]]:
    """Origin, lattice basis of the saturated direction lattice, and span equations."""
    origin = min(points)
    diffs = [_sub(p, origin) for p in points if p != origin]
    n = len(origin)
    if not diffs:
        return origin, [], [[int(i == j) for j in range(n)] for i in range(n)]
    equations = linalg.integer_kernel(diffs)
    if equations:
        basis = linalg.integer_kernel(equations)
    else:
        basis = [[int(i == j) for j in range(n)] for i in range(n)]
    return origin, basis, equations


def _coords(basis: list[list[int]], v: Sequence[int]) -> tuple[int, ...]:
    sol = linalg.solve(linalg.transpose(basis), list(v))
    if sol is None or any(x.denominator != 1 for x in sol):
        raise DimensionError("point outside the lattice of the affine span")
    return tuple(int(x) for x in sol)


@dataclass
class LatticePolytope:
    """Convex hull of lattice points with exact H- and V-data.

    ``facets`` are ambient inequalities ``normal . x <= offset``; for a
    lower-dimensional polytope ``equations`` pin the affine span, and all
    volume and counting work happens in lattice coordinates of that span.
    """

    dim_ambient: int
    dim: int
    vertices: tuple[Point, ...]
    facets: tuple[tuple[tuple[int, ...], int], ...]
    equations: tuple[tuple[tuple[int, ...], int], ...]
    origin: Point = field(repr=False)
    basis: list[list[int]] = field(repr=False)
    local_points: list[Point] = field(repr=False)
    local_facets: list[tuple[tuple[int, ...], int]] = field(repr=False)
    triangulation: list[tuple[Point, ...]] = field(repr=False)

    def to_local(self, x: Sequence[int]) -> tuple[int, ...]:
        return _coords(self.basis, _sub(x, self.origin)) if self.basis else ()

    def contains(self, x: Sequence) -> bool:
        if any(_dot(w, x) != r for w, r in self.equations):
            return False
        return all(_dot(c, x) <= b for c, b in self.facets)

    def minimal_face_dim(self, x: Sequence) -> int:
        """Dimension of the smallest face containing x (x assumed inside)."""
        tight = [c for c, b in self.facets if _dot(c, x) == b]
        return self.dim - (linalg.rank(tight) if tight else 0)


def hull(points: Iterable[Sequence[int]]) -> LatticePolytope:
    pts = sorted({tuple(int(v) for v in p) for p in points})
    if not pts:
        raise DimensionError("hull of an empty point set")
    n = len(pts[0])
    origin, basis, equations = _lattice_frame(pts)
    eqs = tuple((tuple(w), _dot(w, origin)) for w in equations)
    r = len(basis)
    if r == 0:
        return LatticePolytope(n, 0, (origin,), (), eqs, origin, [], [()], [], [])
    local = [_coords(basis, _sub(p, origin)) for p in pts]
    tri = _full_hull(local)
    hyperplanes: dict[tuple[tuple[int, ...], int], list[_Facet]] = {}
    for f in tri:
        hyperplanes.setdefault((f.normal, f.offset), []).append(f)
    local_facets = sorted(hyperplanes)
    used = sorted({v for f in tri for v in f.verts})
    vertex_ids = []
    for v in used:
        tight = [c for c, b in local_facets if _dot(c, local[v]) == b]
        if linalg.rank(tight) == r:
            vertex_ids.append(v)
    # Lift each local facet to an ambient functional agreeing on the span.
    amb_facets = []
    bt = linalg.transpose(basis)
    for c, b in local_facets:
        lift = linalg.solve(linalg.transpose(bt), list(c))
        den = 1
        for x in lift:
            den = den * x.denominator // gcd(den, x.denominator)
        cint = [int(x * den) for x in lift]
        amb_facets.append((tuple(cint), b * den + _dot(cint, origin)))
    triangulation = [tuple(local[v] for v in f.verts) for f in tri]
    return LatticePolytope(
        dim_ambient=n,
        dim=r,
        vertices=tuple(pts[v] for v in vertex_ids),
        facets=tuple(amb_facets),
        equations=eqs,
        origin=origin,
        basis=basis,
        local_points=[local[v] for v in vertex_ids],
        local_facets=local_facets,
        triangulation=triangulation,
    )


def normalized_volume(p: LatticePolytope) -> int:
    """``dim! * vol`` measured in the lattice of the affine span."""
    if p.dim == 0:
        return 1
    ref = min(p.local_points)
    total = 0
    for simplex in p.triangulation:
        if ref in simplex:
            continue
        total += abs(linalg.det([_sub(q, ref) for q in simplex]))
    return total


def full_volume(p: LatticePolytope) -> int:
    """``n! * vol_n`` in the ambient space; zero unless full-dimensional."""
    return normalized_volume(p) if p.dim == p.dim_ambient else 0


def minkowski_sum(polys: Sequence[LatticePolytope], mults: Sequence[int] | None = None) -> LatticePolytope:
    if mults is None:
        mults = [1] * len(polys)
    n = polys[0].dim_ambient
    acc: set[Point] = {tuple([0] * n)}
    for p, m in zip(polys, mults):
        if m == 0:
            continue
        verts = [tuple(m * x for x in v) for v in p.vertices]
        acc = {tuple(a + b for a, b in zip(u, v)) for u in acc for v in verts}
        acc = set(hull(acc).vertices)
    return hull(acc)


def mixed_volume_multi(polys: Sequence[LatticePolytope], mults: Sequence[int]) -> int:
    """Normalized mixed volume of ``polys[i]`` repeated ``mults[i]`` times.

    Inclusion-exclusion over Minkowski sums, grouping equal summands:
    ``n! MV = sum_{0 <= b <= a, b != 0} (-1)^(n - |b|) prod C(a_i, b_i) Vol(sum b_i P_i)``
    with ``Vol`` the normalized volume, so ``MV(P, ..., P) = Vol(P)``.
    """
    n = polys[0].dim_ambient
    if sum(mults) != n:
        raise DimensionError(f"mixed volume in R^{n} needs {n} polytopes, got {sum(mults)}")
    return mixed_volume_cached(polys, mults, {})


def _span_rank(polys: Sequence[LatticePolytope], b: Sequence[int]) -> int:
    dirs = [_sub(v, p.vertices[0]) for p, bi in zip(polys, b) if bi for v in p.vertices[1:]]
    return linalg.rank(dirs) if dirs else 0


def mixed_volume_cached(
    polys: Sequence[LatticePolytope], mults: Sequence[int], cache: dict[tuple[int, ...], int]
) -> int:
    """As ``mixed_volume_multi`` but sharing Minkowski-sum volumes through ``cache``."""
    n = polys[0].dim_ambient
    total = 0
    for b in itertools.product(*(range(a + 1) for a in mults)):
        size = sum(b)
        if size == 0:
            continue
        coef = 1
        for ai, bi in zip(mults, b):
            coef *= comb(ai, bi)
        if b not in cache:
            full = _span_rank(polys, b) == n
            cache[b] = full_volume(minkowski_sum(polys, b)) if full else 0
        vol = cache[b]
        total += (-1) ** (n - size) * coef * vol
    # Normalized volumes carry an extra n! relative to Euclidean ones.
    return total // factorial(n)


def mixed_volume(ps: Sequence[LatticePolytope]) -> int:
    """Normalized mixed volume ``n! V(P_1, ..., P_n)``."""
    if not ps:
        raise DimensionError("mixed volume of an empty list")
    n = ps[0].dim_ambient
    if any(p.dim_ambient != n for p in ps) or len(ps) != n:
        raise DimensionError(f"mixed volume needs {n} polytopes in R^{n}")
    groups: dict[tuple[Point, ...], int] = {}
    reps: dict[tuple[Point, ...], LatticePolytope] = {}
    for p in ps:
        key = tuple(sorted(p.vertices))
        groups[key] = groups.get(key, 0) + 1
        reps[key] = p
    keys = sorted(groups)
    return mixed_volume_multi([reps[k] for k in keys], [groups[k] for k in keys])


def lattice_points(p: LatticePolytope, k: int = 1, interior: bool = False) -> list[Point]:
    """Lattice points of ``k*P`` (relative interior if asked), in local coordinates."""
    if p.dim == 0:
        if interior:
            return [()] if k > 0 else []
        return [()]
    if k == 0:
        return [] if interior else [tuple([0] * p.dim)]
    verts = p.local_points
    lo = [k * min(v[i] for v in verts) for i in range(p.dim)]
    hi = [k * max(v[i] for v in verts) for i in range(p.dim)]
    # Facet offsets are relative to the local origin, which dilates with k.
    out = []
    ranges = [range(a, b + 1) for a, b in zip(lo, hi)]
    for x in itertools.product(*ranges):
        ok = True
        for c, b in p.local_facets:
            val = _dot(c, x)
            if val > k * b or (interior and val == k * b):
                ok = False
                break
        if ok:
            out.append(x)
    return out


@dataclass(frozen=True)
class EhrhartData:
    psi: tuple[int, ...]
    phi: tuple[int, ...]
    lattice_counts: tuple[int, ...]
    interior_counts: tuple[int, ...]

    def reciprocity_holds(self) -> bool:
        n = len(self.psi) - 1
        return all(self.phi[j] == (self.psi[n + 1 - j] if 0 <= n + 1 - j <= n else 0) for j in range(n + 2))


def ehrhart(p: LatticePolytope) -> EhrhartData:
    """Numerators of the lattice-point and interior-point series of P.

    ``psi_j = sum_i (-1)^i C(n+1, i) l((j-i)P)`` and likewise for ``phi``
    from interior counts; ``n`` is the intrinsic dimension.
    """
    n = p.dim
    counts = [len(lattice_points(p, k)) for k in range(n + 2)]
    inner = [len(lattice_points(p, k, interior=True)) for k in range(n + 2)]
    psi = [sum((-1) ** i * comb(n + 1, i) * counts[j - i] for i in range(j + 1)) for j in range(n + 1)]
    phi = [sum((-1) ** i * comb(n + 1, i) * inner[j - i] for i in range(j + 1)) for j in range(n + 2)]
    return EhrhartData(tuple(psi), tuple(phi), tuple(counts), tuple(inner))


@dataclass(frozen=True)
class HodgeReport:
    psi: tuple[int, ...]
    total: int
    normalized_volume: int
    assumption: str = "Pi-regularity assumed, not verified"

    def dim_gr(self, i: int) -> int:
        """dim Gr_F^{n-i} of the primitive cohomology, equal to psi_{n-i}."""
        n = len(self.psi) - 1
        return self.psi[n - i]


def hodge_dims(support: Iterable[Sequence[int]]) -> HodgeReport:
    p = hull(support)
    if p.dim != p.dim_ambient:
        raise DimensionError(f"Newton polytope has dimension {p.dim} < {p.dim_ambient}")
    data = ehrhart(p)
    return HodgeReport(data.psi, sum(data.psi), normalized_volume(p))


@dataclass(frozen=True)
class WeightStrata:
    """Lattice points of ``kP`` (k <= n) at exact degree k, by minimal-face codimension.

    A point in the relative interior of a face of codimension c is assigned
    to ``W_{n-1+c}``.
    """

    counts: dict[tuple[int, int], int]
    by_weight: dict[int, int]


def face_dimension(p: LatticePolytope, e: Sequence[int], k: int) -> int:
    """Dimension of the minimal face of P containing ``e / k``."""
    x = [Fraction(v, k) for v in e]
    return p.minimal_face_dim(x)


def weight_strata(support: Iterable[Sequence[int]]) -> WeightStrata:
    p = hull(support)
    n = p.dim_ambient
    if p.dim != n:
        raise DimensionError("weight strata need a full-dimensional Newton polytope")
    counts: dict[tuple[int, int], int] = {}
    by_weight: dict[int, int] = {}
    for k in range(1, n + 1):
        for loc in lattice_points(p, k):
            amb = tuple(o * k + sum(c * b[i] for c, b in zip(loc, p.basis)) for i, o in enumerate(p.origin))
            if point_degree(p, amb) != k:
                continue
            fd = face_dimension(p, amb, k)
            counts[(k, fd)] = counts.get((k, fd), 0) + 1
            w = n - 1 + (n - fd)
            by_weight[w] = by_weight.get(w, 0) + 1
    return WeightStrata(counts, by_weight)


def point_degree(p: LatticePolytope, e: Sequence[int]) -> int:
    """Least k >= 0 with ``e`` in ``kP``."""
    if all(v == 0 for v in e):
        return 0
    lo = Fraction(1)
    hi: Fraction | None = None
    fixed: Fraction | None = None
    for w, r in p.equations:
        val = _dot(w, e)
        if r == 0:
            if val != 0:
                raise NoDegreeError(f"{tuple(e)} leaves the linear span of the cone")
        else:
            k = Fraction(val, r)
            if fixed is not None and fixed != k:
                raise NoDegreeError(f"{tuple(e)} is not in the cone")
            fixed = k
    for c, b in p.facets:
        val = _dot(c, e)
        if b > 0:
            lo = max(lo, Fraction(val, b))
        elif b == 0:
            if val > 0:
                raise NoDegreeError(f"{tuple(e)} is outside the cone")
        else:
            bound = Fraction(val, b)
            hi = bound if hi is None else min(hi, bound)
    if fixed is not None:
        if fixed.denominator != 1 or fixed < lo or (hi is not None and fixed > hi):
            raise NoDegreeError(f"{tuple(e)} is not in an integral dilation")
        return int(fixed)
    k = max(1, ceil(lo))
    if hi is not None and k > floor(hi):
        raise NoDegreeError(f"{tuple(e)} lies in no integral dilation")
    return k


def polytope_of(points: Iterable[Sequence[int]]) -> LatticePolytope:
    return hull(points)


def simplex_volume(points: Sequence[Sequence[int]]) -> int:
    """|det| of edge vectors: the normalized volume of a full simplex."""
    base = points[0]
    return abs(linalg.det([_sub(q, base) for q in points[1:]]))


def normalized_factorial_volume(p: LatticePolytope) -> Fraction:
    """Euclidean volume of a full-dimensional polytope."""
    return Fraction(full_volume(p), factorial(p.dim_ambient))
