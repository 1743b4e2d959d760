from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy.spatial import ConvexHull

from cimellin import polytope as P
from cimellin.errors import DimensionError, NoDegreeError

points2 = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=3, max_size=7)
points3 = st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2)), min_size=4, max_size=7)


def _full(pts) -> bool:
    arr = np.array(pts) - np.array(pts[0])
    return np.linalg.matrix_rank(arr) == len(pts[0])


def _brute_count(pts, k: int, interior: bool = False) -> int:
    """Lattice points of kP by scipy's facet equations, scanned over the bounding box."""
    arr = np.array(pts, dtype=float)
    hull = ConvexHull(arr)
    lo = (k * arr.min(axis=0)).astype(int)
    hi = (k * arr.max(axis=0)).astype(int)
    n = 0
    for x in itertools.product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        vals = hull.equations[:, :-1] @ np.array(x, dtype=float) + k * hull.equations[:, -1]
        if interior:
            n += bool(np.all(vals < -1e-9))
        else:
            n += bool(np.all(vals <= 1e-9))
    return n


@settings(max_examples=40, deadline=None)
@given(points2)
def test_volume_matches_scipy_2d(pts):
    assume(_full(pts))
    p = P.hull(pts)
    assert P.normalized_volume(p) == round(2 * ConvexHull(np.array(pts, dtype=float)).volume)


@settings(max_examples=30, deadline=None)
@given(points3)
def test_volume_matches_scipy_3d(pts):
    assume(_full(pts))
    p = P.hull(pts)
    assert P.normalized_volume(p) == round(6 * ConvexHull(np.array(pts, dtype=float)).volume)


@settings(max_examples=25, deadline=None)
@given(points2, st.integers(1, 3))
def test_lattice_points_match_bruteforce(pts, k):
    assume(_full(pts))
    p = P.hull(pts)
    assert len(P.lattice_points(p, k)) == _brute_count(pts, k)
    assert len(P.lattice_points(p, k, interior=True)) == _brute_count(pts, k, interior=True)


RECIPROCITY_FIXTURES = [
    [(0, 0), (3, 0), (0, 2)],
    [(0, 0), (2, 0), (0, 3)],
    [(0, 0), (3, 0), (0, 3)],
    [(0, 0), (5, 0), (0, 5)],
    [(0, 0), (1, 0), (0, 1), (1, 1)],
    [(3, 0), (0, 3), (1, 1), (0, 0)],
    [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)],
    [(0, 0, 0), (3, 0, 0), (0, 2, 0), (0, 0, 1)],
    [(i, j, k) for i in (0, 1) for j in (0, 1) for k in (0, 1)],
    [(0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)],
    [(0, 0, 0), (1, 1, 1)],
    [(-1, -1), (2, -1), (-1, 2)],
]


@pytest.mark.parametrize("pts", RECIPROCITY_FIXTURES)
def test_ehrhart_reciprocity_and_volume(pts):
    p = P.hull(pts)
    data = P.ehrhart(p)
    assert data.reciprocity_holds()
    assert sum(data.psi) == P.normalized_volume(p)


def test_cubic_triangle_psi():
    assert P.ehrhart(P.hull([(0, 0), (3, 0), (0, 3)])).psi == (1, 7, 1)
    rep = P.hodge_dims([(3, 0), (0, 3), (0, 0)])
    assert rep.total == rep.normalized_volume == 9


def test_segment_in_space():
    seg = P.hull([(0, 0, 0), (1, 1, 1)])
    assert seg.dim == 1
    assert P.normalized_volume(seg) == 1
    assert P.ehrhart(seg).psi == (1, 0)


def _random_polys(data, n, count):
    polys = []
    for _ in range(count):
        pts = data.draw(
            st.lists(st.tuples(*[st.integers(0, 2)] * n), min_size=n + 1, max_size=n + 3).filter(_full)
        )
        polys.append(P.hull(pts))
    return polys


@settings(max_examples=15, deadline=None)
@given(st.data())
def test_mixed_volume_diagonal_and_symmetry(data):
    a, b = _random_polys(data, 2, 2)
    assert P.mixed_volume([a, a]) == P.normalized_volume(a)
    assert P.mixed_volume([a, b]) == P.mixed_volume([b, a])


@settings(max_examples=10, deadline=None)
@given(st.data(), st.integers(1, 3))
def test_mixed_volume_multilinear(data, m):
    a, b, c = _random_polys(data, 2, 3)
    ab = P.minkowski_sum([a, b])
    assert P.mixed_volume([ab, c]) == P.mixed_volume([a, c]) + P.mixed_volume([b, c])
    scaled = P.minkowski_sum([a], [m])
    assert P.mixed_volume([scaled, c]) == m * P.mixed_volume([a, c])


def test_bernstein_count_matches_resultant():
    # Oracle: torus roots of a generic system equal the degree of the resultant after removing x = 0.
    import sympy

    x, y = sympy.symbols("x y")
    f = 2 * x**3 + 3 * y**2 + 5
    g = 7 * x**2 + 11 * y**3 + 13
    res = sympy.Poly(sympy.resultant(f, g, y), x)
    roots = res.degree() - min(m[0] for m in res.monoms())
    a = P.hull([(0, 0), (3, 0), (0, 2)])
    b = P.hull([(0, 0), (2, 0), (0, 3)])
    assert P.mixed_volume([a, b]) == roots


def test_acampo_three_dimensional_mixed_volumes():
    a = P.hull([(0, 0, 0), (3, 0, 0), (0, 2, 0)])
    b = P.hull([(2, 0, 0), (0, 3, 0), (0, 0, 1)])
    assert P.mixed_volume([a, a, b]) + P.mixed_volume([a, b, b]) == 15


def test_point_degree_and_errors():
    tri = P.hull([(0, 0), (3, 0), (0, 2)])
    assert P.point_degree(tri, (1, 1)) == 1
    assert P.point_degree(tri, (3, 2)) == 2
    assert P.point_degree(tri, (0, 0)) == 0
    with pytest.raises(NoDegreeError):
        P.point_degree(tri, (-1, 0))
    with pytest.raises(DimensionError):
        P.hodge_dims([(0, 0), (1, 1)])
    with pytest.raises(DimensionError):
        P.hull([])


def test_weight_strata_cover_degree_points():
    ws = P.weight_strata([(3, 0), (0, 3), (0, 0)])
    assert sum(ws.by_weight.values()) == sum(ws.counts.values())
    assert min(ws.by_weight) >= 1
