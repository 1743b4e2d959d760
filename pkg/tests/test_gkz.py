from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
import sympy

from cimellin import gkz, linalg
from cimellin.cayley import LaurentSystem, build_phase, cayley_matrix
from cimellin.errors import RankError

from conftest import acampo_system, projective


def test_acampo_a_matrix_and_boxes(acampo):
    am = gkz.a_matrix(acampo)
    assert am.m == [[1, 1, 1, 0, 0, 0], [0, 0, 0, 1, 1, 1], [3, 0, 0, 2, 0, 0], [0, 2, 0, 0, 3, 0]]
    g = gkz.gkz_system(am, [0, 0], [0, 0])
    assert [b.render() for b in g.box_ops] == ["d1^2*d6^3 - d3^2*d4^3", "d2^3*d6^2 - d3^3*d5^2"]
    for b in g.box_ops:
        assert linalg.matvec(am.m, b.vector) == [0, 0, 0, 0]


def test_kernel_lattice_against_sympy(acampo):
    am = gkz.a_matrix(acampo)
    lattice = gkz.gkz_system(am, [0, 0], [0, 0]).lattice
    rational = sympy.Matrix(am.m).nullspace()
    assert len(lattice) == len(rational)
    # Every small integer kernel vector is an integer combination of the basis.
    basis = sympy.Matrix(lattice).T
    for coeffs in itertools.product(range(-2, 3), repeat=6):
        v = sympy.Matrix(coeffs)
        if sympy.Matrix(am.m) * v == sympy.zeros(4, 1) and any(coeffs):
            sol = basis.solve_least_squares(v)
            assert all(x.is_integer for x in sol)


@pytest.mark.parametrize(
    "system,rank",
    [
        (acampo_system(), 21),
        (projective(2, [3]), 4),
        (projective(4, [2, 3]), 6),
        (LaurentSystem(2, (((3, 0), (0, 2)),)), 6),
        (LaurentSystem(1, (((1,),),)), 1),
    ],
)
def test_rank_two_volume_routes(system, rank):
    rep = gkz.gkz_rank_report(system)
    assert rep.ok
    assert rep.value == rank
    assert gkz.gkz_rank(system) == rank


@pytest.mark.parametrize("system", [acampo_system(), projective(2, [3]), projective(4, [2, 3])])
def test_rank_equals_euler(system):
    assert gkz.gkz_rank(system) == gkz.euler_cayley(system)


def test_rank_deficient_a_matrix():
    with pytest.raises(RankError):
        gkz.a_matrix(LaurentSystem(2, (((1, 1), (2, 2)),)))


def test_sigma_change_variables_are_torus_invariant(acampo, acampo_cm):
    am = gkz.a_matrix(acampo)
    sc = gkz.sigma_change(acampo_cm, am)
    assert sc.shape_ok
    for var in ("s1", "s2"):
        e = sc.exponents(var)
        assert linalg.matvec(am.m, e) == [0] * 4
    assert str(sc.prefactor([0, 0], [0, 0])) == "a2**2*a4**2/(a1*a5)"


def test_t_nonresonance(acampo):
    am = gkz.a_matrix(acampo)
    assert not gkz.t_nonresonance(am, [0, 1, 2, 3], [0, 1, 3, 4], [0, 0], [0, 0])
    assert gkz.t_nonresonance(am, [0, 1, 2, 3], [0, 1, 3, 4], [0, 0], [Fraction(1, 3), Fraction(2, 7)])


def test_branches_solve_euler_equations(acampo):
    am = gkz.a_matrix(acampo)
    zeta = [Fraction(1, 3), Fraction(2, 7)]
    for lam in gkz._branches(am.m, [-(z + 1) for z in zeta] + [Fraction(1), Fraction(1)], [0, 1, 2, 3]):
        assert gkz.verify_branch(am, lam, [0, 0], zeta)
