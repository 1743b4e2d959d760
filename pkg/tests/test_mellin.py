from __future__ import annotations

import functools
from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cimellin.cayley import LaurentSystem, build_phase, cayley_matrix
from cimellin.mellin import (
    GammaProduct,
    ZForm,
    gamma_equivalent,
    gamma_from_terms,
    gamma_product,
    index_sets,
    linear_forms,
    support_q,
    verify_sum_rules,
)

from conftest import acampo_system, projective, schimmrigk_input

fracs = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def _all_cms(l3_cm, l2_cm, acampo_cm):
    return [
        acampo_cm,
        l3_cm,
        l2_cm,
        cayley_matrix(build_phase(projective(2, [3]))),
        cayley_matrix(build_phase(projective(4, [2, 3]))),
        schimmrigk_input().cayley(),
    ]


def test_sum_rules_on_fixtures(l3_cm, l2_cm, acampo_cm):
    for cm in _all_cms(l3_cm, l2_cm, acampo_cm):
        rep = verify_sum_rules(linear_forms(cm))
        assert rep.ok, rep.failures


def test_schimmrigk_forms_sum_to_zeta_plus_k():
    cm = schimmrigk_input().cayley()
    forms = linear_forms(cm)
    for zeta in ([0, 0, 0, 0], [1, 2, 3, 4]):
        total = functools.reduce(lambda a, b: a + b, [f.substitute([0] * 7, zeta) for f in forms])
        assert total.is_constant()
        assert total.const == sum(zeta) + 4


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=2, max_size=2), st.lists(fracs, min_size=2, max_size=2), st.lists(st.integers(-3, 3), min_size=2, max_size=2))
def test_forms_solve_the_exponent_system(J, z, zeta):
    # Oracle: the forms l satisfy l . L = (J+1, z, zeta+1), solved independently by sympy.
    cm = cayley_matrix(build_phase(acampo_system()))
    forms = linear_forms(cm)
    rhs = sympy.Matrix([[J[0] + 1, J[1] + 1, z[0], z[1], zeta[0] + 1, zeta[1] + 1]])
    expected = rhs * sympy.Matrix(cm.l).inv()
    for a, f in enumerate(forms):
        assert sympy.Rational(str(f.evaluate(J, z, zeta))) == expected[a]


def test_acampo_gamma_product_frozen(acampo_cm):
    gp = gamma_product(linear_forms(acampo_cm), [0, 0], [0, 0])
    assert str(gp) == (
        "Γ(z2) Γ(4/5*z1 + 6/5*z2 - 1) Γ(z1) Γ(6/5*z1 + 4/5*z2 - 1) / "
        "(Γ(6/5*z1 + 9/5*z2 - 1) Γ(9/5*z1 + 6/5*z2 - 1))"
    )
    num, den = gp.degree_balance()
    assert num == den


def test_minimal_system_forms():
    cm = cayley_matrix(build_phase(LaurentSystem(0, (((),),))))
    forms = sorted(str(f.substitute([], [0])) for f in linear_forms(cm))
    assert forms == ["-z1 + 1", "z1"]


def test_index_sets_of_acampo(acampo_cm):
    sets = index_sets(linear_forms(acampo_cm))
    assert sets.i_plus == ((0, 2, 4), (0, 4, 5))
    assert sets.i_minus == ((1, 3), (1, 3))
    assert sum(linear_forms(acampo_cm)[a].B[0] for a in sets.i_plus[0]) == 15


def test_primitive_forms_keep_values(l3_cm):
    plain = linear_forms(l3_cm)
    prim = linear_forms(l3_cm, primitive=True)
    for f, g in zip(plain, prim):
        assert f.substitute([1, 2], [0, 1, 2]) == g.substitute([1, 2], [0, 1, 2])
        assert g.content() == 1 or g.delta == 1


@settings(max_examples=50, deadline=None)
@given(st.lists(fracs, min_size=2, max_size=2), fracs, st.integers(1, 3))
def test_reflection_involution(coeffs, const, e):
    f = ZForm.make(coeffs, const)
    if f.is_constant():
        return
    assert GammaProduct.build([(f, e)]).factors == GammaProduct.build([(f.reflect(), -e)]).factors


def test_gamma_equivalence_ignores_reflection():
    z = ZForm.variable(0, 1)
    g1 = gamma_from_terms([z], [z.scale(Fraction(1, 3)).shift(Fraction(2, 3))])
    g2 = gamma_from_terms([z, z.scale(Fraction(-1, 3)).shift(Fraction(1, 3))])
    assert gamma_equivalent(g1, g2)
    assert not gamma_equivalent(g1, gamma_from_terms([z]))


def test_support_families_are_poles(acampo_cm):
    gp = gamma_product(linear_forms(acampo_cm), [0, 0], [0, 0])
    fams = support_q(gp, 0)
    assert fams
    for fam in fams:
        for steps in [(0, 0), (1, 0), (0, 2), (3, 1)]:
            pt = fam.point(steps)
            for f in fam.forms:
                v = f(pt)
                assert v.denominator == 1 and v <= 0
