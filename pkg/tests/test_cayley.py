from __future__ import annotations

from fractions import Fraction

import pytest

from cimellin import linalg
from cimellin.cayley import (
    AuxPlacement,
    LaurentSystem,
    auto_placement,
    aux_count_formula,
    build_phase,
    cayley_matrix,
    check_nondegenerate,
)
from cimellin.errors import DegeneracyError, DimensionError, NotSimpliciableError, PlacementRuleError, ShapeError
from cimellin.spectra import spectra_transition

from conftest import acampo_system, projective, three_curves
from golden_data import D12, D13, L2, L2_INV, L3, L3_INV


def test_acampo_is_square_without_auxiliaries(acampo_cm):
    assert acampo_cm.var_order == ("x1", "x2", "s1", "s2", "y1", "y2")
    assert acampo_cm.layout.term_labels == ("y1*x1^3", "y1*x2^2", "y1*s1", "y2*x1^2", "y2*x2^3", "y2*s2")
    assert acampo_cm.det == 5
    assert acampo_cm.delta == 5


def test_three_curve_matrices_match_printed(l3_cm, l2_cm):
    assert l3_cm.l == L3
    assert l3_cm.inverse() == L3_INV
    assert l2_cm.l == L2
    assert l2_cm.inverse() == L2_INV
    assert l3_cm.det == D12
    assert l2_cm.det == -D13


def test_transition_constant(l3_cm, l2_cm):
    tr = spectra_transition(l3_cm, l2_cm)
    assert tr.det_ratio == Fraction(-D13, D12)
    assert linalg.matmul(l3_cm.l, tr.pullback) == [[Fraction(x) for x in r] for r in l2_cm.l]
    assert tr.forms_match


def test_scaled_inverse_identity(l3_cm):
    prod = linalg.matmul(l3_cm.l, l3_cm.t)
    assert prod == [[l3_cm.delta * int(i == j) for j in range(9)] for i in range(9)]


def test_auxiliary_count_formula():
    sys_ = three_curves()
    phase = build_phase(sys_)
    assert phase.balance == "deficient"
    extra = len(phase.terms) - len(phase.layout.var_order)
    assert extra == aux_count_formula(2, 3) == 1
    assert aux_count_formula(2, 2) == 0


def test_auto_placement_gives_nonsingular_matrix():
    placement = auto_placement(three_curves())
    assert len(placement.assignments) == 1
    cm = cayley_matrix(build_phase(three_curves(), placement))
    assert check_nondegenerate(cm)


def test_rule_a_variable_keeps_an_unmodified_monomial():
    sys_ = LaurentSystem(2, (((3, 0), (0, 2)), ((2, 0), (0, 3))))
    with pytest.raises(PlacementRuleError) as info:
        build_phase(sys_, AuxPlacement((0, 3)))
    assert info.value.rule == "a"
    assert info.value.index == 0


def test_rule_b_polynomial_keeps_an_unmodified_monomial():
    sys_ = LaurentSystem(2, (((1, 1),), ((1, 0), (0, 1))))
    with pytest.raises(PlacementRuleError) as info:
        build_phase(sys_, AuxPlacement((0,)))
    assert info.value.rule == "b"


def test_placement_on_s_term_rejected():
    with pytest.raises(ShapeError):
        build_phase(three_curves(), AuxPlacement((2,)))


def test_abundant_system_not_simpliciable():
    with pytest.raises(NotSimpliciableError):
        auto_placement(LaurentSystem(2, (((3, 0), (0, 2)),)))


def test_singular_square_phase_detected():
    # Exponents on the diagonal x1 = x2 make two columns of L equal.
    sys_ = LaurentSystem(2, (((1, 1), (2, 2), (3, 3)),))
    phase = build_phase(sys_)
    assert phase.balance == "square"
    with pytest.raises(DegeneracyError):
        cayley_matrix(phase)
    with pytest.raises(ShapeError):
        cayley_matrix(build_phase(LaurentSystem(1, (((1,),), ((2,),)))))


def test_givental_layout_uses_one_s_variable():
    cm = cayley_matrix(build_phase(projective(4, [2, 3])))
    assert cm.layout.n_s == 1
    assert cm.var_order[-3:] == ("y1", "y2", "y3")


def test_system_validation():
    with pytest.raises(DimensionError):
        LaurentSystem(2, ())
    with pytest.raises(DimensionError):
        LaurentSystem(2, (((1, 0), (1, 0)),))
    with pytest.raises(DimensionError):
        LaurentSystem(2, (((1, 0, 0),),))


def test_nondegeneracy_on_matrices():
    assert check_nondegenerate([[1, 0], [0, 1]])
    assert not check_nondegenerate([[1, 2], [2, 4]])
    assert not check_nondegenerate([[1, 2], [3]])
