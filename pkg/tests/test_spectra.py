from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from cimellin import linalg
from cimellin.cayley import build_phase, cayley_matrix
from cimellin.errors import MismatchError, NoDegreeError, StructuralError
from cimellin.mellin import gamma_product, index_sets, linear_forms
from cimellin.spectra import (
    classify_weights,
    hodge_level,
    jordan_bound,
    jordan_bound_gamma,
    spectra,
    spectra_transition,
    weight_level,
    weight_vectors,
)

from conftest import acampo_system, projective


def test_weight_vectors_are_columns_of_inverse(acampo_cm):
    vecs, _ = classify_weights(acampo_cm)
    inv = acampo_cm.inverse()
    for v in vecs:
        col = [inv[i][v.index] for i in range(acampo_cm.size)]
        assert list(v.w + v.w_aux + v.p + v.q) == col


def test_trivial_means_single_positive_s_entry(acampo_cm):
    vecs, counts = classify_weights(acampo_cm)
    for v in vecs:
        nonzero = [x for x in v.p if x != 0]
        assert v.trivial == (len(nonzero) == 1 and nonzero[0] > 0)
    # Recorded conflict: 2 trivial and 4 nontrivial against the expected M + 1 = 3.
    assert (counts.n_trivial, counts.n_nontrivial) == (2, 4)
    assert (counts.expected_trivial, counts.expected_nontrivial) == (2, 3)
    with pytest.raises(StructuralError):
        weight_vectors(acampo_cm)
    assert len(weight_vectors(acampo_cm, strict=False)) == 6


def test_hodge_level_consistent_on_dilations(acampo_cm):
    checked = 0
    for J in itertools.product(range(4), repeat=2):
        for zeta in itertools.product(range(3), repeat=2):
            try:
                lvl = hodge_level(acampo_cm, J, zeta)
            except NoDegreeError:
                continue
            checked += 1
            assert lvl.consistent
            assert lvl.r == 2 + 2 + 1 - lvl.degree
    assert checked >= 15


def test_spectra_boundary_and_membership(acampo_cm):
    forms = linear_forms(acampo_cm)
    sets = index_sets(forms)
    sp = spectra(forms, sets, [0, 0], [0, 0], 0)
    assert len(sp.boundary) == 3
    assert sp.contains([0, 0])
    assert not sp.contains([0, -1])
    assert len(sp.halfspaces) == 4


def test_weight_level_counts_concurrent_forms(acampo_cm):
    forms = linear_forms(acampo_cm)
    sets = index_sets(forms)
    assert weight_level(forms, sets, [0, 0], [0, 0], 0) == 2


def test_transition_to_itself_is_identity(l3_cm, l2_cm):
    tr = spectra_transition(l3_cm, l3_cm)
    assert tr.matrix == linalg.identity(9)
    assert tr.det_ratio == 1
    with pytest.raises(MismatchError):
        spectra_transition(l3_cm, cayley_matrix(build_phase(acampo_system())))


@pytest.mark.parametrize("n,ells", [(2, [3]), (4, [2, 3])])
def test_jordan_bound_dominates_canonical_order(n, ells):
    cm = cayley_matrix(build_phase(projective(n, ells)))
    forms = linear_forms(cm)
    zeros = [0] * (n + 1), [0] * (len(ells) + 1)
    rep = jordan_bound(forms, *zeros)
    canonical = jordan_bound_gamma(gamma_product(forms, *zeros))
    assert canonical == n + 1
    assert rep.block >= canonical
    assert "heuristic" in rep.note


def test_jordan_witness_is_a_pole(acampo_cm):
    rep = jordan_bound(linear_forms(acampo_cm), [0, 0], [0, 0])
    assert rep.block >= 1
    assert any(x.denominator == 1 and x <= 0 for x in rep.witness)
    assert rep.box == 3 * acampo_cm.delta
