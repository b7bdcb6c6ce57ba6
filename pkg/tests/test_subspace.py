"""Subspace construction, annihilators, serialization."""

import json
from fractions import Fraction

import pytest

from mlspectra.subspace import (LinearSubspace, SubspaceError,
                                random_rational_element, regular_witness,
                                sample_generic_subspace)
from mlspectra.symmat import SymMat, determinant, trace_pairing, tri_len


def _e(n, i, j):
    rows = [[0] * n for _ in range(n)]
    rows[i][j] = 1
    rows[j][i] = 1
    return SymMat.from_rows(rows, "rational")


def test_basic_dimensions():
    sp = LinearSubspace([_e(3, 0, 0), _e(3, 1, 1)])
    assert sp.n == 3
    assert sp.k == 2
    assert sp.ambient_dim == tri_len(3) == 6


def test_rejects_dependent_basis():
    a = _e(2, 0, 0)
    b = a.scale(3)
    with pytest.raises(SubspaceError):
        LinearSubspace([a, b])


def test_rejects_mixed_sizes():
    with pytest.raises(SubspaceError):
        LinearSubspace([_e(2, 0, 0), _e(3, 0, 0)])


def test_element_is_exact_combination():
    sp = LinearSubspace([_e(2, 0, 0), _e(2, 0, 1)])
    m = sp.element([Fraction(2), Fraction(-1, 3)])
    assert m.entry(0, 0) == 2
    assert m.entry(0, 1) == Fraction(-1, 3)
    assert m.entry(1, 1) == 0


def test_annihilator_dimension_and_orthogonality():
    for n, k, s in [(3, 2, 0), (3, 4, 1), (4, 3, 2)]:
        sp = sample_generic_subspace(n, k, s)
        perp = sp.annihilator()
        assert perp.k == tri_len(n) - k
        for a in sp.basis:
            for b in perp.basis:
                assert trace_pairing(a, b) == 0


def test_double_annihilator_restores_span():
    sp = sample_generic_subspace(3, 3, 7)
    back = sp.annihilator().annihilator()
    assert back.k == sp.k
    # same span: every original basis matrix pairs to zero with back's annihilator
    perp = back.annihilator()
    for a in sp.basis:
        for b in perp.basis:
            assert trace_pairing(a, b) == 0


def test_json_round_trip_exact():
    sp = LinearSubspace([_e(3, 0, 2), _e(3, 1, 1).scale(Fraction(5, 7))])
    doc = sp.to_json_dict()
    json.dumps(doc)  # must be serializable as-is
    back = LinearSubspace.from_json_dict(doc)
    assert back.k == sp.k and back.n == sp.n
    for a, b in zip(sp.basis, back.basis):
        assert a.rows() == b.rows()


def test_sampling_is_deterministic():
    a = sample_generic_subspace(3, 4, 11)
    b = sample_generic_subspace(3, 4, 11)
    assert [m.rows() for m in a.basis] == [m.rows() for m in b.basis]
    c = sample_generic_subspace(3, 4, 12)
    assert [m.rows() for m in a.basis] != [m.rows() for m in c.basis]


def test_sampling_range_checks():
    with pytest.raises((SubspaceError, ValueError)):
        sample_generic_subspace(3, 7, 0)
    with pytest.raises((SubspaceError, ValueError)):
        sample_generic_subspace(3, 0, 0)


def test_regular_witness_on_regular_space():
    sp = sample_generic_subspace(3, 3, 1)
    w = regular_witness(sp, seed=0)
    assert w is not None
    assert determinant(w) != 0


def test_regular_witness_missing_on_singular_space():
    # span(E12+E21, E13+E31): every element has a zero diagonal and
    # determinant 0, so no invertible witness exists
    sp = LinearSubspace([_e(3, 0, 1), _e(3, 0, 2)])
    assert regular_witness(sp, seed=0, tries=32) is None


def test_random_element_lies_in_space():
    import random

    sp = sample_generic_subspace(3, 2, 3)
    m = random_rational_element(sp, random.Random(5))
    perp = sp.annihilator()
    for b in perp.basis:
        assert trace_pairing(m, b) == 0
