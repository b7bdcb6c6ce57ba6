"""Exact symmetric-matrix helpers."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mlspectra.symmat import (SymMat, adjugate, determinant, matmul,
                              numeric_rank, trace_pairing, tri_index, tri_len)


def test_tri_indexing_round_trip():
    n = 4
    seen = set()
    for i in range(n):
        for j in range(i, n):
            seen.add(tri_index(n, i, j))
    assert seen == set(range(tri_len(n)))
    # symmetric access maps to the same slot
    assert tri_index(n, 1, 3) == tri_index(n, 3, 1)


def test_from_rows_rejects_asymmetry():
    with pytest.raises(ValueError):
        SymMat.from_rows([[1, 2], [3, 4]])


def test_entry_and_rows_agree():
    m = SymMat.from_rows([[1, 2, 0], [2, 5, -1], [0, -1, 3]], "rational")
    assert m.entry(0, 1) == m.entry(1, 0) == 2
    assert m.rows()[2][1] == -1


def test_determinant_matches_numpy():
    m = SymMat.from_rows([[2, 1, 0], [1, 3, 1], [0, 1, 4]], "rational")
    d = determinant(m)
    assert d == Fraction(18)
    assert np.isclose(np.linalg.det(m.to_numpy()), 18.0)


def test_adjugate_identity_small():
    m = SymMat.from_rows([[1, 2], [2, -3]], "rational")
    a = adjugate(m)
    prod = matmul(m, a)
    d = determinant(m)
    assert prod == [[d, 0], [0, d]]


sym_entries = st.integers(min_value=-9, max_value=9)


@st.composite
def sym_mats(draw, n=3):
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = draw(sym_entries)
            rows[i][j] = v
            rows[j][i] = v
    return SymMat.from_rows(rows, "rational")


@settings(max_examples=60, deadline=None)
@given(sym_mats())
def test_adjugate_identity_property(m):
    # M adj(M) = det(M) I holds exactly, singular matrices included
    prod = matmul(m, adjugate(m))
    d = determinant(m)
    for i in range(3):
        for j in range(3):
            assert prod[i][j] == (d if i == j else 0)


@settings(max_examples=40, deadline=None)
@given(sym_mats(), sym_mats())
def test_trace_pairing_symmetry(a, b):
    assert trace_pairing(a, b) == trace_pairing(b, a)


def test_trace_pairing_value():
    a = SymMat.from_rows([[1, 2], [2, 0]], "rational")
    b = SymMat.from_rows([[0, 1], [1, 5]], "rational")
    # tr(ab) = sum_ij a_ij b_ij for symmetric pairs
    assert trace_pairing(a, b) == 4


def test_numeric_rank_thresholds():
    assert numeric_rank(SymMat.identity(3, "rational")) == 3
    rank1 = SymMat.from_rows([[1, 1], [1, 1]], "rational")
    assert numeric_rank(rank1) == 1
    assert numeric_rank(SymMat.zeros(2, "rational")) == 0


def test_scale_add_sub():
    m = SymMat.from_rows([[1, 0], [0, 2]], "rational")
    twice = m.scale(2)
    assert determinant(twice) == 8
    assert m.add(m).rows() == twice.rows()
    assert m.sub(m).is_zero()
