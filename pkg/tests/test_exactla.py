"""Exact rational linear algebra against numpy and by hand."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mlspectra import exactla

entries = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def mats(nr, nc):
    return st.lists(st.lists(entries, min_size=nc, max_size=nc),
                    min_size=nr, max_size=nr)


def test_rref_known():
    m, pivots = exactla.rref([[1, 2, 3], [2, 4, 6], [1, 1, 1]])
    assert pivots == [0, 1]
    assert m[0] == [1, 0, -1]
    assert m[1] == [0, 1, 2]
    assert m[2] == [0, 0, 0]


@settings(max_examples=60, deadline=None)
@given(mats(3, 4))
def test_rank_matches_numpy(rows):
    arr = np.array([[float(x) for x in r] for r in rows])
    assert exactla.rank(rows) == np.linalg.matrix_rank(arr, tol=1e-9)


@settings(max_examples=60, deadline=None)
@given(mats(2, 4))
def test_nullspace_annihilates(rows):
    ns = exactla.nullspace(rows)
    assert len(ns) == 4 - exactla.rank(rows)
    for v in ns:
        for row in rows:
            assert sum(Fraction(a) * b for a, b in zip(row, v)) == 0


def test_solve_unique_and_inconsistent():
    x = exactla.solve([[2, 1], [1, 3]], [5, 10])
    assert x == [Fraction(1), Fraction(3)]
    assert exactla.solve([[1, 1], [2, 2]], [1, 3]) is None  # inconsistent
    assert exactla.solve([[1, 1], [2, 2]], [1, 2]) is None  # underdetermined


@settings(max_examples=40, deadline=None)
@given(mats(3, 3))
def test_determinant_matches_numpy(rows):
    arr = np.array([[float(x) for x in r] for r in rows])
    assert float(exactla.determinant(rows)) == pytest.approx(
        float(np.linalg.det(arr)), abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(mats(3, 2))
def test_gram_matrices_are_psd(rows):
    # A^T A is PSD for any A; A^T A - margin*I is not once margin beats
    # the smallest eigenvalue
    a = rows
    gram = [[sum(a[p][i] * a[p][j] for p in range(3)) for j in range(2)]
            for i in range(2)]
    assert exactla.is_psd(gram)


def test_is_psd_boundary_cases():
    assert exactla.is_psd([[0, 0], [0, 0]])
    assert exactla.is_psd([[1, 1], [1, 1]])
    assert not exactla.is_psd([[1, 2], [2, 1]])
    assert not exactla.is_psd([[0, 1], [1, 0]])  # zero pivot, nonzero row
    assert not exactla.is_psd([[-1]])
    assert exactla.is_psd([[Fraction(1, 3), Fraction(1, 2)],
                           [Fraction(1, 2), Fraction(3, 4)]])


def test_determinant_exact_fraction():
    d = exactla.determinant([[Fraction(1, 2), 1], [1, Fraction(1, 2)]])
    assert d == Fraction(-3, 4)
