"""Sparse polynomial arithmetic and compiled system evaluation."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mlspectra.poly import Poly, mat_adjugate, mat_det
from mlspectra.polysys import PolySystem, linear_forms_matrix
from mlspectra.subspace import sample_generic_subspace


def test_arithmetic_and_eval():
    x = Poly.var(2, 0)
    y = Poly.var(2, 1)
    p = (x + y) * (x - y)
    assert p.eval([3.0, 2.0]) == pytest.approx(5.0)
    assert (p - x * x + y * y).is_zero()


def test_rational_coefficients_stay_exact():
    x = Poly.var(1, 0, Fraction(1, 3))
    p = x * x
    assert p.terms[(2,)] == Fraction(1, 9)
    # coefficient extraction in a chosen variable
    q = Poly.var(2, 0) * Poly.var(2, 1) + Poly.var(2, 0)
    c1 = q.coeff_of(0, 1)
    assert c1.eval([0, 5]) == 6


def test_diff():
    x = Poly.var(2, 0)
    y = Poly.var(2, 1)
    p = x * x * y + y * Fraction(5)
    dx = p.diff(0)
    dy = p.diff(1)
    assert dx.eval([2, 7]) == 28
    assert dy.eval([2, 7]) == 9


def test_degrees():
    x = Poly.var(3, 0)
    z = Poly.var(3, 2)
    p = x * x * z + z
    assert p.total_degree() == 3
    assert p.degree_in(0) == 2
    assert p.min_degree_in(2) == 1


def test_subs_partial():
    x = Poly.var(2, 0)
    y = Poly.var(2, 1)
    p = x * y + x
    q = p.subs({1: Fraction(2)})
    assert q.eval([5, 0]) == 15


def _random_poly(rng, nvars=3, terms=6, deg=3):
    p = Poly(nvars, {})
    for _ in range(terms):
        mono = tuple(rng.randint(0, deg) for _ in range(nvars))
        p = p + Poly(nvars, {mono: complex(rng.uniform(-2, 2), rng.uniform(-2, 2))})
    return p


def test_batch_eval_matches_pointwise():
    import random

    rng = random.Random(6)
    eqs = [_random_poly(rng) for _ in range(4)]
    sys_ = PolySystem(eqs, 3)
    z = np.array([[rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1) for _ in range(3)]
                  for _ in range(8)])
    batch = sys_.evaluate_batch(z)
    for r, row in enumerate(z):
        single = sys_.evaluate(row)
        assert np.allclose(batch[r], single, atol=1e-12)


def test_batch_jacobian_matches_diff():
    import random

    rng = random.Random(7)
    eqs = [_random_poly(rng) for _ in range(3)]
    sys_ = PolySystem(eqs, 3)
    c = sys_.compile()
    z = np.array([[0.3 + 0.1j, -0.5, 0.0],  # includes an exact zero coordinate
                  [1.2, 0.7j, -0.4 + 0.2j]])
    jac = sys_.jacobian_batch(z)
    # compile() normalizes each equation by its largest coefficient, so the
    # analytic jacobian must be scaled the same way before comparing
    for r, row in enumerate(z):
        for i, eq in enumerate(eqs):
            for j in range(3):
                want = eq.diff(j).eval(row) / c.scales[i]
                assert jac[r, i, j] == pytest.approx(want, abs=1e-12)


def test_bezout_bound():
    x = Poly.var(2, 0)
    y = Poly.var(2, 1)
    sys_ = PolySystem([x * x * y - 1, y * y - x], 2)
    assert sys_.bezout_bound() == 6


def test_require_square():
    x = Poly.var(2, 0)
    with pytest.raises(ValueError):
        PolySystem([x], 2).require_square()


def test_polynomial_adjugate_matches_numeric():
    sp = sample_generic_subspace(3, 3, 4)
    rows = linear_forms_matrix(sp.basis, 3)
    adj = mat_adjugate(rows)
    det = mat_det(rows)
    x = [0.4, -1.1, 0.9]
    m = np.zeros((3, 3))
    for b, c in zip(sp.basis, x):
        m += b.to_numpy() * c
    num_det = np.linalg.det(m)
    assert det.eval(x) == pytest.approx(num_det, rel=1e-10)
    num_adj = np.linalg.inv(m) * num_det
    for i in range(3):
        for j in range(3):
            assert adj[i][j].eval(x) == pytest.approx(num_adj[i, j], rel=1e-9)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_det_times_adjugate_is_scalar_matrix(vals):
    # same identity as the exact layer, here for polynomial matrices
    a, b, c, d = (Fraction(v) for v in vals)
    x = Poly.var(1, 0)
    rows = [[x * a + 1, x * b], [x * b, x * c + d]]
    adj = mat_adjugate(rows)
    det = mat_det(rows)
    prod00 = rows[0][0] * adj[0][0] + rows[0][1] * adj[1][0]
    prod01 = rows[0][0] * adj[0][1] + rows[0][1] * adj[1][1]
    assert (prod00 - det).is_zero()
    assert prod01.is_zero()
