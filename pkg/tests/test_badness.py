"""Spectrahedral rank search and closedness certificates."""

from fractions import Fraction

import numpy as np
import pytest

from mlspectra import builtin, exactla
from mlspectra.badness import max_rank_psd, pataki_certificate
from mlspectra.subspace import LinearSubspace, sample_generic_subspace
from mlspectra.symmat import RATIONAL, SymMat

# name -> (verdict, s_L, s_Lperp, cond10, cond11)
EXPECTED = {
    "identity-line": ("not_bad", 3, 0, True, True),
    "diagonal-net": ("not_bad", 3, 0, True, True),
    "type-c-net": ("bad", 1, 1, False, True),
    "polar-diagonal-net": ("not_bad", 0, 3, True, True),
    "nonclosed-2x2": ("bad", 1, 1, True, False),
}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_builtin_certificates(name):
    cert = pataki_certificate(builtin.get_builtin(name), seed=0)
    verdict, s_l, s_p, c10, c11 = EXPECTED[name]
    assert cert.verdict == verdict
    assert (cert.s_L, cert.s_Lperp) == (s_l, s_p)
    assert (cert.cond10, cert.cond11) == (c10, c11)
    assert cert.verdict == ("not_bad" if cert.cond10 and cert.cond11 else "bad")
    assert cert.diagnostics["exact_certified"] is True


def test_nonclosed_violator_is_genuine():
    # the reported matrix must vanish on the witness kernel compression yet
    # mix the range of the witness with its kernel
    cert = pataki_certificate(builtin.nonclosed_2x2(), seed=0)
    viol = cert.violating_matrix
    assert viol is not None
    assert viol.rows() == [[0, 1], [1, 0]]
    w = cert.witness_L.to_numpy()
    eig, vec = np.linalg.eigh(w)
    ker = vec[:, np.abs(eig) < 1e-9]
    rng = vec[:, np.abs(eig) >= 1e-9]
    m = viol.to_numpy()
    assert np.allclose(ker.T @ m @ ker, 0)
    assert np.linalg.norm(rng.T @ m @ ker) > 0.5


def test_generic_space_not_bad():
    cert = pataki_certificate(sample_generic_subspace(3, 3, 2), seed=0)
    assert cert.verdict == "not_bad"
    assert (cert.s_L, cert.s_Lperp) == (3, 0)


def test_full_space_not_bad():
    full = LinearSubspace([
        SymMat.from_rows([[1, 0], [0, 0]], RATIONAL),
        SymMat.from_rows([[0, 0], [0, 1]], RATIONAL),
        SymMat.from_rows([[0, 1], [1, 0]], RATIONAL),
    ])
    cert = pataki_certificate(full, seed=0)
    assert (cert.s_L, cert.s_Lperp) == (2, 0)
    assert cert.verdict == "not_bad"
    assert cert.witness_Lperp is None


def test_max_rank_psd_diagonal_net():
    res = max_rank_psd(builtin.diagonal_net(), seed=1)
    assert res.rank == 3
    assert res.witness.rows() == SymMat.identity(3, RATIONAL).rows()
    combo = builtin.diagonal_net().element(res.coefficients)
    assert combo.rows() == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_max_rank_psd_witness_exactly_psd():
    for name in ("type-c-net", "polar-diagonal-net", "nonclosed-2x2"):
        res = max_rank_psd(builtin.get_builtin(name), seed=3)
        assert exactla.is_psd(res.witness.rows())
        assert exactla.rank(res.witness.rows()) == res.rank


def test_max_rank_psd_no_psd_element():
    # span of an off-diagonal unit has no nonzero PSD element
    space = LinearSubspace([SymMat.from_rows([[0, 1], [1, 0]], RATIONAL)])
    res = max_rank_psd(space, seed=0)
    assert res.rank == 0
    assert res.diagnostics["note"] == "no PSD element certified"


def test_certificate_json_contract():
    d = pataki_certificate(builtin.nonclosed_2x2(), seed=0).to_json_dict()
    for key in ("s_L", "s_Lperp", "cond10", "cond11", "verdict",
                "violating_matrix", "witness_L", "transform"):
        assert key in d
    assert d["verdict"] == "bad"
    assert isinstance(d["s_L"], int)


def test_complex_field_rejected():
    space = LinearSubspace([SymMat.identity(2, "complex")])
    with pytest.raises(ValueError):
        pataki_certificate(space, seed=0)
    with pytest.raises(ValueError):
        max_rank_psd(space, seed=0)


def test_certificate_deterministic():
    a = pataki_certificate(builtin.type_c_net(), seed=9)
    b = pataki_certificate(builtin.type_c_net(), seed=9)
    assert a.to_json_dict() == b.to_json_dict()
