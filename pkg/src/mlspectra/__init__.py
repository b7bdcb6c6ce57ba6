"""Likelihood geometry of linear pencils of symmetric matrices.

Given a spanning set of symmetric n x n matrices, the package counts
critical points of the Gaussian log-likelihood over the pencil, computes
the degree of the closure of the inverse images, certifies equality of
the two counts, searches for XY = 0 witnesses across the trace pairing,
and decides whether projecting the PSD cone onto the pencil's span can
fail to be closed.
"""

from .badness import BadCertificate, MaxRankResult, max_rank_psd, pataki_certificate
from .epsmat import EpsPolyMat, EpsRing, eps_adjugate_leading_term, perturbation
from .geometry import (
    CknWitness,
    CountInstabilityError,
    DegreeResult,
    MLReport,
    NonRegularError,
    ckn_witness,
    ml_degree,
    ml_report,
    reciprocal_degree,
    tangency_witnesses,
)
from .solve import PathFailureError, SolveOptions, solve_total_degree
from .subspace import LinearSubspace, SubspaceError, sample_generic_subspace
from .symmat import SymMat, adjugate, determinant, numeric_rank, trace_pairing
from . import builtin as builtins
from .track import BACKEND as TRACK_BACKEND

__version__ = "0.1.0"

__all__ = [
    "BadCertificate",
    "CknWitness",
    "CountInstabilityError",
    "DegreeResult",
    "EpsPolyMat",
    "EpsRing",
    "LinearSubspace",
    "MLReport",
    "MaxRankResult",
    "NonRegularError",
    "PathFailureError",
    "SolveOptions",
    "SubspaceError",
    "SymMat",
    "TRACK_BACKEND",
    "adjugate",
    "builtins",
    "ckn_witness",
    "determinant",
    "eps_adjugate_leading_term",
    "max_rank_psd",
    "ml_degree",
    "ml_report",
    "numeric_rank",
    "pataki_certificate",
    "perturbation",
    "reciprocal_degree",
    "sample_generic_subspace",
    "solve_total_degree",
    "tangency_witnesses",
    "trace_pairing",
    "__version__",
]
