"""Embedded example subspaces with exact integer entries.

These are the small test cases the command line and the reproduction
suite refer to by name. Entries are exact rationals so downstream
certificates stay exact.
"""

from __future__ import annotations

from .subspace import LinearSubspace
from .symmat import RATIONAL, SymMat


def _mat(rows) -> SymMat:
    return SymMat.from_rows(rows, RATIONAL)


def _e(n, i, j) -> SymMat:
    return SymMat.unit(n, i, j)


def type_c_net() -> LinearSubspace:
    """Net of conics with a rank-one element on each side of the pairing.

    ml degree 2, reciprocal degree 3; the only rank witness pair is
    (E11, E33) up to scale, and there is no tangency witness.
    """
    return LinearSubspace([
        _mat([[1, 0, 0], [0, 0, 0], [0, 0, 0]]),
        _mat([[0, 0, 1], [0, 1, 0], [1, 0, 0]]),
        _mat([[0, 0, 0], [0, 0, 1], [0, 1, 0]]),
    ])


def diagonal_net() -> LinearSubspace:
    """Diagonal 3x3 matrices: decoupled models, both degrees 1."""
    return LinearSubspace([_e(3, 0, 0), _e(3, 1, 1), _e(3, 2, 2)])


def polar_diagonal_net() -> LinearSubspace:
    """Annihilator of the diagonal net: the off-diagonal span (hollow net)."""
    return LinearSubspace([_e(3, 0, 1), _e(3, 0, 2), _e(3, 1, 2)])


def identity_line() -> LinearSubspace:
    """The line spanned by the 3x3 identity."""
    return LinearSubspace([SymMat.identity(3, RATIONAL)])


def nonclosed_2x2() -> LinearSubspace:
    """span(E11, E12+E21) in 2x2: the classic non-closed PSD projection.

    Its PSD elements are the multiples of E11 (the lower-right entry is
    pinned to zero, so the off-diagonal must vanish), which makes the
    projected cone an open half-plane plus the origin.
    """
    return LinearSubspace([_e(2, 0, 0), _e(2, 0, 1)])


def blowup_base() -> SymMat:
    """The rank-one matrix whose perturbations are expanded in the blow-up probe."""
    return _mat([[1, 0, 0], [0, 0, 0], [0, 0, 0]])


def blowup_directions() -> list[SymMat]:
    """Perturbation directions (B01, B02, B1, B2) for the blow-up probe."""
    return [
        _mat([[0, 0, 1], [0, 0, 0], [1, 0, 0]]),
        _mat([[0, 1, 0], [1, 0, 0], [0, 0, 0]]),
        _mat([[0, 0, 0], [0, 1, 0], [0, 0, -1]]),
        _mat([[0, 0, 0], [0, 0, 1], [0, 1, 0]]),
    ]


def blowup_example() -> LinearSubspace:
    """The k=5 subspace diag(0,1,1)-perp, spanned by the base and its directions."""
    return LinearSubspace([blowup_base()] + blowup_directions())


BUILTINS = {
    "type-c-net": type_c_net,
    "diagonal-net": diagonal_net,
    "polar-diagonal-net": polar_diagonal_net,
    "identity-line": identity_line,
    "nonclosed-2x2": nonclosed_2x2,
    "blowup-example": blowup_example,
}


def get_builtin(name: str) -> LinearSubspace:
    try:
        return BUILTINS[name]()
    except KeyError:
        known = ", ".join(sorted(BUILTINS))
        raise KeyError(f"unknown builtin {name!r}; available: {known}") from None
