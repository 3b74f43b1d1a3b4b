"""Hermitian linear algebra primitives.

Everything downstream (training closed form, Hamiltonian evolution, phase
estimation) funnels through these four operations so that hermiticity
checks, symmetrization and eigenvector sign conventions live in one place.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .exceptions import (
    DimensionMismatch,
    EmptyMatrix,
    NonHermitianInput,
    SingularSystem,
)

HERMITICITY_TOL = 1e-9
SINGULARITY_TOL = 1e-12


class EigenDecomposition(NamedTuple):
    """Eigenvalues ascending; eigenvectors[:, i] pairs with eigenvalues[i]."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _as_square_matrix(H) -> np.ndarray:
    H = np.asarray(H)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {H.shape}")
    if H.shape[0] == 0:
        raise EmptyMatrix("matrix has zero size")
    if not np.all(np.isfinite(H)):
        raise ValueError("matrix contains non-finite entries")
    return H


def require_hermitian(H, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Validate hermiticity within ``tol`` and return the symmetrized matrix.

    Symmetrizing (H + H^dag)/2 caps the effect of roundoff asymmetry before
    any eigendecomposition.
    """
    H = _as_square_matrix(H)
    scale = max(1.0, float(np.abs(H).max()))
    dev = float(np.abs(H - H.conj().T).max())
    if dev > tol * scale:
        raise NonHermitianInput(
            f"matrix deviates from Hermitian by {dev:.3e} (tol {tol:.1e})"
        )
    return (H + H.conj().T) / 2.0


def eigh(H, tol: float = HERMITICITY_TOL) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    Eigenvalues come back in ascending order.  Each eigenvector is phase
    fixed so that its first component above 1e-12 in magnitude is real and
    positive, which makes decompositions reproducible across calls.
    """
    Hs = require_hermitian(H, tol)
    w, V = np.linalg.eigh(Hs)
    V = V.copy()
    for i in range(V.shape[1]):
        col = V[:, i]
        idx = np.flatnonzero(np.abs(col) > 1e-12)
        if idx.size:
            lead = col[idx[0]]
            V[:, i] = col * (np.conj(lead) / abs(lead))
    return EigenDecomposition(w, V)


def matrix_exp_unitary(H, t: float, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Unitary evolution operator exp(-i*H*t) for Hermitian H.

    Built as V diag(exp(-i*lambda*t)) V^dag from the eigendecomposition,
    so the result is unitary to machine precision for any real t.
    """
    w, V = eigh(H, tol)
    phases = np.exp(-1j * w * float(t))
    return (V * phases) @ V.conj().T


def solve_hermitian(H, b, ridge: float = 0.0) -> np.ndarray:
    """Solve (H + ridge*I) x = b for Hermitian H.

    Raises SingularSystem when the regularized matrix has an eigenvalue of
    magnitude <= 1e-12.  One step of iterative refinement keeps the
    residual near machine precision even for ill conditioned systems.
    """
    Hs = require_hermitian(H)
    b = np.asarray(b)
    if b.shape[0] != Hs.shape[0] or b.ndim != 1:
        raise DimensionMismatch(
            f"right-hand side shape {b.shape} does not match matrix {Hs.shape}"
        )
    if ridge < 0:
        raise ValueError("ridge must be non-negative")
    A = Hs + ridge * np.eye(Hs.shape[0])
    w = np.linalg.eigvalsh(A)
    if float(np.min(np.abs(w))) <= SINGULARITY_TOL:
        raise SingularSystem(
            f"matrix is singular within tolerance (|eig|_min = {np.min(np.abs(w)):.3e})"
        )
    x = np.linalg.solve(A, b)
    x = x + np.linalg.solve(A, b - A @ x)
    return x


def condition_number(H) -> float:
    """Spectral condition number lambda_max/lambda_min of a positive definite H."""
    Hs = require_hermitian(H)
    w = np.linalg.eigvalsh(Hs)
    if float(w[0]) <= 1e-14:
        raise SingularSystem(
            f"matrix is not positive definite (lambda_min = {w[0]:.3e})"
        )
    return float(w[-1] / w[0])
