"""Amplitude-encoded input states for the quantum training pipeline.

A matrix M (rows M_i) is loaded as the two-register state

    |chi> = (1/||M||_F) sum_i ||M_i|| |M_i> |i>

with the row vectors on the data register and the row index on the index
register.  A Walsh-Hadamard on the index register followed by postselecting
index value 0 leaves the data register proportional to the unsigned row sum
M^T e, which is exactly the right-hand side the hyperplane systems need.
The success probability ||M^T e||^2 / (2^k ||M||_F^2) is reported as is;
it depends on how much the rows reinforce each other.

Tracing the index register out of |chi><chi| instead yields the normalized
Gram operator M^T M / tr(M^T M), the Hamiltonian building block.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classical import ClassicalModel
from .exceptions import DimensionMismatch, EmptyMatrix, ZeroColumnSum, ZeroVector
from .states import (
    DensityMatrix,
    RegisterLayout,
    StateVector,
    basis_projectors,
    normalize_to_state,
    padded_dim,
    partial_trace,
    single_register,
    walsh_hadamard,
)

POSTSELECT_FLOOR = 1e-24


def _as_loadable_matrix(M) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d matrix, got shape {M.shape}")
    if M.shape[0] == 0 or M.shape[1] == 0:
        raise EmptyMatrix(f"matrix has a zero-sized dimension {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix contains non-finite entries")
    return M


@dataclass(frozen=True)
class PreparedInput:
    """A postselected input state plus the cost of obtaining it."""

    state: StateVector
    success_probability: float
    attempts: int


def build_chi(M) -> StateVector:
    """Row-indexed amplitude encoding of M over (data, index) registers.

    The amplitude of |k>_data |i>_index is M[i, k] / ||M||_F; both registers
    are zero padded up to powers of two.
    """
    M = _as_loadable_matrix(M)
    norm = float(np.linalg.norm(M))
    if norm == 0.0:
        raise ZeroVector("cannot encode an all-zero matrix")
    rows, cols = M.shape
    dd, di = padded_dim(cols), padded_dim(rows)
    arr = np.zeros((dd, di), dtype=complex)
    arr[:cols, :rows] = M.T / norm
    layout = RegisterLayout(
        (("data", dd.bit_length() - 1), ("index", di.bit_length() - 1))
    )
    return StateVector(arr.reshape(-1), layout)


def postselect_input_state(M, seed: int) -> PreparedInput:
    """Prepare the normalized unsigned row sum |M^T e> by postselection.

    Runs the actual circuit: encode |chi>, Walsh-Hadamard the index
    register, project onto index outcome 0.  The number of attempts until
    the postselection succeeds is sampled geometrically from the exact
    success probability.
    """
    chi = build_chi(M)
    mixed = walsh_hadamard(chi, "index")
    proj0 = basis_projectors(mixed.layout, "index")[0]
    branch = proj0 @ mixed.amplitudes
    p = float(np.real(np.vdot(branch, branch)))
    if p < POSTSELECT_FLOOR:
        raise ZeroColumnSum(
            "postselection cannot succeed: the column sums of M all cancel"
        )
    dd = mixed.layout.dim("data")
    data_amps = branch.reshape(dd, -1)[:, 0] / np.sqrt(p)
    state = StateVector(data_amps, single_register("data", dd.bit_length() - 1))
    attempts = int(np.random.default_rng(seed).geometric(min(1.0, p)))
    return PreparedInput(state=state, success_probability=p, attempts=attempts)


def prepare_density_k(M) -> DensityMatrix:
    """Normalized Gram operator M^T M / tr(M^T M) as a reduced state.

    Computed the quantum way: trace the index register out of |chi><chi|.
    The returned matrix is padded; ``block(cols)`` crops the padding away.
    """
    chi = build_chi(M)
    return partial_trace(chi, None, keep="data")


def prepare_sample_state(x) -> StateVector:
    """Bias-augmented sample state |x~> with amplitudes (x, 1)/sqrt(|x|^2+1)."""
    x = np.asarray(x, dtype=float).ravel()
    if x.shape[0] == 0:
        raise EmptyMatrix("sample has no features")
    if not np.all(np.isfinite(x)):
        raise ValueError("sample contains non-finite entries")
    return normalize_to_state(np.append(x, 1.0), "data")


def classical_hyperplane_state(model: ClassicalModel, which: int) -> StateVector:
    """Normalized (w, b) vector of one trained hyperplane, padded like
    the quantum solution states; the reference for fidelity checks."""
    return normalize_to_state(model.augmented_vector(which), "data")
