"""SWAP-test distance estimation and the quantum decision rule.

The squared distance from a sample to a trained hyperplane factors into
measurable pieces:

    d_i^2 = |<w_i,b_i | x~>|^2 * N_x / ||w_i||^2

where |x~> is the bias-augmented sample state, N_x = |x|^2 + 1 its
normalization, the inner product comes from a SWAP test against the
hyperplane state, and ||w_i||^2 is the probability of missing the bias
basis state in a projective measurement.  The overall hyperplane-state
normalization cancels in the ratio.  The sample takes the label of the
smaller ratio, with ties going to +1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .exceptions import DegenerateHyperplane, DimensionMismatch, PaddingLeakage
from .prep import prepare_sample_state
from .states import (
    DEFAULT_QUBIT_CAP,
    StateVector,
    apply_unitary,
    basis_projectors,
    check_qubit_budget,
    measure_projective,
    single_register,
    tensor,
)

PADDING_TOL = 1e-6
EXACT_DEGENERATE_TOL = 1e-12

_HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)


@dataclass(frozen=True)
class SwapTestResult:
    """One SWAP-test run: sampled estimate plus the exact probabilities."""

    estimate: float
    overlap_sq_exact: float
    p0_exact: float
    p0_empirical: float
    shots: int
    seed: int


@dataclass(frozen=True)
class NormEstimate:
    """Probability of missing the bias slot: ||w||^2 of a normalized (w, b)."""

    estimate: float
    exact: float
    shots: int
    seed: int


@dataclass(frozen=True)
class PredictionConfig:
    """Shot budget and seed for prediction; exact=True skips sampling."""

    shots: int = 10_000
    seed: int = 0
    exact: bool = False
    tie_rule: str = "positive"
    max_qubits: int = DEFAULT_QUBIT_CAP

    def __post_init__(self):
        if self.shots < 1:
            raise ValueError(f"shots must be >= 1, got {self.shots}")
        if self.tie_rule != "positive":
            raise ValueError("the tie rule is fixed: ties go to the positive class")


@dataclass(frozen=True)
class DistanceEstimates:
    """Measured ingredients and the squared-distance ratios built from them."""

    I1: float
    I2: float
    normsq_w1: float
    normsq_w2: float
    ratio1: float
    ratio2: float

    @property
    def margin(self) -> float:
        """Separation of the two ratios; tiny values mean a coin-flip label."""
        return abs(self.ratio1 - self.ratio2)


def _controlled_swap(d: int) -> np.ndarray:
    """CSWAP on (ancilla, left, right) with register dimensions (2, d, d)."""
    D = 2 * d * d
    src = np.arange(D)
    a, rest = divmod(src, d * d)
    x, y = divmod(rest, d)
    tgt = np.where(a == 0, src, a * d * d + y * d + x)
    U = np.zeros((D, D))
    U[tgt, src] = 1.0
    return U


def swap_test(
    a: StateVector,
    b: StateVector,
    shots: int,
    seed: int,
    max_qubits: int = DEFAULT_QUBIT_CAP,
) -> SwapTestResult:
    """Estimate |<a|b>|^2 with the ancilla SWAP-test circuit.

    P(ancilla = 0) = (1 + |<a|b>|^2) / 2 exactly; the sampled estimate
    2 * P_hat(0) - 1 is clamped into [0, 1].
    """
    if a.dim != b.dim:
        raise DimensionMismatch(f"state dimensions differ: {a.dim} vs {b.dim}")
    check_qubit_budget(1 + a.num_qubits + b.num_qubits, max_qubits)
    anc = StateVector(np.array([1.0, 0.0]), single_register("ancilla", 1))
    left = StateVector(a.amplitudes, single_register("left", a.num_qubits))
    right = StateVector(b.amplitudes, single_register("right", b.num_qubits))
    psi = tensor(tensor(anc, left), right)
    psi = apply_unitary(psi, _HADAMARD, "ancilla")
    psi = apply_unitary(psi, _controlled_swap(a.dim), ("ancilla", "left", "right"))
    psi = apply_unitary(psi, _HADAMARD, "ancilla")
    result = measure_projective(
        psi, basis_projectors(psi.layout, "ancilla"), shots, seed
    )
    p0 = float(result.probabilities[0])
    p0_hat = result.frequency(0)
    return SwapTestResult(
        estimate=float(np.clip(2.0 * p0_hat - 1.0, 0.0, 1.0)),
        overlap_sq_exact=float(np.clip(2.0 * p0 - 1.0, 0.0, 1.0)),
        p0_exact=p0,
        p0_empirical=p0_hat,
        shots=shots,
        seed=seed,
    )


def estimate_norm_w(
    state: StateVector, bias_index: int, shots: int, seed: int
) -> NormEstimate:
    """Measure ||w||^2 of a normalized hyperplane state (w, b)/||(w, b)||.

    Projecting onto the bias basis state has probability |b|^2, so the
    complementary outcome estimates ||w||^2.  Padding amplitudes above
    1e-6 mean the state does not encode an (n+1)-component vector.
    """
    amps = state.amplitudes
    if not 0 <= bias_index < state.dim:
        raise DimensionMismatch(
            f"bias index {bias_index} outside state dimension {state.dim}"
        )
    leak = float(np.sum(np.abs(amps[bias_index + 1 :]) ** 2))
    if leak > PADDING_TOL:
        raise PaddingLeakage(
            f"padding amplitudes carry probability {leak:.3e} (> {PADDING_TOL})"
        )
    P1 = np.zeros((state.dim, state.dim), dtype=complex)
    P1[bias_index, bias_index] = 1.0
    P0 = np.eye(state.dim, dtype=complex) - P1
    result = measure_projective(state, [P0, P1], shots, seed)
    return NormEstimate(
        estimate=result.frequency(0),
        exact=float(result.probabilities[0]),
        shots=shots,
        seed=seed,
    )


def _subseeds(seed: int, k: int) -> list[int]:
    return [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(seed).spawn(k)]


def classify(
    x,
    state1: StateVector,
    state2: StateVector,
    config: PredictionConfig,
) -> tuple[int, DistanceEstimates]:
    """Label one sample from SWAP-test distance ratios.

    ratio_i = I_i * N_x / ||w_i||^2 estimates d_i^2; the label is +1 when
    ratio1 <= ratio2.  In exact mode every ingredient uses the exact
    measurement probabilities; otherwise everything is shot sampled.
    A hyperplane whose measured ||w||^2 is indistinguishable from zero
    (below 10/shots, or 1e-12 in exact mode) has no defined distance.
    """
    x = np.asarray(x, dtype=float).ravel()
    sample = prepare_sample_state(x)
    if state1.dim != sample.dim or state2.dim != sample.dim:
        raise DimensionMismatch(
            f"hyperplane states (dims {state1.dim}, {state2.dim}) do not match "
            f"the padded sample dimension {sample.dim}"
        )
    n_x = float(x @ x) + 1.0
    bias_index = x.shape[0]
    shots = 1 if config.exact else config.shots
    seeds = _subseeds(config.seed, 4)
    swap1 = swap_test(state1, sample, shots, seeds[0], config.max_qubits)
    swap2 = swap_test(state2, sample, shots, seeds[1], config.max_qubits)
    norm1 = estimate_norm_w(state1, bias_index, shots, seeds[2])
    norm2 = estimate_norm_w(state2, bias_index, shots, seeds[3])
    if config.exact:
        i1, i2 = swap1.overlap_sq_exact, swap2.overlap_sq_exact
        nsq1, nsq2 = norm1.exact, norm2.exact
        threshold = EXACT_DEGENERATE_TOL
    else:
        i1, i2 = swap1.estimate, swap2.estimate
        nsq1, nsq2 = norm1.estimate, norm2.estimate
        threshold = 10.0 / config.shots
    for which, nsq in ((1, nsq1), (2, nsq2)):
        if nsq < threshold:
            raise DegenerateHyperplane(
                f"||w{which}||^2 estimate {nsq:.3e} is below threshold {threshold:.3e}"
            )
    est = DistanceEstimates(
        I1=i1,
        I2=i2,
        normsq_w1=nsq1,
        normsq_w2=nsq2,
        ratio1=i1 * n_x / nsq1,
        ratio2=i2 * n_x / nsq2,
    )
    label = 1 if est.ratio1 <= est.ratio2 else -1
    return label, est


def predict_quantum(
    X,
    state1: StateVector,
    state2: StateVector,
    config: PredictionConfig,
) -> tuple[np.ndarray, list[DistanceEstimates]]:
    """Classify every row of X with an independent per-sample seed stream."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise DimensionMismatch(f"X must be 2-d, got shape {X.shape}")
    labels = np.empty(X.shape[0], dtype=int)
    estimates: list[DistanceEstimates] = []
    for i, row_seed in enumerate(_subseeds(config.seed, max(1, X.shape[0]))[: X.shape[0]]):
        label, est = classify(X[i], state1, state2, replace(config, seed=row_seed))
        labels[i] = label
        estimates.append(est)
    return labels, estimates
