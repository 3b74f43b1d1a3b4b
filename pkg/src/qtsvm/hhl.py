"""Quantum linear-system solver and the quantum training pipeline.

To produce the hyperplane state |H^-1 b> the solver runs textbook phase
estimation against the evolution U = exp(+i H^ t0), rotates an ancilla by
the decoded inverse eigenvalue, uncomputes the phase estimation, and
postselects the ancilla on 1:

    clock value k decodes the eigenvalue lambda(k) = 2 pi k / (2^c t0)
    ancilla |1> amplitude: min(1, C / lambda(k)), values below the cutoff
    are excluded from inversion (k = 0 always is)

The clock transforms are simulated structurally: the initial Hadamard
layer, the controlled powers U^k, and the (inverse) Fourier transform are
applied along the clock axis of the joint amplitude array, which is
exactly what the gate-level circuit computes.

The simulator reads the spectrum of H^ directly to pick t0 (so that
lambda_max t0 = pi), the rotation constant C (0.9 * smallest nonzero
eigenvalue) and the cutoff (half the smallest decodable eigenvalue).
A fault-tolerant device would estimate these; a desk-scale simulation is
allowed to look.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .classical import ClassicalModel, Dataset, build_augmented, train_classical
from .exceptions import (
    DimensionMismatch,
    PhaseWraparound,
    SingularOnSupport,
)
from .hamiltonian import HamiltonianPair, assemble_hamiltonians, trotter_step
from .linalg import condition_number, eigh
from .prep import (
    PreparedInput,
    classical_hyperplane_state,
    postselect_input_state,
    prepare_density_k,
)
from .states import (
    DEFAULT_QUBIT_CAP,
    RegisterLayout,
    StateVector,
    check_qubit_budget,
    fidelity,
    padded_dim,
)

SUPPORT_FLOOR = 1e-24
SPECTRUM_FLOOR = 1e-12


@dataclass(frozen=True)
class HHLConfig:
    """Solver knobs; None fields are resolved from the operator's spectrum."""

    clock_qubits: int = 8
    t0: float | None = None
    C: float | None = None
    eigenvalue_cutoff: float | None = None
    evolution: str = "exact"
    trotter_steps_per_unit: int = 64

    def __post_init__(self):
        if not 1 <= self.clock_qubits <= 24:
            raise ValueError(f"clock_qubits must be in [1, 24], got {self.clock_qubits}")
        if self.evolution not in ("exact", "trotter"):
            raise ValueError(f"evolution must be 'exact' or 'trotter', got {self.evolution!r}")
        if self.evolution == "trotter" and self.trotter_steps_per_unit < 1:
            raise ValueError("trotter_steps_per_unit must be >= 1")
        for name in ("t0", "C", "eigenvalue_cutoff"):
            v = getattr(self, name)
            if v is not None and (not np.isfinite(v) or v <= 0):
                raise ValueError(f"{name} must be positive when given, got {v!r}")

    def resolve(self, H_hat) -> "HHLConfig":
        """Fill spectrum-dependent defaults and check for phase wraparound."""
        w, _ = eigh(H_hat)
        lam_max = float(w[-1])
        if lam_max <= SPECTRUM_FLOOR:
            raise SingularOnSupport("operator has no spectrum above tolerance")
        above = w[w > SPECTRUM_FLOOR * lam_max]
        lam_min = float(above[0])
        t0 = self.t0 if self.t0 is not None else math.pi / lam_max
        if lam_max * t0 >= 2 * math.pi:
            raise PhaseWraparound(
                f"lambda_max * t0 = {lam_max * t0:.4f} >= 2*pi would alias eigenphases"
            )
        cutoff = self.eigenvalue_cutoff
        if cutoff is None:
            cutoff = math.pi / ((1 << self.clock_qubits) * t0)
        C = self.C if self.C is not None else 0.9 * lam_min
        return replace(self, t0=t0, C=C, eigenvalue_cutoff=cutoff)

    @property
    def is_resolved(self) -> bool:
        return None not in (self.t0, self.C, self.eigenvalue_cutoff)


@dataclass(frozen=True)
class HHLResult:
    """Postselected solution state and the bookkeeping around it."""

    solution_state: StateVector
    success_probability: float
    repetitions: int
    gate_count: dict[str, int]
    clock_return_probability: float
    config: HHLConfig


def _validate_inputs(H_hat, b_state: StateVector) -> np.ndarray:
    H = np.asarray(H_hat, dtype=complex)
    if len(b_state.layout.registers) != 1:
        raise ValueError("b_state must live on a single register")
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise DimensionMismatch(f"operator shape {H.shape} is not square")
    if H.shape[0] != b_state.dim:
        raise DimensionMismatch(
            f"operator dimension {H.shape[0]} does not match state dimension {b_state.dim}"
        )
    return H


def _trotter_steps_total(config: HHLConfig) -> int:
    return max(1, math.ceil(config.trotter_steps_per_unit * config.t0))


def _evolution_unitary(
    H_hat, config: HHLConfig, pair: HamiltonianPair | None, which: int | None
) -> np.ndarray:
    """The controlled-power base unitary U = exp(+i H^ t0), exact or split."""
    if config.evolution == "exact":
        w, V = eigh(H_hat)
        return (V * np.exp(1j * w * config.t0)) @ V.conj().T
    if pair is None or which is None:
        raise ValueError("trotter evolution requires the Hamiltonian pair and plane index")
    if not np.allclose(pair.hamiltonian(which), H_hat, atol=1e-9):
        raise ValueError("H_hat does not match the requested plane of the pair")
    steps = _trotter_steps_total(config)
    # trotter_step with negative dt gives one slice of exp(+i H^ |dt|)
    step = trotter_step(pair, which, -config.t0 / steps)
    return np.linalg.matrix_power(step, steps)


def _pe_forward(U: np.ndarray, b_amps: np.ndarray, clock_qubits: int) -> np.ndarray:
    """Hadamard layer, controlled powers U^k, inverse QFT; shape (2^c, dim)."""
    N = 1 << clock_qubits
    dim = b_amps.shape[0]
    joint = np.empty((N, dim), dtype=complex)
    cur = b_amps.astype(complex) / math.sqrt(N)
    for k in range(N):
        joint[k] = cur
        cur = U @ cur
    return np.fft.fft(joint, axis=0) / math.sqrt(N)


def _pe_backward(z: np.ndarray, U: np.ndarray) -> np.ndarray:
    """Inverse of the phase-estimation block: QFT, U^-k, Hadamard layer.

    Acts along the first (clock) axis; trailing axes ride along.
    """
    N = z.shape[0]
    z = np.fft.ifft(z, axis=0) * math.sqrt(N)
    Ud = U.conj().T
    out = np.empty_like(z)
    M = np.eye(U.shape[0], dtype=complex)
    for k in range(N):
        out[k] = np.tensordot(M, z[k], axes=(1, 0))
        M = Ud @ M
    return _fwht_axis0(out) / math.sqrt(N)


def _fwht_axis0(x: np.ndarray) -> np.ndarray:
    n = x.shape[0]
    shape = x.shape
    x = x.reshape(n, -1).copy()
    h = 1
    while h < n:
        x = x.reshape(n // (2 * h), 2, h, -1)
        a = x[:, 0].copy()
        b = x[:, 1].copy()
        x[:, 0] = a + b
        x[:, 1] = a - b
        x = x.reshape(n, -1)
        h *= 2
    return x.reshape(shape)


def decoded_eigenvalues(config: HHLConfig) -> np.ndarray:
    """lambda(k) = 2 pi k / (2^c t0) for every clock value k."""
    if not config.is_resolved:
        raise ValueError("config must be resolved against an operator first")
    N = 1 << config.clock_qubits
    return 2 * math.pi * np.arange(N) / (N * config.t0)


def phase_estimation(
    H_hat,
    b_state: StateVector,
    config: HHLConfig,
    pair: HamiltonianPair | None = None,
    which: int | None = None,
) -> StateVector:
    """Phase estimation of exp(+i H^ t0) applied to b.

    Output registers are (clock, data) with the clock most significant;
    for an eigenvector input with eigenvalue lambda the clock amplitude
    concentrates on values near lambda * t0 / (2 pi) * 2^c.
    """
    H = _validate_inputs(H_hat, b_state)
    resolved = config.resolve(H)
    U = _evolution_unitary(H, resolved, pair, which)
    joint = _pe_forward(U, b_state.amplitudes, resolved.clock_qubits)
    qd = b_state.num_qubits
    layout = RegisterLayout((("clock", resolved.clock_qubits), ("data", qd)))
    return StateVector(joint.reshape(-1), layout)


def eigenvalue_inversion(state: StateVector, config: HHLConfig) -> StateVector:
    """Rotate a fresh ancilla by the decoded inverse eigenvalue.

    Clock value k gets ancilla |1> amplitude min(1, C / lambda(k)); clock
    values whose decoded eigenvalue falls below the cutoff (always k = 0)
    are excluded and keep the ancilla in |0>.
    """
    if not config.is_resolved:
        raise ValueError("config must be resolved against an operator first")
    c = state.layout.qubits("clock")
    if c != config.clock_qubits:
        raise DimensionMismatch(
            f"state has {c} clock qubits, config expects {config.clock_qubits}"
        )
    N = 1 << c
    lam = decoded_eigenvalues(config)
    ratio = np.zeros(N)
    included = lam >= config.eigenvalue_cutoff
    ratio[included] = np.minimum(1.0, config.C / lam[included])
    joint = state.amplitudes.reshape(N, -1)
    out = np.empty((N, joint.shape[1], 2), dtype=complex)
    out[:, :, 0] = joint * np.sqrt(1.0 - ratio**2)[:, None]
    out[:, :, 1] = joint * ratio[:, None]
    layout = RegisterLayout(state.layout.registers + (("ancilla", 1),))
    return StateVector(out.reshape(-1), layout)


def _hhl_gate_counts(config: HHLConfig) -> dict[str, int]:
    """Structural gate counts; functions of the clock width and step count only."""
    c = config.clock_qubits
    counts = {
        "hadamard": 2 * c,
        "qft": c * (c + 1),
        "controlled_evolution": 2 * c,
        "inversion_rotation": c,
        "trotter_exponentials": 0,
    }
    if config.evolution == "trotter":
        counts["trotter_exponentials"] = 2 * 2 * _trotter_steps_total(config) * c
    return counts


def solve_qls(
    H_hat,
    b_state: StateVector,
    config: HHLConfig,
    seed: int,
    pair: HamiltonianPair | None = None,
    which: int | None = None,
) -> HHLResult:
    """Full solver: phase estimation, inversion, uncompute, postselection.

    The returned solution state approximates normalize(H^-1 b) on the data
    register.  success_probability is the exact ancilla-1 probability; the
    number of repetitions until success is sampled geometrically from it.
    """
    H = _validate_inputs(H_hat, b_state)
    resolved = config.resolve(H)
    c = resolved.clock_qubits
    N = 1 << c
    U = _evolution_unitary(H, resolved, pair, which)
    joint = _pe_forward(U, b_state.amplitudes, c)

    lam = decoded_eigenvalues(resolved)
    ratio = np.zeros(N)
    included = lam >= resolved.eigenvalue_cutoff
    ratio[included] = np.minimum(1.0, resolved.C / lam[included])
    anc1 = joint * ratio[:, None]

    p_success = float(np.sum(np.abs(anc1) ** 2))
    if p_success < SUPPORT_FLOOR:
        raise SingularOnSupport(
            "b has no support on invertible eigenvalues: postselection cannot succeed"
        )
    anc1 = _pe_backward(anc1, U)
    clock0 = anc1[0]
    w = float(np.linalg.norm(clock0))
    clock_return = w**2 / p_success
    if w < 1e-14:
        raise SingularOnSupport("uncompute left no amplitude on the zero clock value")
    solution = StateVector(
        clock0 / w, RegisterLayout((("data", b_state.num_qubits),))
    )
    repetitions = int(np.random.default_rng(seed).geometric(min(1.0, p_success)))
    return HHLResult(
        solution_state=solution,
        success_probability=p_success,
        repetitions=repetitions,
        gate_count=_hhl_gate_counts(resolved),
        clock_return_probability=clock_return,
        config=resolved,
    )


@dataclass(frozen=True)
class PlaneTrainingRecord:
    """Everything measured while solving for one hyperplane state."""

    state: StateVector
    prep: PreparedInput
    hhl: HHLResult
    fidelity_vs_classical: float
    condition_number: float
    index_qubits: int

    def as_dict(self) -> dict:
        return {
            "prep_success_probability": self.prep.success_probability,
            "prep_attempts": self.prep.attempts,
            "prep_gate_count": {"walsh_hadamard": self.index_qubits, "postselection": 1},
            "hhl_success_probability": self.hhl.success_probability,
            "hhl_repetitions": self.hhl.repetitions,
            "hhl_gate_count": dict(self.hhl.gate_count),
            "clock_return_probability": self.hhl.clock_return_probability,
            "fidelity_vs_classical": self.fidelity_vs_classical,
            "condition_number": self.condition_number,
            "t0": self.hhl.config.t0,
            "C": self.hhl.config.C,
            "eigenvalue_cutoff": self.hhl.config.eigenvalue_cutoff,
        }


@dataclass(frozen=True)
class QuantumTrainingResult:
    """Both hyperplane states plus the classical reference and all reports."""

    plane1: PlaneTrainingRecord
    plane2: PlaneTrainingRecord
    classical_model: ClassicalModel
    pair: HamiltonianPair
    data_qubits: int
    clock_qubits: int

    @property
    def state1(self) -> StateVector:
        return self.plane1.state

    @property
    def state2(self) -> StateVector:
        return self.plane2.state

    def report(self) -> dict:
        return {
            "register_widths": {
                "data_qubits": self.data_qubits,
                "clock_qubits": self.clock_qubits,
                "index_qubits_plane1": self.plane1.index_qubits,
                "index_qubits_plane2": self.plane2.index_qubits,
            },
            "plane1": self.plane1.as_dict(),
            "plane2": self.plane2.as_dict(),
        }


def train_quantum(
    data: Dataset,
    c1: float,
    c2: float,
    config: HHLConfig,
    seed: int,
    max_qubits: int = DEFAULT_QUBIT_CAP,
) -> QuantumTrainingResult:
    """Run the whole quantum training pipeline on a dataset.

    Plane 1 solves H1 (w1, b1) = -F^T e2 with the right-hand side prepared
    from the negative-class rows; plane 2 mirrors it.  Solution states are
    rays, so the classical minus sign drops out.  Fidelity against the
    closed-form solution is recorded for both planes.
    """
    aug = build_augmented(data, c1, c2)
    n_aug = data.n_features + 1
    qd = padded_dim(n_aug).bit_length() - 1
    qi1 = padded_dim(aug.E.shape[0]).bit_length() - 1
    qi2 = padded_dim(aug.F.shape[0]).bit_length() - 1
    check_qubit_budget(qd + max(qi1, qi2), max_qubits)
    check_qubit_budget(config.clock_qubits + qd + 1, max_qubits)

    seeds = [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(seed).spawn(4)]
    prep1 = postselect_input_state(aug.F, seeds[0])
    prep2 = postselect_input_state(aug.E, seeds[1])
    K1_hat = prepare_density_k(aug.E)
    K2_hat = prepare_density_k(aug.F)
    pair = assemble_hamiltonians(
        K1_hat,
        K2_hat,
        float(np.trace(aug.K1)),
        float(np.trace(aug.K2)),
        c1,
        c2,
        n_aug,
    )
    res1 = solve_qls(pair.H1_hat, prep1.state, config, seeds[2], pair=pair, which=1)
    res2 = solve_qls(pair.H2_hat, prep2.state, config, seeds[3], pair=pair, which=2)

    classical = train_classical(data, c1, c2)
    plane1 = PlaneTrainingRecord(
        state=res1.solution_state,
        prep=prep1,
        hhl=res1,
        fidelity_vs_classical=fidelity(
            res1.solution_state, classical_hyperplane_state(classical, 1)
        ),
        condition_number=condition_number(pair.cropped(1)),
        index_qubits=qi2,
    )
    plane2 = PlaneTrainingRecord(
        state=res2.solution_state,
        prep=prep2,
        hhl=res2,
        fidelity_vs_classical=fidelity(
            res2.solution_state, classical_hyperplane_state(classical, 2)
        ),
        condition_number=condition_number(pair.cropped(2)),
        index_qubits=qi1,
    )
    return QuantumTrainingResult(
        plane1=plane1,
        plane2=plane2,
        classical_model=classical,
        pair=pair,
        data_qubits=qd,
        clock_qubits=config.clock_qubits,
    )
