"""Dense statevector and density-matrix simulation core.

States live on named qubit registers.  The register list order defines
index significance: the first-listed register is the most significant,
so a state over registers (a, b) stores the amplitude of |i>_a |j>_b at
flat index i * dim(b) + j, matching the Kronecker product convention.

Vectors whose length is not a power of two are zero padded up to the next
power; padding amplitudes are ordinary amplitudes that happen to be zero.

Everything is simulated densely.  The default budget of 14 qubits keeps
the largest state around 16k amplitudes, comfortable on a laptop.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import (
    DimensionMismatch,
    InvalidProjectorSet,
    NonUnitaryOperator,
    QubitCapExceeded,
    UnknownRegister,
    ZeroVector,
)

NORM_TOL = 1e-10
UNITARITY_TOL = 1e-9
PROJECTOR_TOL = 1e-9
DEFAULT_QUBIT_CAP = 14


def check_qubit_budget(total_qubits: int, cap: int = DEFAULT_QUBIT_CAP) -> None:
    """Fail fast (before any allocation) when a simulation would be too large."""
    if total_qubits > cap:
        raise QubitCapExceeded(
            f"simulation needs {total_qubits} qubits, cap is {cap}"
        )


def padded_dim(length: int) -> int:
    """Smallest power of two >= length."""
    if length < 1:
        raise ZeroVector("cannot pad a zero-length vector")
    return 1 << (length - 1).bit_length()


@dataclass(frozen=True)
class RegisterLayout:
    """Ordered named registers; first listed is most significant."""

    registers: tuple[tuple[str, int], ...]

    def __post_init__(self):
        regs = tuple((str(n), int(q)) for n, q in self.registers)
        names = [n for n, _ in regs]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate register names in {names}")
        for n, q in regs:
            if q < 0:
                raise ValueError(f"register {n!r} has negative qubit count")
        object.__setattr__(self, "registers", regs)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.registers)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(1 << q for _, q in self.registers)

    @property
    def total_qubits(self) -> int:
        return sum(q for _, q in self.registers)

    @property
    def total_dim(self) -> int:
        return 1 << self.total_qubits

    def axis(self, name: str) -> int:
        for i, (n, _) in enumerate(self.registers):
            if n == name:
                return i
        raise UnknownRegister(f"no register named {name!r} in {self.names}")

    def qubits(self, name: str) -> int:
        return self.registers[self.axis(name)][1]

    def dim(self, name: str) -> int:
        return 1 << self.qubits(name)

    def flat_index(self, **indices: int) -> int:
        """Flat amplitude index for one computational basis state."""
        if set(indices) != set(self.names):
            raise UnknownRegister(
                f"indices {sorted(indices)} do not match registers {sorted(self.names)}"
            )
        flat = 0
        for name, dim in zip(self.names, self.dims):
            i = indices[name]
            if not 0 <= i < dim:
                raise ValueError(f"index {i} out of range for register {name!r}")
            flat = flat * dim + i
        return flat


def single_register(name: str, qubits: int) -> RegisterLayout:
    return RegisterLayout(((name, qubits),))


@dataclass(frozen=True)
class StateVector:
    """Unit-norm complex amplitudes over a register layout."""

    amplitudes: np.ndarray
    layout: RegisterLayout

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1:
            raise DimensionMismatch(f"amplitudes must be 1-d, got shape {amps.shape}")
        if amps.shape[0] != self.layout.total_dim:
            raise DimensionMismatch(
                f"{amps.shape[0]} amplitudes for a {self.layout.total_dim}-dim layout"
            )
        if not np.all(np.isfinite(amps.view(float))):
            raise ValueError("amplitudes contain non-finite entries")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm {norm!r} is not 1 within {NORM_TOL}")
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def num_qubits(self) -> int:
        return self.layout.total_qubits

    @property
    def dim(self) -> int:
        return self.layout.total_dim

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def amplitude(self, **indices: int) -> complex:
        return complex(self.amplitudes[self.layout.flat_index(**indices)])

    def reshaped(self) -> np.ndarray:
        """Read-only view shaped one axis per register."""
        return self.amplitudes.reshape(self.layout.dims)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite (within tolerance)."""

    matrix: np.ndarray

    def __post_init__(self):
        rho = np.asarray(self.matrix, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise DimensionMismatch(f"density matrix shape {rho.shape} is not square")
        if float(np.abs(rho - rho.conj().T).max()) > NORM_TOL:
            raise ValueError("density matrix is not Hermitian within 1e-10")
        tr = complex(np.trace(rho))
        if abs(tr - 1.0) > NORM_TOL:
            raise ValueError(f"density matrix trace {tr} is not 1 within 1e-10")
        if float(np.linalg.eigvalsh((rho + rho.conj().T) / 2)[0]) < -NORM_TOL:
            raise ValueError("density matrix has an eigenvalue below -1e-10")
        rho = rho.copy()
        rho.flags.writeable = False
        object.__setattr__(self, "matrix", rho)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def block(self, size: int) -> np.ndarray:
        """Top-left block, used to crop away padding dimensions."""
        return np.array(self.matrix[:size, :size])


@dataclass(frozen=True)
class MeasurementResult:
    """Sampled shot counts plus the exact distribution they came from."""

    counts: dict[int, int]
    shots: int
    seed: int
    probabilities: np.ndarray
    post_states: tuple[StateVector | None, ...] = field(repr=False)

    def frequency(self, outcome: int) -> float:
        return self.counts.get(outcome, 0) / self.shots


def normalize_to_state(v, register_name: str = "data") -> StateVector:
    """Normalize a vector into a single-register state, zero padding to 2^q."""
    v = np.asarray(v, dtype=complex).ravel()
    if v.shape[0] == 0:
        raise ZeroVector("cannot encode an empty vector")
    if not np.all(np.isfinite(v.view(float))):
        raise ValueError("vector contains non-finite entries")
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise ZeroVector("cannot normalize the zero vector")
    dim = padded_dim(v.shape[0])
    amps = np.zeros(dim, dtype=complex)
    amps[: v.shape[0]] = v / norm
    layout = single_register(register_name, dim.bit_length() - 1)
    return StateVector(amps, layout)


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """Tensor product; layouts concatenate, a's registers stay most significant."""
    overlap = set(a.layout.names) & set(b.layout.names)
    if overlap:
        raise ValueError(f"register names {sorted(overlap)} appear on both sides")
    layout = RegisterLayout(a.layout.registers + b.layout.registers)
    return StateVector(np.kron(a.amplitudes, b.amplitudes), layout)


def _target_axes(layout: RegisterLayout, targets) -> list[int]:
    if isinstance(targets, str):
        targets = (targets,)
    axes = [layout.axis(t) for t in targets]
    if len(set(axes)) != len(axes):
        raise ValueError(f"duplicate target registers in {targets}")
    return axes


def apply_unitary(state: StateVector, U, targets) -> StateVector:
    """Apply a unitary to one or more registers (listed most significant first)."""
    U = np.asarray(U, dtype=complex)
    axes = _target_axes(state.layout, targets)
    dims = state.layout.dims
    d_t = int(np.prod([dims[a] for a in axes], dtype=object)) if axes else 1
    if U.shape != (d_t, d_t):
        raise DimensionMismatch(
            f"operator shape {U.shape} does not match target dimension {d_t}"
        )
    if float(np.abs(U.conj().T @ U - np.eye(d_t)).max()) > UNITARITY_TOL:
        raise NonUnitaryOperator("operator is not unitary within 1e-9")
    arr = state.amplitudes.reshape(dims)
    arr = np.moveaxis(arr, axes, range(len(axes)))
    moved_shape = arr.shape
    arr = arr.reshape(d_t, -1)
    arr = U @ arr
    arr = arr.reshape(moved_shape)
    arr = np.moveaxis(arr, range(len(axes)), axes)
    return StateVector(arr.reshape(-1), state.layout)


def _fwht(x: np.ndarray) -> np.ndarray:
    """Unnormalized fast Walsh-Hadamard transform along axis 0."""
    n = x.shape[0]
    x = x.copy()
    h = 1
    while h < n:
        x = x.reshape(n // (2 * h), 2, h, -1)
        a = x[:, 0].copy()
        b = x[:, 1].copy()
        x[:, 0] = a + b
        x[:, 1] = a - b
        x = x.reshape(n, -1)
        h *= 2
    return x


def walsh_hadamard(state: StateVector, register: str) -> StateVector:
    """Hadamard on every qubit of one register.

    The amplitude at register index j becomes
    2^(-k/2) * sum_i (-1)^(i.j) * amp[i] with i.j the bitwise dot product.
    """
    axis = state.layout.axis(register)
    dims = state.layout.dims
    arr = state.amplitudes.reshape(dims)
    arr = np.moveaxis(arr, axis, 0)
    shape = arr.shape
    out = _fwht(arr.reshape(shape[0], -1)) / np.sqrt(shape[0])
    out = np.moveaxis(out.reshape(shape), 0, axis)
    return StateVector(out.reshape(-1), state.layout)


def basis_projectors(layout: RegisterLayout, register: str) -> list[np.ndarray]:
    """Full-space projectors for a computational-basis readout of one register."""
    axis = layout.axis(register)
    dims = layout.dims
    stride = int(np.prod(dims[axis + 1 :], dtype=object)) if axis + 1 < len(dims) else 1
    reg_dim = dims[axis]
    idx = (np.arange(layout.total_dim) // stride) % reg_dim
    return [np.diag((idx == v).astype(complex)) for v in range(reg_dim)]


def _validate_projectors(projectors: list[np.ndarray], dim: int) -> list[np.ndarray]:
    if not projectors:
        raise InvalidProjectorSet("empty projector list")
    ps = []
    for P in projectors:
        P = np.asarray(P, dtype=complex)
        if P.shape != (dim, dim):
            raise InvalidProjectorSet(
                f"projector shape {P.shape} does not match state dimension {dim}"
            )
        if float(np.abs(P - P.conj().T).max()) > PROJECTOR_TOL:
            raise InvalidProjectorSet("projector is not Hermitian within 1e-9")
        ps.append(P)
    total = sum(ps)
    if float(np.abs(total - np.eye(dim)).max()) > PROJECTOR_TOL:
        raise InvalidProjectorSet("projectors do not sum to the identity within 1e-9")
    for i in range(len(ps)):
        for j in range(i + 1, len(ps)):
            if float(np.abs(ps[i] @ ps[j]).max()) > PROJECTOR_TOL:
                raise InvalidProjectorSet(
                    f"projectors {i} and {j} are not orthogonal within 1e-9"
                )
    return ps


def measure_projective(
    state: StateVector, projectors, shots: int, seed: int
) -> MeasurementResult:
    """Projective measurement: exact outcome probabilities plus sampled counts.

    Counts are drawn multinomially from the exact probabilities with a seed
    so that runs reproduce.  Post-measurement states are attached for every
    outcome with nonzero probability.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    ps = _validate_projectors(list(projectors), state.dim)
    psi = state.amplitudes
    branches = [P @ psi for P in ps]
    probs = np.array([float(np.real(np.vdot(psi, b))) for b in branches])
    probs = np.clip(probs, 0.0, None)
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    drawn = rng.multinomial(int(shots), probs)
    counts = {m: int(c) for m, c in enumerate(drawn) if c > 0}
    post = tuple(
        StateVector(b / np.sqrt(p), state.layout) if p > 1e-15 else None
        for b, p in zip(branches, probs)
    )
    return MeasurementResult(
        counts=counts,
        shots=int(shots),
        seed=int(seed),
        probabilities=probs,
        post_states=post,
    )


def partial_trace(state, layout: RegisterLayout | None, keep: str) -> DensityMatrix:
    """Reduced density matrix of one register, tracing out all the others.

    Accepts a StateVector (whose own layout is used) or a DensityMatrix
    with an explicit layout describing its register structure.
    """
    if isinstance(state, StateVector):
        layout = state.layout
        axis = layout.axis(keep)
        arr = np.moveaxis(state.reshaped(), axis, 0)
        M = arr.reshape(arr.shape[0], -1)
        return DensityMatrix(M @ M.conj().T)
    if isinstance(state, DensityMatrix):
        if layout is None:
            raise ValueError("a layout is required to partially trace a DensityMatrix")
        if layout.total_dim != state.dim:
            raise DimensionMismatch(
                f"layout dimension {layout.total_dim} does not match matrix {state.dim}"
            )
        axis = layout.axis(keep)
        dims = layout.dims
        k = len(dims)
        arr = state.matrix.reshape(dims + dims)
        letters = "abcdefghijklm"
        bra = [letters[i] for i in range(k)]
        ket = [letters[i] if i != axis else letters[k] for i in range(k)]
        sub = "".join(bra) + "".join(ket) + "->" + bra[axis] + ket[axis]
        return DensityMatrix(np.einsum(sub, arr))
    raise TypeError(f"cannot partially trace a {type(state).__name__}")


def fidelity(a, b) -> float:
    """Overlap fidelity in [0, 1].

    |<a|b>| for two state vectors; sqrt(<psi|rho|psi>) between a state and
    a density matrix; the Uhlmann fidelity for two density matrices.
    """
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        if a.dim != b.dim:
            raise DimensionMismatch(f"state dimensions differ: {a.dim} vs {b.dim}")
        return float(min(1.0, abs(np.vdot(a.amplitudes, b.amplitudes))))
    if isinstance(a, StateVector) and isinstance(b, DensityMatrix):
        a, b = b, a
    if isinstance(a, DensityMatrix) and isinstance(b, StateVector):
        if a.dim != b.dim:
            raise DimensionMismatch(f"dimensions differ: {a.dim} vs {b.dim}")
        val = float(np.real(np.vdot(b.amplitudes, a.matrix @ b.amplitudes)))
        return float(np.sqrt(min(1.0, max(0.0, val))))
    if isinstance(a, DensityMatrix) and isinstance(b, DensityMatrix):
        if a.dim != b.dim:
            raise DimensionMismatch(f"dimensions differ: {a.dim} vs {b.dim}")
        wa, Va = np.linalg.eigh(a.matrix)
        sq = (Va * np.sqrt(np.clip(wa, 0.0, None))) @ Va.conj().T
        w = np.linalg.eigvalsh(sq @ b.matrix @ sq)
        return float(min(1.0, np.sqrt(np.clip(w, 0.0, None)).sum()))
    raise TypeError(
        f"cannot compute fidelity between {type(a).__name__} and {type(b).__name__}"
    )
