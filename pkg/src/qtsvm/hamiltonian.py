"""Hamiltonian assembly and first-order product-formula evolution.

The hyperplane systems H1 = K1/c1 + K2 and H2 = K1 + K2/c2 are rebuilt
from the trace-normalized Gram operators K^ = K/tr(K) that the state
preparation stage produces:

    H1^ = (trK1/(c1*trH1)) K^1 + (trK2/trH1) K^2,  trH1 = trK1/c1 + trK2
    H2^ = (trK1/trH2) K^1 + (trK2/(c2*trH2)) K^2,  trH2 = trK1 + trK2/c2

so each H^ is the original system matrix divided by its trace.  Evolution
under H^ is approximated by the first-order split

    exp(-i H^ dt) ~ exp(-i w1 K^1 dt) * exp(-i w2 K^2 dt)

with the K^1 factor applied first (leftmost).  The per-step error is
O(dt^2), so the total error at fixed time t0 falls like 1/steps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionMismatch, InvalidPenalty
from .linalg import matrix_exp_unitary
from .states import DensityMatrix


@dataclass(frozen=True)
class HamiltonianPair:
    """Both normalized system Hamiltonians plus their mixing weights.

    Matrices are padded to the power-of-two dimension of the Gram
    operators; block_size is the physical (unpadded) dimension n+1.
    """

    H1_hat: np.ndarray
    H2_hat: np.ndarray
    K1_hat: np.ndarray
    K2_hat: np.ndarray
    weights_1: tuple[float, float]
    weights_2: tuple[float, float]
    trace_h1: float
    trace_h2: float
    block_size: int

    def hamiltonian(self, which: int) -> np.ndarray:
        if which == 1:
            return self.H1_hat
        if which == 2:
            return self.H2_hat
        raise ValueError("which must be 1 or 2")

    def weights(self, which: int) -> tuple[float, float]:
        return self.weights_1 if which == 1 else self.weights_2

    def cropped(self, which: int) -> np.ndarray:
        return np.array(self.hamiltonian(which)[: self.block_size, : self.block_size])


@dataclass(frozen=True)
class TrotterConfig:
    """Evolution time t0 split into ``steps`` equal slices."""

    t0: float
    steps: int

    def __post_init__(self):
        if not np.isfinite(self.t0) or self.t0 <= 0:
            raise ValueError(f"t0 must be positive, got {self.t0!r}")
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps!r}")

    @property
    def dt(self) -> float:
        return self.t0 / self.steps


def assemble_hamiltonians(
    K1_hat: DensityMatrix,
    K2_hat: DensityMatrix,
    trace_k1: float,
    trace_k2: float,
    c1: float,
    c2: float,
    block_size: int,
) -> HamiltonianPair:
    """Combine the normalized Gram operators into both system Hamiltonians.

    trace_k1 and trace_k2 are the traces of the unnormalized Gram matrices;
    they set the mixing weights so that H^ = H/tr(H) exactly.
    """
    for name, c in (("c1", c1), ("c2", c2)):
        if not np.isfinite(c) or c <= 0:
            raise InvalidPenalty(f"{name} must be strictly positive, got {c!r}")
    for name, tr in (("trace_k1", trace_k1), ("trace_k2", trace_k2)):
        if not np.isfinite(tr) or tr <= 0:
            raise ValueError(f"{name} must be positive, got {tr!r}")
    if K1_hat.dim != K2_hat.dim:
        raise DimensionMismatch(
            f"Gram operators disagree on dimension: {K1_hat.dim} vs {K2_hat.dim}"
        )
    if not 1 <= block_size <= K1_hat.dim:
        raise ValueError(f"block_size {block_size} outside [1, {K1_hat.dim}]")
    tr_h1 = trace_k1 / c1 + trace_k2
    tr_h2 = trace_k1 + trace_k2 / c2
    w1 = (trace_k1 / (c1 * tr_h1), trace_k2 / tr_h1)
    w2 = (trace_k1 / tr_h2, trace_k2 / (c2 * tr_h2))
    K1m, K2m = K1_hat.matrix, K2_hat.matrix
    return HamiltonianPair(
        H1_hat=w1[0] * K1m + w1[1] * K2m,
        H2_hat=w2[0] * K1m + w2[1] * K2m,
        K1_hat=np.array(K1m),
        K2_hat=np.array(K2m),
        weights_1=w1,
        weights_2=w2,
        trace_h1=float(tr_h1),
        trace_h2=float(tr_h2),
        block_size=int(block_size),
    )


def trotter_step(pair: HamiltonianPair, which: int, dt: float) -> np.ndarray:
    """One first-order product-formula slice of exp(-i H^ dt).

    dt may be negative, which gives the inverse slice.  The K^1 factor is
    always leftmost regardless of sign.
    """
    a1, a2 = pair.weights(which)
    U1 = matrix_exp_unitary(pair.K1_hat, a1 * dt)
    U2 = matrix_exp_unitary(pair.K2_hat, a2 * dt)
    return U1 @ U2


def simulate_evolution(
    pair: HamiltonianPair, which: int, config: TrotterConfig
) -> np.ndarray:
    """Trotterized approximation of exp(-i H^ t0) using config.steps slices."""
    step = trotter_step(pair, which, config.dt)
    return np.linalg.matrix_power(step, config.steps)


@dataclass(frozen=True)
class TrotterErrorRow:
    steps: int
    dt: float
    step_error: float
    total_error: float


@dataclass(frozen=True)
class TrotterErrorReport:
    """Measured product-formula errors against the exact evolution.

    step_error is ||trotter_step(dt) - exp(-i H^ dt)|| and total_error is
    ||simulate_evolution - exp(-i H^ t0)||, both in operator (spectral)
    norm.  slope is the fitted log-log slope of step_error against dt,
    or None when the errors sit at floating-point noise (commuting case).
    """

    t0: float
    which: int
    rows: tuple[TrotterErrorRow, ...]
    slope: float | None

    @property
    def doubling_factors(self) -> tuple[float, ...]:
        """total_error ratios between consecutive step-count doublings."""
        out = []
        for a, b in zip(self.rows, self.rows[1:]):
            if b.steps == 2 * a.steps and b.total_error > 0:
                out.append(a.total_error / b.total_error)
        return tuple(out)


SLOPE_NOISE_FLOOR = 1e-13


def trotter_error_report(
    pair: HamiltonianPair, which: int, t0: float, steps_list
) -> TrotterErrorReport:
    """Measure product-formula errors for each step count in steps_list."""
    steps_list = [int(s) for s in steps_list]
    if not steps_list or any(s < 1 for s in steps_list):
        raise ValueError("steps_list must contain positive integers")
    if not np.isfinite(t0) or t0 <= 0:
        raise ValueError(f"t0 must be positive, got {t0!r}")
    H = pair.hamiltonian(which)
    exact_total = matrix_exp_unitary(H, t0)
    rows = []
    for steps in sorted(steps_list):
        dt = t0 / steps
        step = trotter_step(pair, which, dt)
        exact_step = matrix_exp_unitary(H, dt)
        total = np.linalg.matrix_power(step, steps)
        rows.append(
            TrotterErrorRow(
                steps=steps,
                dt=dt,
                step_error=float(np.linalg.norm(step - exact_step, 2)),
                total_error=float(np.linalg.norm(total - exact_total, 2)),
            )
        )
    errs = np.array([r.step_error for r in rows])
    dts = np.array([r.dt for r in rows])
    if np.all(errs > SLOPE_NOISE_FLOOR) and len(rows) >= 2:
        slope = float(np.polyfit(np.log(dts), np.log(errs), 1)[0])
    else:
        slope = None
    return TrotterErrorReport(t0=float(t0), which=which, rows=tuple(rows), slope=slope)
