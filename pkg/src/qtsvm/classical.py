"""Least-squares twin SVM: closed-form training and distance-rule prediction.

The classifier fits one hyperplane per class.  Each hyperplane is pulled
toward its own class and pushed to unit functional distance from the other
class; squaring the slack turns both problems into linear systems.

With E = [A 1], F = [B 1], K1 = E^T E, K2 = F^T F:

    (w1, b1) = -(K1/c1 + K2)^-1 F^T e2
    (w2, b2) = +(K1 + K2/c2)^-1 E^T e1

A new point takes the label of the nearer hyperplane, measured by the
perpendicular distance |w.x + b| / ||w||, with ties going to +1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import (
    DegenerateHyperplane,
    DimensionMismatch,
    EmptyMatrix,
    InvalidPenalty,
)
from .linalg import solve_hermitian

DEGENERATE_NORM_TOL = 1e-12


def _as_sample_matrix(M, name: str) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-dimensional, got shape {M.shape}")
    if M.shape[0] == 0 or M.shape[1] == 0:
        raise EmptyMatrix(f"{name} has a zero-sized dimension {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError(f"{name} contains non-finite entries")
    return M


@dataclass(frozen=True)
class Dataset:
    """Training samples split by class: A holds the +1 class, B the -1 class."""

    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        A = _as_sample_matrix(self.A, "A")
        B = _as_sample_matrix(self.B, "B")
        if A.shape[1] != B.shape[1]:
            raise DimensionMismatch(
                f"A and B disagree on feature count: {A.shape[1]} vs {B.shape[1]}"
            )
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def n_features(self) -> int:
        return self.A.shape[1]


@dataclass(frozen=True)
class AugmentedMatrices:
    """Bias-augmented data matrices and the Gram/system matrices built from them."""

    E: np.ndarray
    F: np.ndarray
    K1: np.ndarray
    K2: np.ndarray
    H1: np.ndarray
    H2: np.ndarray
    e1: np.ndarray
    e2: np.ndarray


@dataclass(frozen=True)
class ClassicalModel:
    """Two fitted hyperplanes (w1, b1) and (w2, b2) plus training settings."""

    w1: np.ndarray
    b1: float
    w2: np.ndarray
    b2: float
    c1: float
    c2: float
    ridge: float

    def hyperplane(self, which: int) -> tuple[np.ndarray, float]:
        if which == 1:
            return self.w1, self.b1
        if which == 2:
            return self.w2, self.b2
        raise ValueError("which must be 1 or 2")

    def augmented_vector(self, which: int) -> np.ndarray:
        """The stacked (w, b) vector for one hyperplane."""
        w, b = self.hyperplane(which)
        return np.append(w, b)


def _check_penalties(c1: float, c2: float) -> None:
    for name, c in (("c1", c1), ("c2", c2)):
        if not np.isfinite(c) or c <= 0:
            raise InvalidPenalty(f"{name} must be strictly positive, got {c!r}")


def build_augmented(data: Dataset, c1: float, c2: float) -> AugmentedMatrices:
    """Assemble E, F, the Gram matrices K1, K2, and the system matrices H1, H2."""
    _check_penalties(c1, c2)
    m1, m2 = data.A.shape[0], data.B.shape[0]
    E = np.hstack([data.A, np.ones((m1, 1))])
    F = np.hstack([data.B, np.ones((m2, 1))])
    K1 = E.T @ E
    K2 = F.T @ F
    H1 = K1 / c1 + K2
    H2 = K1 + K2 / c2
    return AugmentedMatrices(
        E=E, F=F, K1=K1, K2=K2, H1=H1, H2=H2, e1=np.ones(m1), e2=np.ones(m2)
    )


def train_classical(
    data: Dataset, c1: float, c2: float, ridge: float = 0.0
) -> ClassicalModel:
    """Solve both hyperplane systems in closed form.

    ridge adds a diagonal shift to H1 and H2 before solving; the default 0
    keeps the solution exactly at the stationary point of the objectives.
    """
    aug = build_augmented(data, c1, c2)
    n = data.n_features
    z1 = -solve_hermitian(aug.H1, aug.F.T @ aug.e2, ridge=ridge)
    z2 = solve_hermitian(aug.H2, aug.E.T @ aug.e1, ridge=ridge)
    return ClassicalModel(
        w1=z1[:n],
        b1=float(z1[n]),
        w2=z2[:n],
        b2=float(z2[n]),
        c1=float(c1),
        c2=float(c2),
        ridge=float(ridge),
    )


def objective_value(
    w: np.ndarray, b: float, data: Dataset, c: float, which: int
) -> float:
    """Training objective of one hyperplane with the slack eliminated.

    which=1: (1/2)||A w + b e1||^2 + (c/2)||B w + b e2 + e2||^2
    which=2: (1/2)||B w + b e2||^2 + (c/2)||A w + b e1 - e1||^2
    """
    _check_penalties(c, c)
    w = np.asarray(w, dtype=float)
    if w.shape != (data.n_features,):
        raise DimensionMismatch(
            f"w has shape {w.shape}, expected ({data.n_features},)"
        )
    if which == 1:
        own = data.A @ w + b
        other = data.B @ w + b + 1.0
    elif which == 2:
        own = data.B @ w + b
        other = data.A @ w + b - 1.0
    else:
        raise ValueError("which must be 1 or 2")
    return 0.5 * float(own @ own) + 0.5 * c * float(other @ other)


def predict_classical(
    model: ClassicalModel, x: np.ndarray
) -> tuple[int, float, float]:
    """Label a sample by perpendicular distance to each hyperplane.

    Returns (label, d1, d2) where di = |wi.x + bi| / ||wi||.  The label is
    +1 when d1 <= d2 (ties deliberately go to the +1 class) and -1 otherwise.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (model.w1.shape[0],):
        raise DimensionMismatch(
            f"sample has shape {x.shape}, expected ({model.w1.shape[0]},)"
        )
    norms = (float(np.linalg.norm(model.w1)), float(np.linalg.norm(model.w2)))
    for which, nw in zip((1, 2), norms):
        if nw <= DEGENERATE_NORM_TOL:
            raise DegenerateHyperplane(f"||w{which}|| = {nw:.3e} is effectively zero")
    d1 = abs(float(model.w1 @ x) + model.b1) / norms[0]
    d2 = abs(float(model.w2 @ x) + model.b2) / norms[1]
    label = 1 if d1 <= d2 else -1
    return label, d1, d2
