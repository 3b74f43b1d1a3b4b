"""Shared random-instance generators for the test suite."""

from __future__ import annotations

import numpy as np

from qtsvm.classical import Dataset


def random_hermitian(dim: int, rng, complex_entries: bool = True) -> np.ndarray:
    M = rng.normal(size=(dim, dim))
    if complex_entries:
        M = M + 1j * rng.normal(size=(dim, dim))
    return (M + M.conj().T) / 2


def random_pd(
    dim: int, rng, kappa: float | None = None, trace_one: bool = False
) -> np.ndarray:
    """Random positive definite matrix, optionally with a set condition number."""
    q, _ = np.linalg.qr(rng.normal(size=(dim, dim)))
    if kappa is None:
        lam = rng.uniform(0.5, 5.0, size=dim)
    else:
        lam = np.linspace(1.0, kappa, dim)
    A = (q * lam) @ q.T
    if trace_one:
        A = A / np.trace(A)
    return A


def random_state_vector(dim: int, rng, complex_entries: bool = True) -> np.ndarray:
    v = rng.normal(size=dim)
    if complex_entries:
        v = v + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_dataset(rng, m1=None, m2=None, n=None) -> Dataset:
    m1 = m1 or int(rng.integers(3, 12))
    m2 = m2 or int(rng.integers(3, 12))
    n = n or int(rng.integers(1, 6))
    return Dataset(A=rng.normal(size=(m1, n)), B=rng.normal(size=(m2, n)))


def parallel_lines_data() -> Dataset:
    """Positives on y = 0, negatives on y = 1, spread along x."""
    xs = np.array([-2.0, -1.0, 1.0, 2.0])
    A = np.column_stack([xs, np.zeros(4)])
    B = np.column_stack([xs, np.ones(4)])
    return Dataset(A=A, B=B)
