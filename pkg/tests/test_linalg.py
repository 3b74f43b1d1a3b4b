import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm

from helpers import random_hermitian, random_pd
from qtsvm.exceptions import DimensionMismatch, EmptyMatrix, NonHermitianInput, SingularSystem
from qtsvm.linalg import condition_number, eigh, matrix_exp_unitary, solve_hermitian


@pytest.mark.parametrize("dim", [2, 3, 5, 10])
@pytest.mark.parametrize("complex_entries", [False, True])
def test_eigh_reconstructs(dim, complex_entries):
    rng = np.random.default_rng(dim)
    H = random_hermitian(dim, rng, complex_entries)
    w, V = eigh(H)
    rebuilt = (V * w) @ V.conj().T
    assert np.linalg.norm(rebuilt - H) <= 1e-10 * max(1.0, np.linalg.norm(H))
    assert np.all(np.diff(w) >= -1e-12)
    assert np.abs(V.conj().T @ V - np.eye(dim)).max() <= 1e-10


def test_eigh_sign_convention_is_deterministic():
    rng = np.random.default_rng(3)
    H = random_hermitian(6, rng)
    _, V = eigh(H)
    for i in range(V.shape[1]):
        lead = V[np.abs(V[:, i]) > 1e-12, i][0]
        assert lead.real > 0
        assert abs(lead.imag) <= 1e-12
    _, V2 = eigh(H)
    assert np.abs(V - V2).max() == 0.0


def test_eigh_rejects_non_hermitian():
    with pytest.raises(NonHermitianInput):
        eigh(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_eigh_symmetrizes_roundoff_asymmetry():
    H = np.array([[1.0, 0.5], [0.5 + 1e-12, 2.0]])
    w, V = eigh(H)
    Hs = (H + H.T) / 2
    assert np.linalg.norm((V * w) @ V.conj().T - Hs) <= 1e-10


def test_eigh_rejects_non_square_and_empty():
    with pytest.raises(DimensionMismatch):
        eigh(np.zeros((2, 3)))
    with pytest.raises(EmptyMatrix):
        eigh(np.zeros((0, 0)))


@pytest.mark.parametrize("t", [0.0, 0.3, 1.7, -2.5])
def test_matrix_exp_matches_scipy(t):
    # independent oracle: scipy's Pade-based expm
    rng = np.random.default_rng(11)
    for dim in (2, 4, 7):
        H = random_hermitian(dim, rng)
        U = matrix_exp_unitary(H, t)
        assert np.abs(U - expm(-1j * H * t)).max() <= 1e-10


def test_matrix_exp_is_unitary_and_a_group():
    rng = np.random.default_rng(12)
    H = random_hermitian(5, rng)
    U1, U2 = matrix_exp_unitary(H, 0.4), matrix_exp_unitary(H, 1.1)
    assert np.abs(U1.conj().T @ U1 - np.eye(5)).max() <= 1e-12
    assert np.abs(U1 @ U2 - matrix_exp_unitary(H, 1.5)).max() <= 1e-12
    assert np.abs(matrix_exp_unitary(H, 0.0) - np.eye(5)).max() <= 1e-12
    assert np.abs(matrix_exp_unitary(H, -0.4) - U1.conj().T).max() <= 1e-12


def test_solve_hermitian_residuals_stay_small():
    rng = np.random.default_rng(21)
    for _ in range(100):
        dim = int(rng.integers(2, 17))
        H = random_pd(dim, rng)
        b = rng.normal(size=dim)
        x = solve_hermitian(H, b)
        assert np.linalg.norm(H @ x - b) <= 1e-8 * np.linalg.norm(b)


def test_solve_hermitian_matches_numpy_solve():
    rng = np.random.default_rng(22)
    H = random_pd(6, rng)
    b = rng.normal(size=6)
    assert np.allclose(solve_hermitian(H, b), np.linalg.solve(H, b), atol=1e-12)


def test_solve_singular_raises():
    H = np.diag([1.0, 0.0])
    with pytest.raises(SingularSystem):
        solve_hermitian(H, np.ones(2))
    # a ridge shifts the spectrum away from zero
    x = solve_hermitian(H, np.ones(2), ridge=0.5)
    assert np.allclose((H + 0.5 * np.eye(2)) @ x, np.ones(2))


def test_solve_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        solve_hermitian(np.eye(3), np.ones(2))


def test_condition_number_known_spectrum():
    assert condition_number(np.diag([0.5, 2.0, 4.0])) == pytest.approx(8.0, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(
    scale=st.floats(min_value=1e-6, max_value=1e6),
    seed=st.integers(min_value=0, max_value=2**31),
)
def test_condition_number_scale_invariant(scale, seed):
    rng = np.random.default_rng(seed)
    H = random_pd(int(rng.integers(2, 8)), rng)
    base = condition_number(H)
    assert condition_number(scale * H) == pytest.approx(base, rel=1e-9)


def test_condition_number_rejects_indefinite():
    with pytest.raises(SingularSystem):
        condition_number(np.diag([1.0, -0.5]))
    with pytest.raises(SingularSystem):
        condition_number(np.diag([1.0, 0.0]))
