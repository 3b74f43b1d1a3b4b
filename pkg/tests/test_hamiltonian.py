import numpy as np
import pytest
from scipy.linalg import expm

from qtsvm.exceptions import DimensionMismatch, InvalidPenalty
from qtsvm.hamiltonian import (
    TrotterConfig,
    assemble_hamiltonians,
    simulate_evolution,
    trotter_error_report,
    trotter_step,
)
from qtsvm.linalg import matrix_exp_unitary
from qtsvm.prep import prepare_density_k
from qtsvm.states import DensityMatrix


def make_pair(rng, n=2, c1=1.0, c2=1.0, m1=4, m2=5):
    E = rng.normal(size=(m1, n + 1))
    F = rng.normal(size=(m2, n + 1))
    K1, K2 = E.T @ E, F.T @ F
    pair = assemble_hamiltonians(
        prepare_density_k(E),
        prepare_density_k(F),
        float(np.trace(K1)),
        float(np.trace(K2)),
        c1,
        c2,
        block_size=n + 1,
    )
    return pair, K1, K2


@pytest.mark.parametrize("seed", range(6))
def test_assembled_hamiltonians_equal_trace_normalized_systems(seed):
    # dual route: weights on the reduced states must land on H / tr(H)
    rng = np.random.default_rng(seed)
    c1, c2 = rng.uniform(0.2, 5.0, size=2)
    pair, K1, K2 = make_pair(rng, c1=c1, c2=c2)
    H1 = K1 / c1 + K2
    H2 = K1 + K2 / c2
    assert np.allclose(pair.cropped(1), H1 / np.trace(H1), atol=1e-12)
    assert np.allclose(pair.cropped(2), H2 / np.trace(H2), atol=1e-12)
    assert pair.trace_h1 == pytest.approx(np.trace(H1), rel=1e-12)
    assert pair.trace_h2 == pytest.approx(np.trace(H2), rel=1e-12)


def test_assembled_hamiltonians_have_unit_trace():
    rng = np.random.default_rng(11)
    pair, _, _ = make_pair(rng, c1=3.0, c2=0.7)
    assert np.trace(pair.H1_hat).real == pytest.approx(1.0, abs=1e-12)
    assert np.trace(pair.H2_hat).real == pytest.approx(1.0, abs=1e-12)
    assert sum(pair.weights(1)) == pytest.approx(1.0, abs=1e-12)
    assert sum(pair.weights(2)) == pytest.approx(1.0, abs=1e-12)


def test_assembly_validation():
    rho2 = DensityMatrix(np.eye(2) / 2)
    rho4 = DensityMatrix(np.eye(4) / 4)
    with pytest.raises(InvalidPenalty):
        assemble_hamiltonians(rho2, rho2, 1.0, 1.0, -1.0, 1.0, 2)
    with pytest.raises(ValueError):
        assemble_hamiltonians(rho2, rho2, 0.0, 1.0, 1.0, 1.0, 2)
    with pytest.raises(DimensionMismatch):
        assemble_hamiltonians(rho2, rho4, 1.0, 1.0, 1.0, 1.0, 2)
    with pytest.raises(ValueError):
        assemble_hamiltonians(rho2, rho2, 1.0, 1.0, 1.0, 1.0, 3)


def test_trotter_step_is_the_ordered_product():
    # K^1 factor leftmost, checked against an independent exponential
    rng = np.random.default_rng(2)
    pair, _, _ = make_pair(rng)
    dt = 0.37
    a1, a2 = pair.weights(1)
    expect = expm(-1j * pair.K1_hat * a1 * dt) @ expm(-1j * pair.K2_hat * a2 * dt)
    assert np.allclose(trotter_step(pair, 1, dt), expect, atol=1e-12)


def test_trotter_step_unitarity_and_inverse():
    rng = np.random.default_rng(3)
    pair, _, _ = make_pair(rng)
    U = trotter_step(pair, 2, 0.5)
    assert np.abs(U.conj().T @ U - np.eye(U.shape[0])).max() <= 1e-12
    V = trotter_step(pair, 2, -0.5)
    # negative dt reverses each factor but keeps K^1 leftmost, so V is not
    # U's inverse factor-by-factor; it still undoes U up to the step error
    assert np.abs(V @ U - np.eye(U.shape[0])).max() <= 0.5**2


def test_simulate_evolution_is_a_matrix_power():
    rng = np.random.default_rng(4)
    pair, _, _ = make_pair(rng)
    config = TrotterConfig(t0=1.2, steps=7)
    step = trotter_step(pair, 1, config.dt)
    expect = np.linalg.matrix_power(step, 7)
    assert np.allclose(simulate_evolution(pair, 1, config), expect, atol=1e-12)


def test_evolution_converges_to_the_exact_unitary():
    rng = np.random.default_rng(5)
    pair, _, _ = make_pair(rng)
    exact = matrix_exp_unitary(pair.H1_hat, 2.0)
    errs = [
        np.linalg.norm(
            simulate_evolution(pair, 1, TrotterConfig(2.0, s)) - exact, 2
        )
        for s in (8, 32, 128)
    ]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] <= 1e-3


def test_error_report_shows_second_order_step_scaling():
    rng = np.random.default_rng(6)
    pair, _, _ = make_pair(rng, c1=2.0, c2=0.5)
    report = trotter_error_report(pair, 1, t0=1.0, steps_list=[4, 8, 16, 32])
    assert [r.steps for r in report.rows] == [4, 8, 16, 32]
    assert 1.8 <= report.slope <= 2.2
    for f in report.doubling_factors:
        assert 1.7 <= f <= 2.3
    # spot-check one row against a direct recomputation
    row = report.rows[1]
    step = trotter_step(pair, 1, row.dt)
    exact = matrix_exp_unitary(pair.H1_hat, row.dt)
    assert row.step_error == pytest.approx(np.linalg.norm(step - exact, 2), rel=1e-9)


def test_commuting_pair_has_no_trotter_error():
    K1 = DensityMatrix(np.diag([0.7, 0.2, 0.1, 0.0]))
    K2 = DensityMatrix(np.diag([0.1, 0.4, 0.3, 0.2]))
    pair = assemble_hamiltonians(K1, K2, 2.0, 3.0, 1.0, 1.0, block_size=4)
    report = trotter_error_report(pair, 1, t0=1.0, steps_list=[2, 4])
    assert report.slope is None
    for row in report.rows:
        assert row.total_error <= 1e-12


def test_trotter_config_and_report_validation():
    with pytest.raises(ValueError):
        TrotterConfig(t0=0.0, steps=4)
    with pytest.raises(ValueError):
        TrotterConfig(t0=1.0, steps=0)
    assert TrotterConfig(t0=2.0, steps=8).dt == pytest.approx(0.25)
    rng = np.random.default_rng(7)
    pair, _, _ = make_pair(rng)
    with pytest.raises(ValueError):
        trotter_error_report(pair, 1, t0=1.0, steps_list=[])
    with pytest.raises(ValueError):
        trotter_error_report(pair, 1, t0=-1.0, steps_list=[2])
    with pytest.raises(ValueError):
        pair.hamiltonian(3)
