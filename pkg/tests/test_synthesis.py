"""Regulator equations and gain synthesis on the benchmark instance."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from optconsensus.errors import AssumptionViolated
from optconsensus.linalg import eigenvalues_general, is_schur
from optconsensus.plant import Exosystem, PlantModel
from optconsensus.synthesis import (
    check_composite_observability,
    compose_gains,
    composite_matrices,
    design_feedback,
    design_observer,
    solve_regulator,
)

PLANT = PlantModel(A=np.array([[1.0, 1.0], [0.0, 1.0]]),
                   B=np.array([[0.5], [1.0]]),
                   C=np.array([[1.0, 0.0]]))
_C1, _S1 = np.cos(1.0), np.sin(1.0)
EXO = Exosystem(S=np.array([[_C1, _S1], [-_S1, _C1]]),
                E=np.array([[0.5, 0.5], [_S1 - _C1, -_C1 - _S1]]))
K_BENCH = np.array([[-0.4345, -1.0285]])
L1_BENCH = np.array([[-1.8184], [-0.3543]])
L2_BENCH = np.array([[-0.1527], [-0.3141]])


def test_regulator_solution_frozen():
    reg = solve_regulator(PLANT, EXO)
    assert_allclose(reg.X1, [[1.0], [0.0]], atol=1e-10)
    assert_allclose(reg.U1, [[0.0]], atol=1e-10)
    assert_allclose(reg.X2, [[0.0, 0.0], [-1.0, -1.0]], atol=1e-10)
    assert_allclose(reg.U2, [[1.0, 1.0]], atol=1e-10)
    assert all(v <= 1e-10 for v in reg.residuals.values())


def test_regulator_steady_state_tracks_exactly():
    # sitting on the regulator manifold with the feedforward input keeps
    # the output at the reference for all time, disturbance and all
    reg = solve_regulator(PLANT, EXO)
    y_ref = 3.7
    w = np.array([0.3, -0.8])
    x = (reg.X1 * y_ref)[:, 0] + reg.X2 @ w
    for _ in range(50):
        u = (reg.U1 * y_ref)[:, 0] + reg.U2 @ w
        assert (PLANT.C @ x)[0] == pytest.approx(y_ref, abs=1e-9)
        x = PLANT.A @ x + PLANT.B @ u + EXO.E @ w
        w = EXO.S @ w
    assert_allclose(x, (reg.X1 * y_ref)[:, 0] + reg.X2 @ w, atol=1e-9)


def test_regulator_without_exosystem():
    reg = solve_regulator(PLANT, Exosystem.empty(2))
    assert reg.X2.shape == (2, 0)
    assert reg.U2.shape == (1, 0)
    assert_allclose(reg.X1, [[1.0], [0.0]], atol=1e-10)


def test_composite_matrices_layout():
    a_tilde, c_tilde = composite_matrices(PLANT, EXO)
    assert a_tilde.shape == (4, 4)
    assert_allclose(a_tilde[:2, :2], PLANT.A, atol=0.0)
    assert_allclose(a_tilde[:2, 2:], EXO.E, atol=0.0)
    assert_allclose(a_tilde[2:, :2], 0.0, atol=0.0)
    assert_allclose(a_tilde[2:, 2:], EXO.S, atol=0.0)
    assert_allclose(c_tilde, [[1.0, 0.0, 0.0, 0.0]], atol=0.0)


def test_composite_observability():
    assert check_composite_observability(PLANT, EXO)
    # disturbance that never enters the plant cannot be estimated
    hidden = Exosystem(S=np.eye(1), E=np.zeros((2, 1)))
    assert not check_composite_observability(PLANT, hidden)
    with pytest.raises(AssumptionViolated):
        design_observer(PLANT, hidden)


def test_benchmark_gain_spectra():
    rho_fb = np.abs(eigenvalues_general(PLANT.A + PLANT.B @ K_BENCH)).max()
    assert rho_fb == pytest.approx(0.4345, abs=1e-4)
    a_tilde, c_tilde = composite_matrices(PLANT, EXO)
    closed = a_tilde + np.vstack([L1_BENCH, L2_BENCH]) @ c_tilde
    rho_ob = np.abs(eigenvalues_general(closed)).max()
    assert rho_ob == pytest.approx(0.6507, abs=1e-4)
    assert is_schur(PLANT.A + PLANT.B @ K_BENCH)
    assert is_schur(closed)


def test_design_feedback_stabilizes():
    k = design_feedback(PLANT)
    assert k.shape == (1, 2)
    assert is_schur(PLANT.A + PLANT.B @ k)


def test_design_observer_stabilizes():
    l1, l2 = design_observer(PLANT, EXO)
    assert l1.shape == (2, 1) and l2.shape == (2, 1)
    a_tilde, c_tilde = composite_matrices(PLANT, EXO)
    assert is_schur(a_tilde + np.vstack([l1, l2]) @ c_tilde)


def test_observer_design_duality():
    # stability of the error matrix equals stability of its transpose,
    # which is the form the dual Riccati design actually certifies
    a_tilde, c_tilde = composite_matrices(PLANT, EXO)
    for l_stack in (np.vstack([L1_BENCH, L2_BENCH]),
                    np.vstack(design_observer(PLANT, EXO))):
        closed = a_tilde + l_stack @ c_tilde
        assert is_schur(closed) == is_schur(closed.T)
        assert is_schur(closed)


def test_feedforward_gains_frozen():
    reg = solve_regulator(PLANT, EXO)
    gains = compose_gains(K_BENCH, L1_BENCH, L2_BENCH, reg)
    # K1 = U1 - K X1 = 0.4345; K2 = U2 - K X2 = [1, 1] - [1.0285, 1.0285]
    assert_allclose(gains.K1, [[0.4345]], atol=1e-12)
    assert_allclose(gains.K2, [[-0.0285, -0.0285]], atol=1e-12)
