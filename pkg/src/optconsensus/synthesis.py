"""Gain synthesis: regulator equations, state feedback, observer design.

The tracking controller u = K x_hat + K1 z + K2 w_hat needs a feedback
gain K making A + B K Schur, observer gains (L1, L2) making the composite
error matrix Schur, and feedforward terms built from the regulator
equations

    X1 = A X1 + B U1,        1 = C X1,
    X2 S = A X2 + B U2 + E,  0 = C X2.

(X1, U1) maps a constant output reference to a steady state/input pair;
(X2, U2) does the same for the disturbance modes. The feedforward gains
are then K1 = U1 - K X1 and K2 = U2 - K X2.
"""

from dataclasses import dataclass
from typing import Dict

import numpy as np

from .errors import AssumptionViolated, SingularMatrix, StabilizationFailed, Unsolvable
from .linalg import dlqr_gain, is_schur, matrix_rank, solve_linear

__all__ = [
    "RegulatorSolution",
    "ControllerGains",
    "composite_matrices",
    "solve_regulator",
    "check_composite_observability",
    "design_feedback",
    "design_observer",
    "compose_gains",
]

RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class RegulatorSolution:
    """Solution of the regulator equations with verified residuals."""

    X1: np.ndarray
    U1: np.ndarray
    X2: np.ndarray
    U2: np.ndarray
    residuals: Dict[str, float]


@dataclass(frozen=True)
class ControllerGains:
    """Feedback, observer, and feedforward gains of the tracking controller."""

    K: np.ndarray
    L1: np.ndarray
    L2: np.ndarray
    K1: np.ndarray
    K2: np.ndarray


def composite_matrices(model, exo):
    """Stacked matrices of the plant/exosystem cascade.

    Returns (A_tilde, C_tilde) with A_tilde = [[A, E], [0, S]] and
    C_tilde = [C, 0]; the pair whose observability enables joint state
    and disturbance estimation.
    """
    n_x, n_w = model.n_x, exo.n_w
    a_tilde = np.block([[model.A, exo.E],
                        [np.zeros((n_w, n_x)), exo.S]])
    c_tilde = np.hstack([model.C, np.zeros((1, n_w))])
    return a_tilde, c_tilde


def _solve_block(mat, rhs, label):
    """Solve one regulator block exactly (square) or in least squares."""
    if mat.shape[0] == mat.shape[1]:
        try:
            return solve_linear(mat, rhs)
        except SingularMatrix as exc:
            raise Unsolvable("%s block is singular" % label) from exc
    sol, *_ = np.linalg.lstsq(mat, rhs, rcond=None)
    return sol


def solve_regulator(model, exo):
    """Solve both regulator equation blocks and verify all residuals.

    The set-point block is the dense system [[A - I, B], [C, 0]] acting on
    (X1, U1); the disturbance block is vectorized through the Kronecker
    identity vec(X2 S) = (S.T kron I) vec(X2), giving

        [(S.T kron I) - (I kron A)] vec(X2) - (I kron B) vec(U2) = vec(E)
        (I kron C) vec(X2) = 0.

    Conditioning is benign at these sizes, so the solves run once with no
    refinement; every returned matrix is checked against its defining
    identity at 1e-10.

    Raises
    ------
    Unsolvable
        Naming the offending block when a system is singular or a
        residual exceeds the tolerance.
    """
    a, b, c = model.A, model.B, model.C
    n_x, n_u, n_w = model.n_x, model.n_u, exo.n_w

    m1 = np.block([[a - np.eye(n_x), b],
                   [c, np.zeros((1, n_u))]])
    rhs1 = np.zeros(n_x + 1)
    rhs1[-1] = 1.0
    sol1 = _solve_block(m1, rhs1, "set-point")
    x1 = sol1[:n_x].reshape(n_x, 1)
    u1 = sol1[n_x:].reshape(n_u, 1)

    if n_w > 0:
        s, e = exo.S, exo.E
        i_w = np.eye(n_w)
        sylvester = np.hstack([
            np.kron(s.T, np.eye(n_x)) - np.kron(i_w, a),
            -np.kron(i_w, b),
        ])
        constraint = np.hstack([
            np.kron(i_w, c),
            np.zeros((n_w, n_u * n_w)),
        ])
        m2 = np.vstack([sylvester, constraint])
        rhs2 = np.concatenate([e.reshape(-1, order="F"), np.zeros(n_w)])
        sol2 = _solve_block(m2, rhs2, "disturbance")
        x2 = sol2[:n_x * n_w].reshape((n_x, n_w), order="F")
        u2 = sol2[n_x * n_w:].reshape((n_u, n_w), order="F")
    else:
        x2 = np.zeros((n_x, 0))
        u2 = np.zeros((n_u, 0))

    residuals = {
        "set-point state": float(np.linalg.norm(x1 - a @ x1 - b @ u1)),
        "set-point output": float(abs((c @ x1)[0, 0] - 1.0)),
        "disturbance state": float(np.linalg.norm(
            x2 @ exo.S - a @ x2 - b @ u2 - exo.E)) if n_w else 0.0,
        "disturbance output": float(np.linalg.norm(c @ x2)) if n_w else 0.0,
    }
    for label, value in residuals.items():
        if value > RESIDUAL_TOL:
            raise Unsolvable(
                "regulator %s residual %.3e exceeds %g" % (label, value, RESIDUAL_TOL))
    return RegulatorSolution(X1=x1, U1=u1, X2=x2, U2=u2, residuals=residuals)


def check_composite_observability(model, exo, tol=1e-9):
    """Rank test of the observability matrix of (C_tilde, A_tilde).

    With no exosystem states this reduces to observability of (C, A).
    """
    a_tilde, c_tilde = composite_matrices(model, exo)
    n = a_tilde.shape[0]
    rows = [c_tilde]
    for _ in range(n - 1):
        rows.append(rows[-1] @ a_tilde)
    return matrix_rank(np.vstack(rows), tol) == n


def design_feedback(model, q=None, r=None):
    """LQR state feedback K with A + B K Schur."""
    q = np.eye(model.n_x) if q is None else np.asarray(q, dtype=float)
    r = np.eye(model.n_u) if r is None else np.asarray(r, dtype=float)
    return dlqr_gain(model.A, model.B, q, r)


def design_observer(model, exo, qo=None, ro=None):
    """Observer gains (L1, L2) by LQR duality on the composite pair.

    Designs G for the transposed pair (A_tilde.T, C_tilde.T) and
    transposes back, so [[A + L1 C, E], [L2 C, S]] is Schur.

    Raises
    ------
    AssumptionViolated
        If the composite pair is not observable.
    StabilizationFailed
        If the dual Riccati iteration fails.
    """
    if not check_composite_observability(model, exo):
        raise AssumptionViolated(
            "composite plant/exosystem pair is not observable; joint "
            "state and disturbance estimation is impossible")
    a_tilde, c_tilde = composite_matrices(model, exo)
    n = a_tilde.shape[0]
    qo = np.eye(n) if qo is None else np.asarray(qo, dtype=float)
    ro = np.eye(1) if ro is None else np.asarray(ro, dtype=float)
    g = dlqr_gain(a_tilde.T, c_tilde.T, qo, ro)
    l_stack = g.T
    l1 = l_stack[:model.n_x]
    l2 = l_stack[model.n_x:]
    closed = a_tilde + l_stack @ c_tilde
    if not is_schur(closed):
        raise StabilizationFailed("composite observer loop failed the Schur check")
    return l1, l2


def compose_gains(k, l1, l2, regulator):
    """Assemble the full gain set; K1 = U1 - K X1, K2 = U2 - K X2."""
    k = np.asarray(k, dtype=float)
    k1 = regulator.U1 - k @ regulator.X1
    k2 = regulator.U2 - k @ regulator.X2
    return ControllerGains(K=k,
                           L1=np.asarray(l1, dtype=float),
                           L2=np.asarray(l2, dtype=float),
                           K1=k1, K2=k2)
