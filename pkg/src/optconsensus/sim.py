"""Closed-loop multi-agent simulation and run diagnostics.

One scenario bundles N identical plants, their exosystems, the
communication digraph, the per-agent costs, generator parameters, and the
controller gains. Each simulation step reads the measured outputs,
applies u_i = K x_hat_i + K1 z_i + K2 w_hat_i, records the trace row, and
then advances observers, plants, exosystems, and the signal generator
simultaneously from pre-step values.

The trace also logs two diagnostics computed against independent ground
truth: the tracking error e_i = y_i - y_star with y_star from the
root-finding oracle, and the input discrepancy Xi_i between the applied
control and its full-information counterpart K x_i + K1 y_star + K2 w_i.
The optional ``k2_off_window`` disables the disturbance feedforward K2 on
a closed step interval, which demonstrates that the rejection term is
doing real work.
"""

import warnings
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .costs import expand_bracket, oracle_minimize, validate_assumption1
from .errors import AssumptionViolated, DimensionMismatch, Diverged
from .generator import (
    GeneratorState,
    equilibrium,
    lyapunov_value,
    meets_step_size_condition,
)
from .graphs import is_strongly_connected, is_weight_balanced, laplacian, spectrum
from .linalg import is_schur
from .synthesis import composite_matrices

__all__ = ["Scenario", "Trace", "SimulationMetrics", "control_law",
           "validate_scenario", "simulate", "metrics"]

DIVERGENCE_LIMIT = 1e12


@dataclass(frozen=True)
class Scenario:
    """Complete description of one closed-loop experiment."""

    plant: object
    exo: object
    graph: object
    costs: object
    params: object
    gains: object
    regulator: object
    horizon: int
    x0: np.ndarray
    w0: np.ndarray
    z0: np.ndarray
    lambda0: np.ndarray
    k2_off_window: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        n = self.graph.n
        x0 = np.asarray(self.x0, dtype=float)
        w0 = np.asarray(self.w0, dtype=float)
        z0 = np.asarray(self.z0, dtype=float)
        lam0 = np.asarray(self.lambda0, dtype=float)
        if self.costs.n != n:
            raise DimensionMismatch(
                "%d costs for %d agents" % (self.costs.n, n))
        if x0.shape != (n, self.plant.n_x):
            raise DimensionMismatch("x0 must be (N, n_x), got %r" % (x0.shape,))
        if w0.shape != (n, self.exo.n_w):
            raise DimensionMismatch("w0 must be (N, n_w), got %r" % (w0.shape,))
        if z0.shape != (n,) or lam0.shape != (n,):
            raise DimensionMismatch("z0 and lambda0 must be length-N vectors")
        if self.horizon < 1:
            raise DimensionMismatch("horizon must be at least 1")
        if self.k2_off_window is not None:
            lo, hi = self.k2_off_window
            if not (0 <= lo <= hi):
                raise DimensionMismatch("k2_off_window must satisfy 0 <= start <= end")
        object.__setattr__(self, "x0", x0)
        object.__setattr__(self, "w0", w0)
        object.__setattr__(self, "z0", z0)
        object.__setattr__(self, "lambda0", lam0)

    @property
    def n(self):
        return self.graph.n


@dataclass(frozen=True)
class Trace:
    """Recorded trajectory, one row per step (horizon + 1 rows).

    Per-step per-agent arrays: outputs ``y``, generator states ``z`` and
    ``lam``, inputs ``u``, tracking errors ``e``, estimation-error norms
    ``est_err``, input discrepancies ``xi``. The generator contraction
    diagnostic ``v`` is shared across agents. Full state arrays (``x``,
    ``w``, ``x_hat``, ``w_hat``) are kept for offline analysis; the CSV
    wire format carries only the per-step columns.
    """

    t: np.ndarray
    y: np.ndarray
    z: np.ndarray
    lam: np.ndarray
    u: np.ndarray
    e: np.ndarray
    est_err: np.ndarray
    xi: np.ndarray
    v: np.ndarray
    x: np.ndarray = field(repr=False)
    w: np.ndarray = field(repr=False)
    x_hat: np.ndarray = field(repr=False)
    w_hat: np.ndarray = field(repr=False)
    k2_on: np.ndarray = field(repr=False)
    y_star: float = 0.0

    @property
    def n(self):
        return self.y.shape[1]

    @property
    def steps(self):
        return self.y.shape[0]


def control_law(gains, z_i, obs_state, k2_enabled=True):
    """Per-agent input u = K x_hat + K1 z + K2 w_hat (K2 optional)."""
    u = gains.K @ obs_state.x_hat + gains.K1[:, 0] * float(z_i)
    if k2_enabled and gains.K2.shape[1] > 0:
        u = u + gains.K2 @ obs_state.w_hat
    return u


def validate_scenario(scenario):
    """Check standing assumptions; returns a list of warning strings.

    Graph requirements are hard errors, everything else (conservative
    step-size condition, declared moduli, persistence of exosystem modes,
    plant minimality, Schur certificates of supplied gains) is reported
    as a warning so empirical runs stay possible.
    """
    if not (is_weight_balanced(scenario.graph)
            and is_strongly_connected(scenario.graph)):
        raise AssumptionViolated(
            "communication graph must be strongly connected and weight-balanced")
    notes = []
    for cost in scenario.costs:
        check = validate_assumption1(cost)
        if not check:
            notes.append("cost %r violates its declared moduli (%s at s1=%g, s2=%g)"
                         % (cost.name, check.violation[2],
                            check.violation[0], check.violation[1]))
    spec = spectrum(scenario.graph)
    if spec.lambda2 > 0 and not meets_step_size_condition(
            scenario.params, scenario.costs.l_lower, scenario.costs.l_upper,
            spec.lambda2, spec.lambda_n):
        notes.append("generator step sizes do not satisfy the sufficient "
                     "convergence condition; convergence is empirical")
    if not scenario.exo.modes_persistent():
        notes.append("exosystem has decaying modes; they need no rejection")
    if not scenario.plant.is_minimal():
        notes.append("plant realization is not minimal")
    if not is_schur(scenario.plant.A + scenario.plant.B @ scenario.gains.K):
        notes.append("A + B K is not Schur; the closed loop may diverge")
    a_tilde, c_tilde = composite_matrices(scenario.plant, scenario.exo)
    l_stack = np.vstack([scenario.gains.L1, scenario.gains.L2])
    if not is_schur(a_tilde + l_stack @ c_tilde):
        notes.append("observer error matrix is not Schur; estimates may diverge")
    return notes


def _k2_active(scenario, t):
    if scenario.k2_off_window is None:
        return True
    lo, hi = scenario.k2_off_window
    return not (lo <= t <= hi)


def simulate(scenario, emit_warnings=True):
    """Run the closed loop for ``horizon`` steps and return the trace.

    All updates within one step read pre-step values. Raises
    :class:`Diverged` as soon as any state array norm passes 1e12, so a
    destabilized configuration fails loudly instead of flooding the trace
    with overflow.
    """
    notes = validate_scenario(scenario)
    if emit_warnings:
        for note in notes:
            warnings.warn(note, stacklevel=2)

    model, exo, gains = scenario.plant, scenario.exo, scenario.gains
    n, n_x, n_u, n_w = scenario.n, model.n_x, model.n_u, exo.n_w
    horizon = scenario.horizon
    lap = laplacian(scenario.graph)

    y_star = oracle_minimize(scenario.costs, expand_bracket(scenario.costs))
    eq = equilibrium(scenario.costs, lap, y_star,
                     float(scenario.lambda0.sum()), scenario.params.alpha)

    a, b, c = model.A, model.B, model.C
    s, e_mat = exo.S, exo.E
    k, k1, k2 = gains.K, gains.K1, gains.K2
    l1, l2 = gains.L1[:, 0], gains.L2[:, 0]
    alpha, beta, gamma = (scenario.params.alpha, scenario.params.beta,
                          scenario.params.gamma)

    x = scenario.x0.copy()
    w = scenario.w0.copy()
    x_hat = np.zeros((n, n_x))
    w_hat = np.zeros((n, n_w))
    z = scenario.z0.copy()
    lam = scenario.lambda0.copy()

    rows = horizon + 1
    tr = {
        "t": np.arange(rows),
        "y": np.zeros((rows, n)), "z": np.zeros((rows, n)),
        "lam": np.zeros((rows, n)), "u": np.zeros((rows, n, n_u)),
        "e": np.zeros((rows, n)), "est_err": np.zeros((rows, n)),
        "xi": np.zeros((rows, n, n_u)), "v": np.zeros(rows),
        "x": np.zeros((rows, n, n_x)), "w": np.zeros((rows, n, n_w)),
        "x_hat": np.zeros((rows, n, n_x)), "w_hat": np.zeros((rows, n, n_w)),
        "k2_on": np.zeros(rows, dtype=bool),
    }

    ones = np.ones(n)
    for t in range(rows):
        y = x @ c[0]
        k2_on = _k2_active(scenario, t)
        u = x_hat @ k.T + np.outer(z, k1[:, 0])
        if k2_on:
            u = u + w_hat @ k2.T
        u_full = x @ k.T + np.outer(y_star * ones, k1[:, 0]) + w @ k2.T
        err_x = x - x_hat
        err_w = w - w_hat

        tr["y"][t] = y
        tr["z"][t] = z
        tr["lam"][t] = lam
        tr["u"][t] = u
        tr["e"][t] = y - y_star
        tr["est_err"][t] = np.sqrt((err_x ** 2).sum(axis=1)
                                   + (err_w ** 2).sum(axis=1))
        tr["xi"][t] = u - u_full
        tr["v"][t] = lyapunov_value(GeneratorState(z=z, lam=lam),
                                    scenario.params, eq, lap)
        tr["x"][t] = x
        tr["w"][t] = w
        tr["x_hat"][t] = x_hat
        tr["w_hat"][t] = w_hat
        tr["k2_on"][t] = k2_on

        biggest = max(np.abs(arr).max() if arr.size else 0.0
                      for arr in (x, w, x_hat, w_hat, z, lam))
        if not np.isfinite(biggest) or biggest > DIVERGENCE_LIMIT:
            raise Diverged("state magnitude %.3e exceeded 1e12 at step %d"
                           % (biggest, t))
        if t == horizon:
            break

        innovation = x_hat @ c[0] - y
        x_hat_next = (x_hat @ a.T + u @ b.T + w_hat @ e_mat.T
                      + np.outer(innovation, l1))
        w_hat_next = w_hat @ s.T + np.outer(innovation, l2)
        x_next = x @ a.T + u @ b.T + w @ e_mat.T
        w_next = w @ s.T
        grad = scenario.costs.gradients(z)
        lz = lap @ z
        z_next = z - gamma * (alpha * grad + beta * lz + lap @ lam)
        lam_next = lam + gamma * alpha * beta * lz

        x, w, x_hat, w_hat = x_next, w_next, x_hat_next, w_hat_next
        z, lam = z_next, lam_next

    return Trace(y_star=y_star, **tr)


@dataclass(frozen=True)
class WindowStats:
    """Tracking-error levels around a K2 shutdown window."""

    pre_tail_max_e: float
    window_max_e: float
    final_max_e: float
    pre_spread: float
    window_spread: float


@dataclass(frozen=True)
class SimulationMetrics:
    """Summary numbers extracted from a trace."""

    y_star: float
    max_abs_e: np.ndarray = field(repr=False)
    terminal_spread: float = 0.0
    tail_max_e: float = 0.0
    tail_max_xi: float = 0.0
    window: Optional[WindowStats] = None


def metrics(trace, k2_off_window=None):
    """Reduce a trace to its headline numbers.

    The "tail" is the last 10% of steps; reporting both tail_max_e and
    tail_max_xi makes the implication visible that once the input
    discrepancy Xi dies out, the tracking error does too. When a K2
    shutdown window is given, the pre-window tail (last 10% of the steps
    before the window) and in-window maxima are reported alongside the
    output spreads, which is where a lost consensus shows up.
    """
    steps = trace.steps
    max_abs_e = np.abs(trace.e).max(axis=1)
    xi_norm = np.sqrt((trace.xi ** 2).sum(axis=2)).max(axis=1)
    spread = trace.y.max(axis=1) - trace.y.min(axis=1)
    tail_start = max(0, steps - max(1, steps // 10))

    window = None
    if k2_off_window is not None:
        lo, hi = int(k2_off_window[0]), int(k2_off_window[1])
        lo = min(max(lo, 0), steps - 1)
        hi = min(max(hi, lo), steps - 1)
        pre_start = max(0, lo - max(1, lo // 10))
        window = WindowStats(
            pre_tail_max_e=float(max_abs_e[pre_start:lo].max()) if lo > pre_start else 0.0,
            window_max_e=float(max_abs_e[lo:hi + 1].max()),
            final_max_e=float(max_abs_e[-1]),
            pre_spread=float(spread[pre_start:lo].max()) if lo > pre_start else 0.0,
            window_spread=float(spread[lo:hi + 1].max()),
        )

    return SimulationMetrics(
        y_star=trace.y_star,
        max_abs_e=max_abs_e,
        terminal_spread=float(spread[-1]),
        tail_max_e=float(max_abs_e[tail_start:].max()),
        tail_max_xi=float(xi_norm[tail_start:].max()),
        window=window,
    )
