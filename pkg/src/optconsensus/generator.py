"""Distributed primal-dual optimal signal generator.

Each agent carries a scalar primal state z_i and a scalar dual state
lambda_i and iterates

    z_i+ = z_i - gamma * (alpha * f_i'(z_i) + beta * (L z)_i + (L lambda)_i)
    lambda_i+ = lambda_i + gamma * alpha * beta * (L z)_i

where both updates read the pre-step state. Over a strongly connected
weight-balanced digraph the primal states converge to the minimizer of
``sum_i f_i`` from any initial condition, and the dual mass
``sum_i lambda_i`` is conserved exactly by construction.

The sufficient step-size condition implemented by :func:`default_params`
is conservative; much larger steps often converge in practice, and the
``certified`` flag on :class:`GeneratorParams` records which regime a
parameter set is in.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, Diverged, InfeasibleDual

__all__ = [
    "GeneratorParams",
    "GeneratorState",
    "EquilibriumInfo",
    "default_params",
    "meets_step_size_condition",
    "step",
    "run",
    "equilibrium",
    "orthonormal_complement",
    "lyapunov_value",
]

DIVERGENCE_LIMIT = 1e12


@dataclass(frozen=True)
class GeneratorParams:
    """Step-size parameters (alpha, beta, gamma) for the generator.

    ``certified`` records whether the values satisfy the sufficient
    convergence condition for the instance they were built for.
    """

    alpha: float
    beta: float
    gamma: float
    certified: bool = False

    def __post_init__(self):
        if min(self.alpha, self.beta, self.gamma) <= 0.0:
            raise ValueError("alpha, beta, gamma must be positive")


@dataclass(frozen=True)
class GeneratorState:
    """Stacked primal and dual states (one scalar pair per agent)."""

    z: np.ndarray
    lam: np.ndarray

    def __post_init__(self):
        z = np.asarray(self.z, dtype=float)
        lam = np.asarray(self.lam, dtype=float)
        if z.ndim != 1 or lam.shape != z.shape:
            raise DimensionMismatch(
                "z and lambda must be equal-length vectors, got %r and %r"
                % (z.shape, lam.shape))
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "lam", lam)

    @property
    def n(self):
        return self.z.shape[0]


@dataclass(frozen=True)
class EquilibriumInfo:
    """Generator equilibrium for a given dual mass.

    ``z_star`` is the common primal value (the aggregate minimizer) and
    ``lambda_star`` the dual vector solving
    ``L lambda = -alpha grad(z_star 1)`` with ``1.T lambda`` pinned to the
    conserved mass.
    """

    z_star: float
    lambda_star: np.ndarray
    alpha: float
    residual: float


def default_params(l_lower, l_upper, lambda2, lambda_n):
    """Certified step sizes from the sufficient convergence condition.

    alpha and beta sit exactly at their lower bounds and gamma at half its
    strict upper bound:

        alpha = max(1, 1/l_lower, 2 l_upper^2 / (l_lower lambda2))
        beta  = max(1, 4 alpha^2 lambda_n^2 / lambda2^2)
        gamma = 0.5 / (beta^4 (lambda_n^2 + l_upper^2))
    """
    if min(l_lower, l_upper, lambda2, lambda_n) <= 0.0:
        raise ValueError("moduli and connectivity constants must be positive")
    alpha = max(1.0, 1.0 / l_lower, 2.0 * l_upper ** 2 / (l_lower * lambda2))
    beta = max(1.0, 4.0 * alpha ** 2 * lambda_n ** 2 / lambda2 ** 2)
    gamma = 0.5 / (beta ** 4 * (lambda_n ** 2 + l_upper ** 2))
    return GeneratorParams(alpha=alpha, beta=beta, gamma=gamma, certified=True)


def meets_step_size_condition(params, l_lower, l_upper, lambda2, lambda_n):
    """True iff (alpha, beta, gamma) satisfy the sufficient condition."""
    if min(l_lower, l_upper, lambda2, lambda_n) <= 0.0:
        return False
    alpha_lo = max(1.0, 1.0 / l_lower, 2.0 * l_upper ** 2 / (l_lower * lambda2))
    beta_lo = max(1.0, 4.0 * params.alpha ** 2 * lambda_n ** 2 / lambda2 ** 2)
    gamma_hi = 1.0 / (params.beta ** 4 * (lambda_n ** 2 + l_upper ** 2))
    return (params.alpha >= alpha_lo and params.beta >= beta_lo
            and 0.0 < params.gamma < gamma_hi)


def _check_shapes(state, lap, suite):
    n = state.n
    if lap.shape != (n, n):
        raise DimensionMismatch(
            "Laplacian %r does not match %d agents" % (lap.shape, n))
    if suite.n != n:
        raise DimensionMismatch(
            "suite has %d costs for %d agents" % (suite.n, n))


def step(state, params, lap, suite):
    """One synchronous generator update; both updates read pre-step state."""
    _check_shapes(state, lap, suite)
    grad = suite.gradients(state.z)
    lz = lap @ state.z
    z_next = state.z - params.gamma * (
        params.alpha * grad + params.beta * lz + lap @ state.lam)
    lam_next = state.lam + params.gamma * params.alpha * params.beta * lz
    return GeneratorState(z=z_next, lam=lam_next)


def run(initial, params, lap, suite, tol=1e-8, max_iters=100000):
    """Iterate the generator until the primal update stalls below tol.

    Stops when ``max_i |z_i(t+1) - z_i(t)| <= tol * gamma`` (the gamma
    scaling makes tol a residual on the update direction rather than on
    the step) or when ``max_iters`` is hit.

    Returns
    -------
    (GeneratorState, int, bool)
        Final state, iterations performed, convergence flag.

    Raises
    ------
    Diverged
        If the stacked state norm exceeds 1e12.
    """
    state = initial
    threshold = tol * params.gamma
    for it in range(1, max_iters + 1):
        nxt = step(state, params, lap, suite)
        if np.sqrt(nxt.z @ nxt.z + nxt.lam @ nxt.lam) > DIVERGENCE_LIMIT:
            raise Diverged("generator state norm exceeded 1e12 at iteration %d" % it)
        if np.max(np.abs(nxt.z - state.z)) <= threshold:
            return nxt, it, True
        state = nxt
    return state, max_iters, False


def equilibrium(suite, lap, y_star, lambda_mass, alpha):
    """Dual equilibrium for a given consensus value and dual mass.

    Solves the augmented least-squares system stacking
    ``L lambda = -alpha grad(y_star 1)`` with ``1.T lambda = lambda_mass``.
    The system is consistent exactly when y_star is the aggregate
    minimizer (the right-hand side then has no component along the left
    null vector of L).

    Raises
    ------
    InfeasibleDual
        If the residual exceeds 1e-8, which signals that y_star is not
        the minimizer or the graph is not weight-balanced.
    """
    n = lap.shape[0]
    g = suite.gradients(np.full(n, float(y_star)))
    aug = np.vstack([lap, np.ones((1, n))])
    rhs = np.concatenate([-alpha * g, [float(lambda_mass)]])
    lam, *_ = np.linalg.lstsq(aug, rhs, rcond=None)
    residual = float(np.linalg.norm(aug @ lam - rhs))
    if residual > 1e-8:
        raise InfeasibleDual(
            "dual equilibrium residual %.3e; y_star is likely not the "
            "aggregate minimizer" % residual)
    return EquilibriumInfo(z_star=float(y_star), lambda_star=lam,
                           alpha=float(alpha), residual=residual)


def orthonormal_complement(n):
    """Fixed orthonormal basis of the complement of span(1) in R^n.

    Built from the Householder reflection that maps e_1 to 1/sqrt(n): its
    remaining columns are an orthonormal completion, returned as an
    n x (n-1) matrix. Deterministic, so diagnostics built on it are
    reproducible; any other completion yields the same quadratic forms.
    """
    if n < 1:
        raise DimensionMismatch("n must be at least 1")
    if n == 1:
        return np.zeros((1, 0))
    r = np.full(n, 1.0 / np.sqrt(n))
    u = r - np.eye(n)[:, 0]
    u /= np.linalg.norm(u)
    h = np.eye(n) - 2.0 * np.outer(u, u)
    return h[:, 1:]


def lyapunov_value(state, params, eq, lap):
    """Contraction diagnostic V for the generator about an equilibrium.

    With Zbar = z - z_star 1, Lbar = lambda - lambda_star, and R the
    orthonormal complement of span(1),

        xi = R.T Lbar + alpha R.T Zbar
        V  = |Zbar|^2 + |xi|^2 / alpha^3

    V is zero iff the state sits at the equilibrium (up to the conserved
    dual mass, which R projects out). Under the certified step sizes V
    contracts at least by the factor (1 - 3 gamma / 16) per step.
    """
    n = state.n
    if lap.shape != (n, n):
        raise DimensionMismatch(
            "Laplacian %r does not match %d agents" % (lap.shape, n))
    if eq.lambda_star.shape != (n,):
        raise DimensionMismatch("equilibrium size does not match the state")
    zbar = state.z - eq.z_star
    lbar = state.lam - eq.lambda_star
    r = orthonormal_complement(n)
    xi = r.T @ lbar + params.alpha * (r.T @ zbar)
    return float(zbar @ zbar + (xi @ xi) / params.alpha ** 3)
