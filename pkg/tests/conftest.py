"""Shared fixtures and helpers for the test suite."""

import numpy as np
import pytest

from optconsensus.cli import builtin_scenario
from optconsensus.graphs import Digraph
from optconsensus.sim import simulate


def make_balanced_digraph(rng, n):
    """Random strongly connected weight-balanced digraph on n nodes.

    A complete bidirected core with symmetric random weights keeps the
    algebraic connectivity healthy (so certified step sizes stay in a
    range float64 can iterate), and a superimposed directed cycle with a
    small weight makes the graph genuinely directed. Both parts are
    weight-balanced, so the sum is too.
    """
    sym = rng.uniform(0.8, 1.2, size=(n, n))
    sym = (sym + sym.T) / 2.0
    np.fill_diagonal(sym, 0.0)
    cyc = np.zeros((n, n))
    order = rng.permutation(n)
    eps = float(rng.uniform(0.05, 0.15))
    for a, b in zip(order, np.roll(order, -1)):
        cyc[b, a] = eps
    return Digraph(weights=sym + cyc)


def affine_generator_map(lap, params, centers):
    """Stacked affine map v+ = M v + c of the generator on quadratics.

    For costs (s - a_i)^2 the gradient is linear, so the whole update of
    v = [z; lambda] is affine. Used to fast-forward literal iteration.
    """
    n = lap.shape[0]
    g, al, be = params.gamma, params.alpha, params.beta
    i_n = np.eye(n)
    m = np.block([
        [i_n - g * (2.0 * al * i_n + be * lap), -g * lap],
        [g * al * be * lap, i_n],
    ])
    c = np.concatenate([2.0 * g * al * np.asarray(centers, dtype=float),
                        np.zeros(n)])
    return m, c


def fast_forward(m, c, v0, steps):
    """Apply the affine map v -> M v + c ``steps`` times by binary squaring.

    Composition uses (M2, c2) o (M1, c1) = (M2 M1, M2 c1 + c2); doubling a
    map composes it with itself. Exact count of applications, no
    eigendecompositions, so it is a legitimate stand-in for the literal
    loop (and is cross-validated against it in the tests).
    """
    dim = m.shape[0]
    m_tot = np.eye(dim)
    c_tot = np.zeros(dim)
    m_pow = m.copy()
    c_pow = c.copy()
    k = int(steps)
    while k:
        if k & 1:
            c_tot = m_pow @ c_tot + c_pow
            m_tot = m_pow @ m_tot
        c_pow = m_pow @ c_pow + c_pow
        m_pow = m_pow @ m_pow
        k >>= 1
    return m_tot @ v0 + c_tot


@pytest.fixture(scope="session")
def demo_scenario():
    return builtin_scenario()


@pytest.fixture(scope="session")
def demo_trace(demo_scenario):
    return simulate(demo_scenario, emit_warnings=False)
