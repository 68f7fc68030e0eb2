"""Weighted digraphs for the agent communication topology.

The adjacency convention follows the consensus literature: ``a_ij > 0``
means information flows from agent j to agent i, i.e. the edge (j, i)
exists. The in-degree Laplacian is ``L = D_in - A`` with
``D_in = diag(row sums)``, so ``L @ 1 = 0`` always holds and
``1.T @ L = 0`` holds exactly when the digraph is weight-balanced.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import AssumptionViolated, DimensionMismatch
from .linalg import symmetric_eigenvalues

__all__ = [
    "Digraph",
    "GraphSpectrum",
    "laplacian",
    "is_weight_balanced",
    "is_strongly_connected",
    "spectrum",
]

BALANCE_TOL = 1e-12


@dataclass(frozen=True)
class Digraph:
    """Weighted digraph on n nodes given by its adjacency matrix."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise DimensionMismatch("adjacency must be square, got %r" % (w.shape,))
        if w.shape[0] < 1:
            raise DimensionMismatch("graph needs at least one node")
        if np.any(np.diag(w) != 0.0):
            raise AssumptionViolated("self-loops are not allowed (diagonal must be zero)")
        if np.any(w < 0.0):
            raise AssumptionViolated("edge weights must be nonnegative")
        object.__setattr__(self, "weights", w)

    @property
    def n(self):
        return self.weights.shape[0]


@dataclass(frozen=True)
class GraphSpectrum:
    """Connectivity constants of Sym(L) used for step-size selection."""

    lambda2: float
    lambda_n: float
    laplacian_norm: float
    eigenvalues: np.ndarray = field(repr=False)


def laplacian(graph):
    """In-degree Laplacian ``L = D_in - A`` of the digraph."""
    w = graph.weights
    return np.diag(w.sum(axis=1)) - w


def is_weight_balanced(graph, tol=BALANCE_TOL):
    """True iff every node's in-degree matches its out-degree within tol."""
    w = graph.weights
    return bool(np.max(np.abs(w.sum(axis=1) - w.sum(axis=0))) <= tol)


def _reachable_from_zero(adj):
    n = adj.shape[0]
    seen = np.zeros(n, dtype=bool)
    stack = [0]
    seen[0] = True
    while stack:
        u = stack.pop()
        for v in np.nonzero(adj[u])[0]:
            if not seen[v]:
                seen[v] = True
                stack.append(int(v))
    return bool(seen.all())


def is_strongly_connected(graph):
    """True iff every node reaches every other following edge directions.

    Checked by one forward and one reverse search from node 0. Edge (j, i)
    exists when ``weights[i, j] > 0``, so successors of j are the positive
    entries of column j.
    """
    forward = graph.weights.T > 0.0
    return _reachable_from_zero(forward) and _reachable_from_zero(forward.T)


def spectrum(graph):
    """Connectivity constants lambda2, lambdaN of Sym(L) and |L|.

    Requires the digraph to be strongly connected and weight-balanced,
    which makes ``Sym(L) = (L + L.T)/2`` positive semidefinite with a
    simple zero eigenvalue, so ``0 = lambda1 < lambda2 <= ... <= lambdaN``.

    Raises
    ------
    AssumptionViolated
        If the graph is not strongly connected and weight-balanced.
    """
    if not is_weight_balanced(graph) or not is_strongly_connected(graph):
        raise AssumptionViolated(
            "communication graph must be strongly connected and weight-balanced")
    lap = laplacian(graph)
    sym = (lap + lap.T) / 2.0
    eigs = symmetric_eigenvalues(sym)
    lambda2 = float(eigs[1]) if graph.n >= 2 else 0.0
    lambda_n = float(eigs[-1])
    norm = float(np.sqrt(max(symmetric_eigenvalues(lap.T @ lap)[-1], 0.0)))
    return GraphSpectrum(lambda2=lambda2, lambda_n=lambda_n,
                         laplacian_norm=norm, eigenvalues=eigs)
