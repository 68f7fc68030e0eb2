"""Digraph invariants and the frozen 4-ring connectivity constants."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import make_balanced_digraph
from optconsensus.errors import AssumptionViolated, DimensionMismatch
from optconsensus.graphs import (
    Digraph,
    is_strongly_connected,
    is_weight_balanced,
    laplacian,
    spectrum,
)

RING4 = Digraph(weights=np.array([
    [0.0, 0.0, 0.0, 1.0],
    [1.0, 0.0, 0.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [0.0, 0.0, 1.0, 0.0],
]))


def test_ring_is_balanced_and_connected():
    assert is_weight_balanced(RING4)
    assert is_strongly_connected(RING4)


def test_ring_spectrum_frozen():
    spec = spectrum(RING4)
    assert spec.lambda2 == pytest.approx(1.0, abs=1e-9)
    assert spec.lambda_n == pytest.approx(2.0, abs=1e-9)
    assert spec.laplacian_norm == pytest.approx(2.0, abs=1e-9)
    assert_allclose(spec.eigenvalues, [0.0, 1.0, 1.0, 2.0], atol=1e-9)


def test_laplacian_rows_sum_to_zero():
    lap = laplacian(RING4)
    assert_allclose(lap @ np.ones(4), 0.0, atol=1e-15)
    # balanced graph: the all-ones vector is also a left null vector
    assert_allclose(np.ones(4) @ lap, 0.0, atol=1e-15)


def test_path_graph_not_strongly_connected():
    path = Digraph(weights=np.array([
        [0.0, 0.0, 0.0],
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
    ]))
    assert not is_strongly_connected(path)
    with pytest.raises(AssumptionViolated, match="strongly connected"):
        spectrum(path)


def test_unbalanced_graph_detected():
    # in-degrees [1, 1, 2] vs out-degrees [1, 2, 1]
    g = Digraph(weights=np.array([
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
        [1.0, 1.0, 0.0],
    ]))
    assert not is_weight_balanced(g)
    with pytest.raises(AssumptionViolated, match="weight-balanced"):
        spectrum(g)


def test_digraph_validation():
    with pytest.raises(DimensionMismatch):
        Digraph(weights=np.ones((2, 3)))
    with pytest.raises(AssumptionViolated):
        Digraph(weights=np.array([[1.0]]))  # self-loop
    with pytest.raises(AssumptionViolated):
        Digraph(weights=np.array([[0.0, -1.0], [1.0, 0.0]]))


def test_single_node_graph():
    g = Digraph(weights=np.array([[0.0]]))
    assert is_strongly_connected(g) and is_weight_balanced(g)
    spec = spectrum(g)
    assert spec.lambda2 == 0.0
    assert spec.lambda_n == pytest.approx(0.0, abs=1e-15)


def test_random_balanced_digraphs_satisfy_assumption():
    rng = np.random.default_rng(21)
    for _ in range(25):
        g = make_balanced_digraph(rng, int(rng.integers(2, 8)))
        assert is_weight_balanced(g)
        assert is_strongly_connected(g)
        spec = spectrum(g)
        assert spec.lambda2 > 0.0
        assert spec.lambda_n >= spec.lambda2


def test_spectrum_of_bidirected_pair():
    # L = [[1, -1], [-1, 1]] has eigenvalues {0, 2}
    g = Digraph(weights=np.array([[0.0, 1.0], [1.0, 0.0]]))
    spec = spectrum(g)
    assert spec.lambda2 == pytest.approx(2.0, abs=1e-12)
    assert spec.lambda_n == pytest.approx(2.0, abs=1e-12)
