"""Plant and exosystem step semantics."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from optconsensus.errors import DimensionMismatch
from optconsensus.plant import Exosystem, PlantModel, exo_step, output, plant_step

DEMO_PLANT = PlantModel(A=np.array([[1.0, 1.0], [0.0, 1.0]]),
                        B=np.array([[0.5], [1.0]]),
                        C=np.array([[1.0, 0.0]]))


def _rotation_exo():
    c, s = np.cos(1.0), np.sin(1.0)
    return Exosystem(S=np.array([[c, s], [-s, c]]),
                     E=np.array([[0.5, 0.5], [s - c, -c - s]]))


def test_plant_step_hand_example():
    x = np.array([2.0, 3.0])
    nxt = plant_step(DEMO_PLANT, x, np.array([1.0]), np.array([0.1, 0.2]))
    assert_allclose(nxt, [5.6, 4.2], atol=1e-15)
    assert output(DEMO_PLANT, nxt) == pytest.approx(5.6)


def test_plant_step_accepts_scalar_input():
    a = plant_step(DEMO_PLANT, np.zeros(2), 1.0, np.zeros(2))
    b = plant_step(DEMO_PLANT, np.zeros(2), np.array([1.0]), np.zeros(2))
    assert_allclose(a, b, atol=0.0)


def test_plant_step_is_linear():
    rng = np.random.default_rng(9)
    for _ in range(20):
        x1, x2 = rng.standard_normal((2, 2))
        u1, u2 = rng.standard_normal((2, 1))
        d1, d2 = rng.standard_normal((2, 2))
        a, b = rng.standard_normal(2)
        combined = plant_step(DEMO_PLANT, a * x1 + b * x2,
                              a * u1 + b * u2, a * d1 + b * d2)
        split = (a * plant_step(DEMO_PLANT, x1, u1, d1)
                 + b * plant_step(DEMO_PLANT, x2, u2, d2))
        assert_allclose(combined, split, atol=1e-12)


def test_rotation_exosystem_preserves_norm():
    exo = _rotation_exo()
    w = np.array([1.0, 0.0])
    for _ in range(100):
        w_next, d = exo_step(exo, w)
        assert_allclose(d, exo.E @ w, atol=0.0)  # disturbance reads pre-step w
        assert np.linalg.norm(w_next) == pytest.approx(1.0, abs=1e-12)
        w = w_next


def test_modes_persistent():
    assert _rotation_exo().modes_persistent()
    decaying = Exosystem(S=np.array([[0.5]]), E=np.array([[1.0], [0.0]]))
    assert not decaying.modes_persistent()


def test_empty_exosystem_degenerates_cleanly():
    exo = Exosystem.empty(2)
    assert exo.n_w == 0
    assert exo.modes_persistent()
    w_next, d = exo_step(exo, np.zeros(0))
    assert w_next.shape == (0,)
    assert_allclose(d, np.zeros(2), atol=0.0)


def test_minimality_checks():
    assert DEMO_PLANT.is_minimal()
    broken = PlantModel(A=np.array([[1.0, 0.0], [0.0, 2.0]]),
                        B=np.array([[1.0], [0.0]]),
                        C=np.array([[1.0, 0.0]]))
    assert not broken.is_minimal()


def test_shape_validation():
    with pytest.raises(DimensionMismatch):
        PlantModel(A=np.eye(2), B=np.ones((3, 1)), C=np.ones((1, 2)))
    with pytest.raises(DimensionMismatch):
        PlantModel(A=np.eye(2), B=np.ones((2, 1)), C=np.ones((2, 2)))
    with pytest.raises(DimensionMismatch):
        plant_step(DEMO_PLANT, np.zeros(3), np.zeros(1), np.zeros(2))
    with pytest.raises(DimensionMismatch):
        Exosystem(S=np.eye(2), E=np.ones((2, 3)))
