"""Luenberger observer for the plant state and the disturbance state.

The observer runs the composite model forward and corrects both halves
with the output innovation C x_hat - y:

    x_hat(t+1) = A x_hat + B u + E w_hat + L1 (C x_hat - y)
    w_hat(t+1) = S w_hat + L2 (C x_hat - y)

The estimation error is autonomous: stacking (x - x_hat, w - w_hat), it
evolves under [[A + L1 C, E], [L2 C, S]] regardless of the input, so a
Schur gain pair (L1, L2) drives it to zero from any initial mismatch.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch

__all__ = ["ObserverState", "observer_step", "estimation_error"]


@dataclass(frozen=True)
class ObserverState:
    """Current estimates of the plant state and the exosystem state."""

    x_hat: np.ndarray
    w_hat: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x_hat, dtype=float)
        w = np.asarray(self.w_hat, dtype=float)
        if x.ndim != 1 or w.ndim != 1:
            raise DimensionMismatch("estimates must be vectors")
        object.__setattr__(self, "x_hat", x)
        object.__setattr__(self, "w_hat", w)


def observer_step(state, gains, model, exo, u, y):
    """One observer update driven by the applied input and measured output.

    ``gains`` only needs L1 (n_x, 1) and L2 (n_w, 1) attributes; the
    composed controller gains object from the synthesis module fits.
    """
    l1 = np.asarray(gains.L1, dtype=float)
    l2 = np.asarray(gains.L2, dtype=float)
    u = np.atleast_1d(np.asarray(u, dtype=float))
    if state.x_hat.shape != (model.n_x,) or state.w_hat.shape != (exo.n_w,):
        raise DimensionMismatch("observer state does not match the models")
    if l1.shape != (model.n_x, 1) or l2.shape != (exo.n_w, 1):
        raise DimensionMismatch("gains must be column vectors (n_x,1)/(n_w,1)")
    if u.shape != (model.n_u,):
        raise DimensionMismatch("u has shape %r, expected (%d,)" % (u.shape, model.n_u))
    innovation = float((model.C @ state.x_hat)[0]) - float(y)
    x_next = (model.A @ state.x_hat + model.B @ u + exo.E @ state.w_hat
              + l1[:, 0] * innovation)
    w_next = exo.S @ state.w_hat + l2[:, 0] * innovation
    return ObserverState(x_hat=x_next, w_hat=w_next)


def estimation_error(state, x_true, w_true):
    """Euclidean norm of the stacked estimation error."""
    x_true = np.asarray(x_true, dtype=float)
    w_true = np.asarray(w_true, dtype=float)
    if x_true.shape != state.x_hat.shape or w_true.shape != state.w_hat.shape:
        raise DimensionMismatch("true states do not match the estimates")
    ex = x_true - state.x_hat
    ew = w_true - state.w_hat
    return float(np.sqrt(ex @ ex + ew @ ew))
