"""Agent dynamics and the disturbance-generating exosystem.

Each agent is a discrete-time LTI system with scalar output,

    x(t+1) = A x(t) + B u(t) + d(t),      y(t) = C x(t),

driven by a matched disturbance d(t) = E w(t) whose generator
w(t+1) = S w(t) is marginally stable or antistable (no modes decay on
their own, so rejection has to be active). Disturbance-free agents are
modeled with an empty exosystem (n_w = 0); all the algebra degenerates
cleanly through zero-width matrices.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .linalg import eigenvalues_general, matrix_rank

__all__ = ["PlantModel", "Exosystem", "plant_step", "exo_step", "output"]


@dataclass(frozen=True)
class PlantModel:
    """State-space triple (A, B, C) with scalar output."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.A, dtype=float)
        b = np.asarray(self.B, dtype=float)
        c = np.asarray(self.C, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionMismatch("A must be square, got %r" % (a.shape,))
        if b.ndim != 2 or b.shape[0] != a.shape[0]:
            raise DimensionMismatch("B must be n_x by n_u, got %r" % (b.shape,))
        if c.shape != (1, a.shape[0]):
            raise DimensionMismatch(
                "C must be 1 by n_x (scalar output), got %r" % (c.shape,))
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "B", b)
        object.__setattr__(self, "C", c)

    @property
    def n_x(self):
        return self.A.shape[0]

    @property
    def n_u(self):
        return self.B.shape[1]

    def is_minimal(self, tol=1e-9):
        """True iff (A, B) is controllable and (C, A) observable."""
        n = self.n_x
        ctrl = np.hstack([np.linalg.matrix_power(self.A, k) @ self.B
                          for k in range(n)])
        obs = np.vstack([self.C @ np.linalg.matrix_power(self.A, k)
                         for k in range(n)])
        return matrix_rank(ctrl, tol) == n and matrix_rank(obs, tol) == n


@dataclass(frozen=True)
class Exosystem:
    """Disturbance generator w(t+1) = S w(t), d(t) = E w(t)."""

    S: np.ndarray
    E: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.S, dtype=float)
        e = np.asarray(self.E, dtype=float)
        if s.ndim != 2 or s.shape[0] != s.shape[1]:
            raise DimensionMismatch("S must be square, got %r" % (s.shape,))
        if e.ndim != 2 or e.shape[1] != s.shape[0]:
            raise DimensionMismatch(
                "E must be n_x by n_w, got %r with n_w=%d" % (e.shape, s.shape[0]))
        object.__setattr__(self, "S", s)
        object.__setattr__(self, "E", e)

    @property
    def n_w(self):
        return self.S.shape[0]

    @classmethod
    def empty(cls, n_x):
        """Exosystem with no states: d(t) = 0 identically."""
        return cls(S=np.zeros((0, 0)), E=np.zeros((n_x, 0)))

    def modes_persistent(self, tol=1e-9):
        """True iff every mode of S has modulus at least 1 - tol.

        Decaying exosystem modes would vanish on their own and need no
        rejection; this diagnostic flags scenarios that use them anyway.
        """
        if self.n_w == 0:
            return True
        moduli = np.abs(eigenvalues_general(self.S))
        return bool(moduli.min() >= 1.0 - tol)


def plant_step(model, x, u, d):
    """Advance one step: ``A x + B u + d``."""
    x = np.asarray(x, dtype=float)
    u = np.atleast_1d(np.asarray(u, dtype=float))
    d = np.asarray(d, dtype=float)
    if x.shape != (model.n_x,):
        raise DimensionMismatch("x has shape %r, expected (%d,)" % (x.shape, model.n_x))
    if u.shape != (model.n_u,):
        raise DimensionMismatch("u has shape %r, expected (%d,)" % (u.shape, model.n_u))
    if d.shape != (model.n_x,):
        raise DimensionMismatch("d has shape %r, expected (%d,)" % (d.shape, model.n_x))
    return model.A @ x + model.B @ u + d


def exo_step(exo, w):
    """Advance the exosystem; returns ``(S w, E w)``.

    The second element is the disturbance acting during the current step
    (d(t) = E w(t)), not the one after the update.
    """
    w = np.asarray(w, dtype=float)
    if w.shape != (exo.n_w,):
        raise DimensionMismatch("w has shape %r, expected (%d,)" % (w.shape, exo.n_w))
    return exo.S @ w, exo.E @ w


def output(model, x):
    """Scalar measurement y = C x."""
    x = np.asarray(x, dtype=float)
    if x.shape != (model.n_x,):
        raise DimensionMismatch("x has shape %r, expected (%d,)" % (x.shape, model.n_x))
    return float((model.C @ x)[0])
