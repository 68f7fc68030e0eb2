"""Per-agent convex objectives and the aggregate-minimizer oracle.

Each agent holds a scalar cost f_i with declared convexity moduli: f_i is
l_lower-strongly convex and its gradient is l_upper-Lipschitz. The team
objective is ``f(s) = sum_i f_i(s)``; its unique minimizer is the target
the consensus machinery must reach, so this module also provides an
independent root-finding oracle for it (never routed through the
distributed dynamics it is used to check).
"""

import re
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from .errors import DimensionMismatch, NoBracket, NoConvergence, UnknownSuite

__all__ = [
    "CostFunction",
    "CostSuite",
    "ModulusCheck",
    "builtin_suite",
    "quadratic_suite",
    "check_gradient_fd",
    "validate_assumption1",
    "oracle_minimize",
    "expand_bracket",
]


@dataclass(frozen=True)
class CostFunction:
    """Scalar convex cost with analytic gradient and declared moduli."""

    name: str
    value: Callable[[float], float]
    gradient: Callable[[float], float]
    l_lower: float
    l_upper: float

    def __post_init__(self):
        if not (self.l_lower > 0.0):
            raise ValueError("l_lower must be positive")
        if self.l_upper < self.l_lower:
            raise ValueError("l_upper must be at least l_lower")


class CostSuite:
    """Ordered collection of per-agent costs with aggregate helpers."""

    def __init__(self, members, name="suite"):
        self.members = tuple(members)
        if not self.members:
            raise DimensionMismatch("a suite needs at least one cost")
        self.name = name

    @property
    def n(self):
        return len(self.members)

    @property
    def l_lower(self):
        """Strong-convexity modulus valid for every member."""
        return min(m.l_lower for m in self.members)

    @property
    def l_upper(self):
        """Gradient Lipschitz modulus valid for every member."""
        return max(m.l_upper for m in self.members)

    def gradients(self, z):
        """Stacked per-agent gradients [f_i'(z_i)] for a state vector z."""
        z = np.asarray(z, dtype=float)
        if z.shape != (self.n,):
            raise DimensionMismatch(
                "state length %r does not match %d agents" % (z.shape, self.n))
        return np.array([m.gradient(float(zi))
                         for m, zi in zip(self.members, z)])

    def total_value(self, s):
        return sum(m.value(float(s)) for m in self.members)

    def total_gradient(self, s):
        return sum(m.gradient(float(s)) for m in self.members)

    def __len__(self):
        return self.n

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]


# ---------------------------------------------------------------------------
# Builtin suites
# ---------------------------------------------------------------------------

def _f1_value(y):
    return (y - 8.0) ** 2


def _f1_gradient(y):
    return 2.0 * (y - 8.0)


def _f2_value(y):
    return y * y / (20.0 * np.sqrt(y * y + 1.0)) + y * y


def _f2_gradient(y):
    return y * (y * y + 2.0) / (20.0 * (y * y + 1.0) ** 1.5) + 2.0 * y


def _f3_value(y):
    return y * y / (80.0 * np.log(y * y + 2.0)) + (y - 5.0) ** 2


def _f3_gradient(y):
    lg = np.log(y * y + 2.0)
    return y * (lg - y * y / (y * y + 2.0)) / (40.0 * lg * lg) + 2.0 * (y - 5.0)


def _f4_value(y):
    # log(exp(-a) + exp(a)) written overflow-safe
    return np.logaddexp(-0.005 * y, 0.005 * y) + y * y


def _f4_gradient(y):
    return 0.005 * np.tanh(0.005 * y) + 2.0 * y


def _reference_suite():
    """Four heterogeneous strongly convex costs for a 4-agent benchmark.

    All members are 1-strongly convex with 3-Lipschitz gradients on the
    working range, so the suite declares (l_lower, l_upper) = (1, 3).
    """
    return CostSuite([
        CostFunction("(y-8)^2", _f1_value, _f1_gradient, 1.0, 3.0),
        CostFunction("y^2/(20*sqrt(y^2+1)) + y^2",
                     _f2_value, _f2_gradient, 1.0, 3.0),
        CostFunction("y^2/(80*ln(y^2+2)) + (y-5)^2",
                     _f3_value, _f3_gradient, 1.0, 3.0),
        CostFunction("ln(e^-0.005y + e^0.005y) + y^2",
                     _f4_value, _f4_gradient, 1.0, 3.0),
    ], name="reference")


def quadratic_suite(centers):
    """Suite of quadratics (s - a_i)^2, one per center."""
    centers = [float(a) for a in centers]
    members = []
    for a in centers:
        members.append(CostFunction(
            "(s-%g)^2" % a,
            (lambda s, a=a: (s - a) ** 2),
            (lambda s, a=a: 2.0 * (s - a)),
            2.0, 2.0))
    name = "quadratic(%s)" % ",".join("%g" % a for a in centers)
    return CostSuite(members, name=name)


_QUADRATIC_RE = re.compile(r"^quadratic\(([^)]*)\)$")


def builtin_suite(name):
    """Look up a builtin suite by name.

    Accepted names are ``"reference"`` (the bundled four-agent benchmark)
    and ``"quadratic(a1,...,aN)"`` with numeric centers.
    """
    if name == "reference":
        return _reference_suite()
    m = _QUADRATIC_RE.match(name)
    if m:
        parts = [p.strip() for p in m.group(1).split(",") if p.strip()]
        if not parts:
            raise UnknownSuite("quadratic suite needs at least one center")
        try:
            centers = [float(p) for p in parts]
        except ValueError as exc:
            raise UnknownSuite("bad quadratic centers in %r" % name) from exc
        return quadratic_suite(centers)
    raise UnknownSuite("unknown cost suite %r" % name)


# ---------------------------------------------------------------------------
# Checks and oracles
# ---------------------------------------------------------------------------

def check_gradient_fd(cost, points, h=1e-6):
    """Worst relative mismatch between gradient and a central difference.

    Returns ``max_s |g(s) - (f(s+h) - f(s-h)) / 2h| / (1 + |g(s)|)`` over
    the given points.
    """
    worst = 0.0
    for s in np.asarray(points, dtype=float):
        g = cost.gradient(float(s))
        fd = (cost.value(float(s + h)) - cost.value(float(s - h))) / (2.0 * h)
        worst = max(worst, abs(g - fd) / (1.0 + abs(g)))
    return worst


@dataclass(frozen=True)
class ModulusCheck:
    """Outcome of a declared-modulus validation; falsy when violated."""

    ok: bool
    violation: Optional[Tuple[float, float, str]] = None

    def __bool__(self):
        return self.ok


def validate_assumption1(cost, interval=(-20.0, 20.0), samples=50):
    """Sampled check of the declared strong-convexity/Lipschitz moduli.

    For all sampled pairs (s1, s2) in the interval, requires

        (g(s1) - g(s2)) (s1 - s2) >= l_lower (s1 - s2)^2    and
        |g(s1) - g(s2)| <= l_upper |s1 - s2|

    with a 1e-9 slack. A failed check carries the violating pair.
    """
    s = np.linspace(interval[0], interval[1], samples)
    g = np.array([cost.gradient(float(si)) for si in s])
    ds = s[:, None] - s[None, :]
    dg = g[:, None] - g[None, :]
    strong = dg * ds - (cost.l_lower - 1e-9) * ds * ds
    lips = (cost.l_upper + 1e-9) * np.abs(ds) - np.abs(dg)
    bad_strong = np.argwhere(strong < 0.0)
    if bad_strong.size:
        i, j = bad_strong[0]
        return ModulusCheck(False, (float(s[i]), float(s[j]), "strong convexity"))
    bad_lips = np.argwhere(lips < 0.0)
    if bad_lips.size:
        i, j = bad_lips[0]
        return ModulusCheck(False, (float(s[i]), float(s[j]), "Lipschitz gradient"))
    return ModulusCheck(True)


def oracle_minimize(suite, bracket, grad_tol=1e-12):
    """Minimizer of the aggregate cost by bracketed root finding.

    Locates the root of ``sum_i f_i'`` inside the bracket with Brent's
    method, then polishes with safeguarded finite-difference Newton steps
    until ``|sum_i f_i'(s)| <= grad_tol``. This path is independent of the
    distributed generator, so it can serve as its oracle.

    Parameters
    ----------
    suite : CostSuite
    bracket : (float, float)
        Must satisfy ``total_gradient(lo) < 0 < total_gradient(hi)``.

    Raises
    ------
    NoBracket
        If the gradient does not change sign across the bracket.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    g = suite.total_gradient
    if not (g(lo) < 0.0 < g(hi)):
        raise NoBracket(
            "aggregate gradient does not change sign on [%g, %g]" % (lo, hi))
    root = brentq(g, lo, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps,
                  maxiter=200)
    for _ in range(50):
        gv = g(root)
        if abs(gv) <= grad_tol:
            return float(root)
        h = 1e-7 * max(1.0, abs(root))
        slope = (g(root + h) - g(root - h)) / (2.0 * h)
        if slope <= 0.0:
            break
        candidate = root - gv / slope
        if not (lo < candidate < hi):
            candidate = (lo + hi) / 2.0
        root = candidate
    if abs(g(root)) <= grad_tol:
        return float(root)
    raise NoConvergence("minimizer polish stalled at |grad| = %.3e" % abs(g(root)))


def expand_bracket(suite, start=1.0, cap=1e12):
    """Grow a symmetric interval until it brackets the aggregate minimizer."""
    half = float(start)
    g = suite.total_gradient
    while half <= cap:
        if g(-half) < 0.0 < g(half):
            return (-half, half)
        half *= 2.0
    raise NoBracket("no sign change found out to +/-%g" % cap)
