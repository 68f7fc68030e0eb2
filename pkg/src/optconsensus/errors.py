"""Exception types shared across the package.

Every error raised by the library derives from :class:`OptConsensusError`,
so callers can catch the whole family with a single except clause. The CLI
maps these onto its exit codes.
"""


class OptConsensusError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(OptConsensusError):
    """Operands have incompatible shapes."""


class SingularMatrix(OptConsensusError):
    """A pivot fell below the singularity threshold during elimination."""


class NotSymmetric(OptConsensusError):
    """A matrix required to be symmetric is not."""


class NoConvergence(OptConsensusError):
    """An iterative routine failed to converge."""


class StabilizationFailed(OptConsensusError):
    """No stabilizing gain could be computed for the given system."""


class AssumptionViolated(OptConsensusError):
    """A standing assumption of the method does not hold for the instance."""


class UnknownSuite(OptConsensusError):
    """Requested builtin cost suite name is not recognized."""


class NoBracket(OptConsensusError):
    """The supplied interval does not bracket a gradient sign change."""


class Diverged(OptConsensusError):
    """A trajectory left the admissible region (state norm above 1e12)."""


class InfeasibleDual(OptConsensusError):
    """No dual equilibrium exists for the supplied consensus value."""


class Unsolvable(OptConsensusError):
    """The regulator equations have no solution for this plant/exosystem."""


class ScenarioFormatError(OptConsensusError):
    """A scenario file is malformed or contains unknown keys."""
