"""Distributed optimal output consensus with disturbance rejection.

N identical discrete-time linear agents drive their outputs to the
minimizer of a sum of local convex costs, coordinating over a strongly
connected weight-balanced digraph. The architecture is the usual
embedded-generator one: a primal-dual optimal signal generator produces
each agent's local reference, a Luenberger observer reconstructs the
plant state together with the exosystem state behind the disturbance,
and a regulator-equation tracking controller makes the output follow the
reference while cancelling the disturbance.
"""

from .costs import CostFunction, CostSuite, builtin_suite, quadratic_suite
from .errors import (
    AssumptionViolated,
    DimensionMismatch,
    Diverged,
    InfeasibleDual,
    NoBracket,
    NoConvergence,
    NotSymmetric,
    OptConsensusError,
    ScenarioFormatError,
    SingularMatrix,
    StabilizationFailed,
    UnknownSuite,
    Unsolvable,
)
from .generator import (
    GeneratorParams,
    GeneratorState,
    default_params,
    equilibrium,
    lyapunov_value,
    run,
    step,
)
from .graphs import Digraph, is_strongly_connected, is_weight_balanced, laplacian, spectrum
from .observer import ObserverState, estimation_error, observer_step
from .plant import Exosystem, PlantModel, exo_step, output, plant_step
from .sim import Scenario, Trace, control_law, metrics, simulate, validate_scenario
from .synthesis import (
    ControllerGains,
    RegulatorSolution,
    compose_gains,
    design_feedback,
    design_observer,
    solve_regulator,
)

__version__ = "0.1.0"

__all__ = [
    "AssumptionViolated", "ControllerGains", "CostFunction", "CostSuite",
    "Digraph", "DimensionMismatch", "Diverged", "Exosystem",
    "GeneratorParams", "GeneratorState", "InfeasibleDual", "NoBracket",
    "NoConvergence", "NotSymmetric", "ObserverState", "OptConsensusError",
    "PlantModel", "RegulatorSolution", "Scenario", "ScenarioFormatError",
    "SingularMatrix", "StabilizationFailed", "Trace", "UnknownSuite",
    "Unsolvable", "builtin_suite", "compose_gains", "control_law",
    "default_params", "design_feedback", "design_observer", "equilibrium",
    "estimation_error", "exo_step", "is_strongly_connected",
    "is_weight_balanced", "laplacian", "lyapunov_value", "metrics",
    "observer_step", "output", "plant_step", "quadratic_suite", "run",
    "simulate", "solve_regulator", "spectrum", "step", "validate_scenario",
    "__version__",
]
