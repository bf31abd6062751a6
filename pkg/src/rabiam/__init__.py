"""Rabi oscillations of a driven two-level system.

Exact numerical integration of the full equations, closed-form rotating-wave
solutions, and first- and second-order averaging-method approximations, with
tools to compare them.
"""

from .am_nonresonant import am1_solve, am2_solve, secular_A
from .am_resonant import am1_resonant_solve, am2_resonant_solve, resonant_frequency_B
from .errors import (
    ConfigError,
    ConvergenceError,
    DomainError,
    IntegrationDivergedError,
    IrrationalRatioError,
    NoOscillationError,
    RabiError,
    ResonanceError,
    SchemaError,
    TransformSingularError,
)
from .metrics import (
    ComparisonReport,
    common_period,
    compare,
    dominant_frequency,
    estimate_period,
    max_transfer,
)
from .nrwa import IntegratorConfig, converged_reference, integrate
from .params import (
    GROUND,
    InitialState,
    SystemParams,
    params_from_epsilons,
    params_from_frequencies,
    params_resonant,
    prepared_state,
    probabilities,
    scaled_time,
)
from .runner import RunConfig, execute
from .rwa import rwa_propagate, rwa_summary, strong_field_propagate
from .trajectory import MethodKind, Trajectory

__version__ = "0.1.0"
