"""Underdamped and classical particle swarm optimizers with benchmark problems."""

from .core import (
    BoundsBox,
    ConfigurationError,
    DampswarmError,
    DimensionError,
    DomainError,
    ParameterError,
    ProblemNotFoundError,
    ProgressTrace,
    RngStream,
    RunResult,
    SwarmState,
    clip_to_bounds,
    inertia_weight,
)
from .objectives import (
    ObjectiveSpec,
    PenaltyWeights,
    ViolationReport,
    additive_penalty_wrap,
    evaluate,
    lookup,
    problem_names,
    static_penalty_wrap,
    violations,
)
from .pso import PSO, PsoParams, pso_run, pso_step
from .ueps import UEPS, UepsParams, oscillation_coefficient, ueps_run, ueps_step

__version__ = "0.1.0"
