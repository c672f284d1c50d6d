"""Global-best particle swarm optimization with a linearly decreasing inertia.

Baseline for comparing against :mod:`dampswarm.ueps`; it shares the
initialization, clamping, tie-breaking and result schema.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from ._swarm import advance, check_step_inputs, run_loop
from .base import BaseSwarmOptimizer
from .core import RngStream, RunResult, SwarmState, clip_to_bounds, inertia_weight
from .validation import check_positive_int, check_real

__all__ = ["PsoParams", "pso_step", "pso_run", "PSO"]


@dataclass(frozen=True)
class PsoParams:
    """PSO hyperparameters.

    ``c1`` and ``c2`` are usually picked in ``[1.8, 2]``; zero is accepted so
    that either pull can be switched off.
    """

    c1: float = 1.9
    c2: float = 1.9
    w_min: float = 0.4
    w_max: float = 0.9
    n_particles: int = 50
    max_iter: int = 100

    def __post_init__(self):
        object.__setattr__(self, "c1", check_real(self.c1, "c1", low=0))
        object.__setattr__(self, "c2", check_real(self.c2, "c2", low=0))
        object.__setattr__(self, "w_min", check_real(self.w_min, "w_min", low=0))
        object.__setattr__(self, "w_max", check_real(self.w_max, "w_max", low=self.w_min))
        object.__setattr__(self, "n_particles", check_positive_int(self.n_particles, "n_particles"))
        object.__setattr__(self, "max_iter", check_positive_int(self.max_iter, "max_iter"))

    def to_dict(self) -> dict:
        return asdict(self)


def pso_step(state: SwarmState, params: PsoParams, rng: RngStream, t: int, objective) -> SwarmState:
    n, d = state.positions.shape
    check_step_inputs(state, params.n_particles, params.max_iter, t, objective)
    r1 = rng.random((n, d))
    r2 = rng.random((n, d))
    w = inertia_weight(t, params.w_min, params.w_max, params.max_iter)
    x = state.positions
    v = (
        w * state.velocities
        + params.c1 * r1 * (state.personal_best_pos - x)
        + params.c2 * r2 * (state.global_best_pos - x)
    )
    x = clip_to_bounds(x + v, objective.bounds)
    return advance(state, x, v, objective)


def pso_run(objective, params: PsoParams | None = None, seed: int = 42, callback=None) -> RunResult:
    params = PsoParams() if params is None else params

    def step(state, rng, t):
        return pso_step(state, params, rng, t, objective)

    return run_loop(objective, params.n_particles, params.max_iter, seed, step, callback)


class PSO(BaseSwarmOptimizer):
    """Classical PSO estimator; parameters mirror :class:`PsoParams` plus ``random_state``."""

    def __init__(self, c1=1.9, c2=1.9, w_min=0.4, w_max=0.9, n_particles=50, max_iter=100, random_state=None):
        self.c1 = c1
        self.c2 = c2
        self.w_min = w_min
        self.w_max = w_max
        self.n_particles = n_particles
        self.max_iter = max_iter
        self.random_state = random_state

    def _make_params(self) -> PsoParams:
        params = self.get_params()
        params.pop("random_state")
        return PsoParams(**params)

    def _run(self, objective, params, seed, callback):
        return pso_run(objective, params, seed, callback)
