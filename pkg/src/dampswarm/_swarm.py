"""Pieces shared by the UEPS and PSO loops."""

from __future__ import annotations

import time

import numpy as np

from .core import (
    ConfigurationError,
    DimensionError,
    DomainError,
    ParameterError,
    ProgressTrace,
    RngStream,
    RunResult,
    SwarmState,
)


def evaluate_swarm(objective, positions) -> np.ndarray:
    values = np.empty(positions.shape[0])
    for i, x in enumerate(positions):
        fx = float(objective.func(x))
        if not np.isfinite(fx):
            raise DomainError(f"{objective.name}: non-finite objective value {fx} at particle {i}, x={x}")
        values[i] = fx
    return values


def init_swarm(objective, n_particles, rng: RngStream) -> SwarmState:
    """Uniform positions in the box, zero velocities, bests from the first evaluation."""
    x = rng.uniform_in(objective.bounds, n_particles)
    f = evaluate_swarm(objective, x)
    i = int(np.argmin(f))
    return SwarmState(
        positions=x,
        velocities=np.zeros_like(x),
        personal_best_pos=x.copy(),
        personal_best_val=f,
        global_best_pos=x[i].copy(),
        global_best_val=float(f[i]),
        iteration=0,
        trace=[],
    )


def check_step_inputs(state: SwarmState, n_particles, max_iter, t, objective):
    if state.positions.shape != (n_particles, objective.arity):
        raise DimensionError(
            f"swarm positions have shape {state.positions.shape}, expected ({n_particles}, {objective.arity})"
        )
    if not 0 <= t < max_iter:
        raise ParameterError(f"iteration {t} outside [0, {max_iter})")


def advance(state: SwarmState, positions, velocities, objective) -> SwarmState:
    """Evaluate the moved swarm and refresh personal and global bests.

    Improvements need a strict decrease; the global best is the lowest-index
    particle holding the smallest personal best.
    """
    f = evaluate_swarm(objective, positions)
    pbest_pos = state.personal_best_pos.copy()
    pbest_val = state.personal_best_val.copy()
    better = f < pbest_val
    pbest_pos[better] = positions[better]
    pbest_val[better] = f[better]
    i = int(np.argmin(pbest_val))
    new = SwarmState(
        positions=positions,
        velocities=velocities,
        personal_best_pos=pbest_pos,
        personal_best_val=pbest_val,
        global_best_pos=pbest_pos[i].copy(),
        global_best_val=float(pbest_val[i]),
        iteration=state.iteration + 1,
        trace=state.trace + [float(pbest_val[i])],
    )
    new.check_invariants(objective.bounds)
    return new


def run_loop(objective, n_particles, max_iter, seed, step, callback=None) -> RunResult:
    """Initialize from ``seed`` and apply ``step(state, rng, t)`` ``max_iter`` times."""
    if objective.constrained:
        raise ConfigurationError(
            f"{objective.name} has constraints; wrap it with additive_penalty_wrap or static_penalty_wrap first"
        )
    rng = RngStream(seed)
    start = time.perf_counter()
    state = init_swarm(objective, n_particles, rng)
    for t in range(max_iter):
        state = step(state, rng, t)
        if callback is not None:
            callback(state)
    elapsed = time.perf_counter() - start
    return RunResult(
        best_pos=state.global_best_pos.copy(),
        best_val=state.global_best_val,
        trace=ProgressTrace(tuple(state.trace)),
        wall_time_s=elapsed,
        seed=rng.seed,
        evaluations=n_particles * (max_iter + 1),
    )
