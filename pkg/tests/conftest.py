import numpy as np
import pytest

from dampswarm.core import SwarmState


class ConstantStream:
    """Stand-in for RngStream that returns a fixed value for every draw."""

    def __init__(self, value):
        self.value = value
        self.shapes = []

    def random(self, size=None):
        self.shapes.append(size)
        return np.full(size, self.value, dtype=float)


def make_state(objective, positions, global_best_pos=None, velocities=None):
    """Swarm state with personal bests at the positions themselves."""
    x = np.atleast_2d(np.asarray(positions, dtype=float))
    f = np.array([objective.func(p) for p in x])
    i = int(np.argmin(f))
    g = x[i].copy() if global_best_pos is None else np.asarray(global_best_pos, dtype=float)
    return SwarmState(
        positions=x,
        velocities=np.zeros_like(x) if velocities is None else np.asarray(velocities, dtype=float),
        personal_best_pos=x.copy(),
        personal_best_val=f,
        global_best_pos=g,
        global_best_val=float(f[i]),
        iteration=0,
    )


@pytest.fixture
def constant_stream():
    return ConstantStream
