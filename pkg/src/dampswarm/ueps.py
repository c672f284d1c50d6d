"""Underdamped particle swarm optimization (UEPS).

Each particle is pulled toward the swarm's best point by a coefficient that
oscillates with a random phase and decays as ``exp(-b t)``, so particles
overshoot the incumbent early on and settle around it later. A small
uniform kick ``pert * (r2 - 1/2)`` keeps exploring::

    v <- w(t) v + A (k - cos 2 pi r1) exp(-b t) (x_best - x) + pert(t) (r2 - 1/2)
    x <- clip(x + v)

with ``k = 2`` for the ``TEXT`` kernel and ``k = 1`` for ``CODE``, and
``pert(t)`` either ``alpha`` or ``alpha ** t``. The defaults are the
reference implementation's: ``CODE`` kernel, geometric perturbation, one
``r1``/``r2`` draw per particle.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass

import numpy as np

from ._swarm import advance, check_step_inputs, run_loop
from .base import BaseSwarmOptimizer
from .core import ParameterError, RngStream, RunResult, SwarmState, clip_to_bounds, inertia_weight
from .validation import check_positive_int, check_real

__all__ = [
    "Kernel",
    "Perturbation",
    "Granularity",
    "UepsParams",
    "oscillation_coefficient",
    "perturbation_scale",
    "ueps_step",
    "ueps_run",
    "UEPS",
]


class Kernel(str, enum.Enum):
    TEXT = "text"  # A (2 - cos 2 pi r1) e^{-bt}, always >= A e^{-bt}
    CODE = "code"  # A (1 - cos 2 pi r1) e^{-bt}, may vanish


class Perturbation(str, enum.Enum):
    CONSTANT = "const"
    GEOMETRIC = "geom"


class Granularity(str, enum.Enum):
    PER_PARTICLE = "particle"
    PER_DIMENSION = "dimension"


@dataclass(frozen=True)
class UepsParams:
    amplitude: float = 1.0
    damping_rate: float = 0.007
    alpha: float = 0.8
    w_min: float = 0.4
    w_max: float = 0.9
    n_particles: int = 50
    max_iter: int = 100
    kernel: Kernel = Kernel.CODE
    perturbation: Perturbation = Perturbation.GEOMETRIC
    granularity: Granularity = Granularity.PER_PARTICLE

    def __post_init__(self):
        def set_(key, value):
            object.__setattr__(self, key, value)

        set_("amplitude", check_real(self.amplitude, "amplitude", low=0, low_inclusive=False))
        set_("damping_rate", check_real(self.damping_rate, "damping_rate", low=0))
        set_("alpha", check_real(self.alpha, "alpha", low=0))
        set_("w_min", check_real(self.w_min, "w_min", low=0))
        set_("w_max", check_real(self.w_max, "w_max", low=self.w_min))
        set_("n_particles", check_positive_int(self.n_particles, "n_particles"))
        set_("max_iter", check_positive_int(self.max_iter, "max_iter"))
        set_("kernel", _enum(Kernel, self.kernel, "kernel"))
        set_("perturbation", _enum(Perturbation, self.perturbation, "perturbation"))
        set_("granularity", _enum(Granularity, self.granularity, "granularity"))

    def to_dict(self) -> dict:
        return {k: (v.value if isinstance(v, enum.Enum) else v) for k, v in asdict(self).items()}


def _enum(cls, value, name):
    try:
        return cls(value)
    except ValueError:
        valid = ", ".join(m.value for m in cls)
        raise ParameterError(f"{name} must be one of {valid}, got {value!r}") from None


def oscillation_coefficient(A, b, t, r1, kernel=Kernel.CODE):
    """Damped oscillating pull toward the swarm best; vectorized over ``r1``."""
    offset = 2.0 if Kernel(kernel) is Kernel.TEXT else 1.0
    return A * (offset - np.cos(2 * np.pi * np.asarray(r1, dtype=float))) * np.exp(-b * t)


def perturbation_scale(alpha, t, schedule=Perturbation.GEOMETRIC) -> float:
    """``alpha`` or ``alpha ** t``; ``alpha = 0`` switches the kick off at every ``t``."""
    if alpha == 0:
        return 0.0
    return float(alpha) if Perturbation(schedule) is Perturbation.CONSTANT else float(alpha) ** t


def ueps_step(state: SwarmState, params: UepsParams, rng: RngStream, t: int, objective) -> SwarmState:
    """One velocity/position update, evaluation and best-refresh.

    Draws ``r1`` for the whole swarm, then ``r2``, particle by particle (and
    component by component with per-dimension granularity).
    """
    n, d = state.positions.shape
    check_step_inputs(state, params.n_particles, params.max_iter, t, objective)
    shape = (n, 1) if params.granularity is Granularity.PER_PARTICLE else (n, d)
    r1 = rng.random(shape)
    r2 = rng.random(shape)

    w = inertia_weight(t, params.w_min, params.w_max, params.max_iter)
    coef = oscillation_coefficient(params.amplitude, params.damping_rate, t, r1, params.kernel)
    kick = perturbation_scale(params.alpha, t, params.perturbation)
    x = state.positions
    v = w * state.velocities + coef * (state.global_best_pos - x) + kick * (r2 - 0.5)
    x = clip_to_bounds(x + v, objective.bounds)
    return advance(state, x, v, objective)


def ueps_run(objective, params: UepsParams | None = None, seed: int = 42, callback=None) -> RunResult:
    params = UepsParams() if params is None else params

    def step(state, rng, t):
        return ueps_step(state, params, rng, t, objective)

    return run_loop(objective, params.n_particles, params.max_iter, seed, step, callback)


class UEPS(BaseSwarmOptimizer):
    """Underdamped particle swarm optimizer with a scikit-learn interface.

    Parameters
    ----------
    amplitude : float, default 1.0
        Oscillation amplitude ``A``.
    damping_rate : float, default 0.007
        Per-iteration decay rate ``b`` of the oscillation.
    alpha : float, default 0.8
        Random perturbation factor.
    w_min, w_max : float, default 0.4, 0.9
        Inertia weight schedule end points.
    n_particles : int, default 50
    max_iter : int, default 100
    kernel : {"code", "text"}, default "code"
        ``"code"`` uses ``1 - cos``, ``"text"`` uses ``2 - cos``.
    perturbation : {"geom", "const"}, default "geom"
        Perturbation ``alpha ** t`` or constant ``alpha``.
    granularity : {"particle", "dimension"}, default "particle"
        One random draw per particle, or one per coordinate.
    random_state : int or None, default None
        Seed; ``None`` draws a fresh one, stored in ``seed_``.

    Attributes
    ----------
    best_pos_, best_val_ : best point found and its value
    trace_ : ndarray of best-so-far values, one per iteration
    result_ : :class:`RunResult`

    Examples
    --------
    >>> opt = UEPS(random_state=0).fit("sphere")
    >>> bool(opt.best_val_ < 1e-6)
    True
    """

    def __init__(
        self,
        amplitude=1.0,
        damping_rate=0.007,
        alpha=0.8,
        w_min=0.4,
        w_max=0.9,
        n_particles=50,
        max_iter=100,
        kernel="code",
        perturbation="geom",
        granularity="particle",
        random_state=None,
    ):
        self.amplitude = amplitude
        self.damping_rate = damping_rate
        self.alpha = alpha
        self.w_min = w_min
        self.w_max = w_max
        self.n_particles = n_particles
        self.max_iter = max_iter
        self.kernel = kernel
        self.perturbation = perturbation
        self.granularity = granularity
        self.random_state = random_state

    def _make_params(self) -> UepsParams:
        params = self.get_params()
        params.pop("random_state")
        return UepsParams(**params)

    def _run(self, objective, params, seed, callback):
        return ueps_run(objective, params, seed, callback)
