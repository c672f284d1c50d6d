"""Shared types for the swarm optimizers: bounds, random streams, swarm state
and run results, plus the linear inertia schedule."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "RNG_NAME",
    "DampswarmError",
    "ParameterError",
    "DimensionError",
    "DomainError",
    "ConfigurationError",
    "ProblemNotFoundError",
    "BoundsBox",
    "RngStream",
    "SwarmState",
    "ProgressTrace",
    "RunResult",
    "inertia_weight",
    "clip_to_bounds",
]

#: Bit generator behind every :class:`RngStream`; recorded in result files.
RNG_NAME = "numpy.random.PCG64"


class DampswarmError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(DampswarmError, ValueError):
    """A hyperparameter or argument is outside its valid range."""


class DimensionError(DampswarmError, ValueError):
    """Array shapes disagree with the problem dimension."""


class DomainError(DampswarmError, ValueError):
    """Non-finite input or objective value."""


class ConfigurationError(DampswarmError, ValueError):
    """An experiment configuration is inconsistent."""


class ProblemNotFoundError(DampswarmError, KeyError):
    """Registry lookup miss."""

    def __init__(self, name, valid):
        self.name = name
        self.valid = tuple(valid)
        super().__init__(name)

    def __str__(self):
        return f"unknown problem {self.name!r}; valid names: {', '.join(self.valid)}"


@dataclass(frozen=True)
class BoundsBox:
    """Axis-aligned search box ``lower <= x <= upper``."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.atleast_1d(np.asarray(self.lower, dtype=float))
        upper = np.atleast_1d(np.asarray(self.upper, dtype=float))
        if lower.ndim != 1 or lower.shape != upper.shape or lower.size == 0:
            raise DimensionError(
                f"lower and upper must be non-empty vectors of equal length, "
                f"got shapes {lower.shape} and {upper.shape}"
            )
        if not (np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
            raise DomainError("bounds must be finite")
        if np.any(lower >= upper):
            raise ParameterError("every lower bound must be strictly below its upper bound")
        lower.setflags(write=False)
        upper.setflags(write=False)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def dim(self) -> int:
        return self.lower.size

    @property
    def width(self) -> np.ndarray:
        return self.upper - self.lower

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))

    def __eq__(self, other):
        if not isinstance(other, BoundsBox):
            return NotImplemented
        return np.array_equal(self.lower, other.lower) and np.array_equal(self.upper, other.upper)

    def __hash__(self):
        return hash((self.lower.tobytes(), self.upper.tobytes()))


class RngStream:
    """Seeded uniform stream on ``[0, 1)`` backed by PCG64.

    Each optimizer run owns exactly one stream. Draw order is part of the
    reproducibility contract, so callers always pull whole blocks in a fixed
    sequence.
    """

    name = RNG_NAME

    def __init__(self, seed: int):
        seed = int(seed)
        if seed < 0:
            raise ParameterError(f"seed must be a non-negative integer, got {seed}")
        self.seed = seed
        self._gen = np.random.Generator(np.random.PCG64(seed))

    def random(self, size=None):
        return self._gen.random(size)

    def uniform_in(self, box: BoundsBox, n: int) -> np.ndarray:
        """``n`` points uniform in ``box``, one row each."""
        return box.lower + self.random((n, box.dim)) * box.width

    def __repr__(self):
        return f"RngStream(seed={self.seed})"


@dataclass
class SwarmState:
    positions: np.ndarray
    velocities: np.ndarray
    personal_best_pos: np.ndarray
    personal_best_val: np.ndarray
    global_best_pos: np.ndarray
    global_best_val: float
    iteration: int = 0
    trace: list = field(default_factory=list)

    @property
    def n_particles(self) -> int:
        return self.positions.shape[0]

    @property
    def dim(self) -> int:
        return self.positions.shape[1]

    def copy(self) -> "SwarmState":
        return SwarmState(
            self.positions.copy(),
            self.velocities.copy(),
            self.personal_best_pos.copy(),
            self.personal_best_val.copy(),
            self.global_best_pos.copy(),
            float(self.global_best_val),
            self.iteration,
            list(self.trace),
        )

    def check_invariants(self, box: BoundsBox | None = None) -> None:
        """Raise ``AssertionError`` if the state is internally inconsistent."""
        n, d = self.positions.shape
        assert self.velocities.shape == (n, d)
        assert self.personal_best_pos.shape == (n, d)
        assert self.personal_best_val.shape == (n,)
        i = int(np.argmin(self.personal_best_val))
        assert self.global_best_val == self.personal_best_val[i]
        assert np.array_equal(self.global_best_pos, self.personal_best_pos[i])
        if box is not None:
            assert np.all(self.positions >= box.lower) and np.all(self.positions <= box.upper)


@dataclass(frozen=True)
class ProgressTrace:
    """Best-so-far objective value after each iteration."""

    best_so_far: tuple

    def __len__(self):
        return len(self.best_so_far)

    def __iter__(self):
        return iter(self.best_so_far)

    def __getitem__(self, i):
        return self.best_so_far[i]

    def is_monotone(self) -> bool:
        return all(b <= a for a, b in zip(self.best_so_far, self.best_so_far[1:]))


@dataclass(frozen=True)
class RunResult:
    best_pos: np.ndarray
    best_val: float
    trace: ProgressTrace
    wall_time_s: float
    seed: int
    evaluations: int

    def same_outcome(self, other: "RunResult") -> bool:
        """Equality on everything except wall time."""
        return (
            np.array_equal(self.best_pos, other.best_pos)
            and self.best_val == other.best_val
            and tuple(self.trace) == tuple(other.trace)
            and self.seed == other.seed
            and self.evaluations == other.evaluations
        )

    def to_dict(self, trace: bool = True) -> dict:
        out = {
            "seed": self.seed,
            "best_pos": [float(v) for v in self.best_pos],
            "best_val": float(self.best_val),
            "wall_time_s": float(self.wall_time_s),
            "evaluations": int(self.evaluations),
        }
        if trace:
            out["trace"] = [float(v) for v in self.trace]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "RunResult":
        return cls(
            best_pos=np.asarray(data["best_pos"], dtype=float),
            best_val=float(data["best_val"]),
            trace=ProgressTrace(tuple(float(v) for v in data.get("trace", ()))),
            wall_time_s=float(data["wall_time_s"]),
            seed=int(data["seed"]),
            evaluations=int(data["evaluations"]),
        )


def inertia_weight(t, w_min, w_max, t_max) -> float:
    """Linearly decreasing inertia, ``w_max`` at ``t = 0`` down to ``w_min`` at ``t_max``."""
    if t_max < 1:
        raise ParameterError(f"t_max must be >= 1, got {t_max}")
    if not 0 <= t <= t_max:
        raise ParameterError(f"iteration {t} outside [0, {t_max}]")
    if not 0 <= w_min <= w_max:
        raise ParameterError(f"need 0 <= w_min <= w_max, got w_min={w_min}, w_max={w_max}")
    if t == t_max:
        # w_max - (w_max - w_min) is not always bit-equal to w_min
        return float(w_min)
    return w_max - (w_max - w_min) * t / t_max


def clip_to_bounds(x, box: BoundsBox) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != box.dim:
        raise DimensionError(f"expected last axis of length {box.dim}, got shape {x.shape}")
    return np.clip(x, box.lower, box.upper)
