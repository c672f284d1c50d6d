"""Input checking helpers in the spirit of ``sklearn.utils.validation``."""

from __future__ import annotations

import numbers

import numpy as np

from .core import BoundsBox, DimensionError, DomainError, ParameterError


def check_bounds(bounds=None, lower=None, upper=None) -> BoundsBox:
    """Coerce ``bounds`` into a :class:`BoundsBox`.

    Accepts an existing box, a ``(lower, upper)`` pair, a sequence of
    per-dimension ``(lo, hi)`` pairs (the scipy convention), or explicit
    ``lower``/``upper`` keywords.
    """
    if isinstance(bounds, BoundsBox):
        return bounds
    if bounds is None:
        if lower is None or upper is None:
            raise ParameterError("bounds are required")
        return BoundsBox(lower, upper)
    arr = np.asarray(bounds, dtype=float)
    if arr.ndim == 2 and arr.shape[1] == 2 and arr.shape[0] != 2:
        return BoundsBox(arr[:, 0], arr[:, 1])
    if arr.ndim == 2 and arr.shape[0] == 2:
        return BoundsBox(arr[0], arr[1])
    raise DimensionError(f"cannot interpret bounds of shape {arr.shape}")


def check_point(x, dim: int, name: str = "x") -> np.ndarray:
    """Return ``x`` as a finite float vector of length ``dim``."""
    x = np.asarray(x, dtype=float)
    if x.shape != (dim,):
        raise DimensionError(f"{name} must have shape ({dim},), got {x.shape}")
    if not np.all(np.isfinite(x)):
        raise DomainError(f"{name} contains non-finite values: {x}")
    return x


def check_seed(seed) -> int:
    """Turn ``seed`` into a non-negative int; ``None`` draws one from OS entropy."""
    if seed is None:
        return int(np.random.SeedSequence().entropy % (2**32))
    if isinstance(seed, (bool, np.bool_)) or not isinstance(seed, numbers.Integral):
        raise ParameterError(f"seed must be a non-negative integer, got {seed!r}")
    if seed < 0:
        raise ParameterError(f"seed must be a non-negative integer, got {seed}")
    return int(seed)


def check_positive_int(value, name: str) -> int:
    if isinstance(value, (bool, np.bool_)) or not isinstance(value, numbers.Integral) or value < 1:
        raise ParameterError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def check_real(value, name: str, low=None, high=None, low_inclusive=True) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise ParameterError(f"{name} must be a real number, got {value!r}") from None
    if not np.isfinite(value):
        raise ParameterError(f"{name} must be finite, got {value}")
    if low is not None and (value < low if low_inclusive else value <= low):
        op = ">=" if low_inclusive else ">"
        raise ParameterError(f"{name} must be {op} {low}, got {value}")
    if high is not None and value > high:
        raise ParameterError(f"{name} must be <= {high}, got {value}")
    return value
