"""Closed-form free response of a damped mass-spring system.

Solves ``m x'' + c x' + k x = 0`` with ``gamma = c / 2m`` and
``omega0 = sqrt(k / m)``:

* overdamped (``gamma > omega0``): ``A e^{l1 t} + B e^{l2 t}``,
  ``l1,2 = -gamma +- sqrt(gamma^2 - omega0^2)``
* critical (``gamma == omega0``): ``(A + B t) e^{-gamma t}``
* underdamped (``gamma < omega0``): ``A e^{-gamma t} cos(omega_d t + phi)``,
  ``omega_d = sqrt(omega0^2 - gamma^2)``

``A`` and ``B`` are the coefficients of these forms, not initial conditions.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass

import numpy as np

from .core import ParameterError
from .validation import check_positive_int, check_real

__all__ = ["Regime", "OscillatorParams", "classify_regime", "position", "sample_curve", "curve_to_csv"]

CRITICAL_RTOL = 1e-9


class Regime(str, enum.Enum):
    OVERDAMPED = "overdamped"
    CRITICAL = "critical"
    UNDERDAMPED = "underdamped"


@dataclass(frozen=True)
class OscillatorParams:
    mass: float
    damping: float
    stiffness: float
    amp_A: float = 1.0
    amp_B: float = 0.0
    phase: float = 0.0

    def __post_init__(self):
        check_real(self.mass, "mass", low=0, low_inclusive=False)
        check_real(self.damping, "damping", low=0)
        check_real(self.stiffness, "stiffness", low=0, low_inclusive=False)
        for name in ("amp_A", "amp_B", "phase"):
            check_real(getattr(self, name), name)

    @classmethod
    def from_rates(cls, gamma, omega0, amp_A=1.0, amp_B=0.0, phase=0.0, mass=1.0):
        """Build from ``gamma`` and ``omega0`` directly (``c = 2 m gamma``, ``k = m omega0^2``)."""
        check_real(gamma, "gamma", low=0)
        check_real(omega0, "omega0", low=0, low_inclusive=False)
        return cls(mass, 2 * mass * gamma, mass * omega0**2, amp_A, amp_B, phase)

    @property
    def omega0(self) -> float:
        return math.sqrt(self.stiffness / self.mass)

    @property
    def gamma(self) -> float:
        return self.damping / (2 * self.mass)

    @property
    def omega_d(self) -> float:
        """Damped angular frequency; nan unless underdamped."""
        diff = self.omega0**2 - self.gamma**2
        return math.sqrt(diff) if diff > 0 else math.nan

    @property
    def roots(self) -> tuple:
        """``(l1, l2)`` of the overdamped form; nan unless ``gamma > omega0``."""
        disc = self.gamma**2 - self.omega0**2
        if disc <= 0:
            return (math.nan, math.nan)
        s = math.sqrt(disc)
        return (-self.gamma + s, -self.gamma - s)


def classify_regime(p: OscillatorParams) -> Regime:
    gamma, omega0 = p.gamma, p.omega0
    if abs(gamma - omega0) <= CRITICAL_RTOL * max(gamma, omega0):
        return Regime.CRITICAL
    return Regime.OVERDAMPED if gamma > omega0 else Regime.UNDERDAMPED


def position(p: OscillatorParams, t):
    """Displacement at time(s) ``t >= 0``; returns a float for scalar ``t``."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise ParameterError("time must be non-negative")
    regime = classify_regime(p)
    if regime is Regime.UNDERDAMPED:
        omega_d = math.sqrt(max(p.omega0**2 - p.gamma**2, 0.0))
        x = p.amp_A * np.exp(-p.gamma * t_arr) * np.cos(omega_d * t_arr + p.phase)
    elif regime is Regime.CRITICAL:
        x = (p.amp_A + p.amp_B * t_arr) * np.exp(-p.gamma * t_arr)
    else:
        l1, l2 = p.roots
        x = p.amp_A * np.exp(l1 * t_arr) + p.amp_B * np.exp(l2 * t_arr)
    return float(x) if x.ndim == 0 else x


def sample_curve(p: OscillatorParams, t_start, t_end, n_samples) -> list:
    """``n_samples`` evenly spaced ``(t, x)`` pairs on ``[t_start, t_end]``."""
    t_start = check_real(t_start, "t_start", low=0)
    t_end = check_real(t_end, "t_end")
    n_samples = check_positive_int(n_samples, "n_samples")
    if not t_start < t_end:
        raise ParameterError(f"need t_start < t_end, got {t_start} and {t_end}")
    if n_samples < 2:
        raise ParameterError("n_samples must be at least 2")
    t = np.linspace(t_start, t_end, n_samples)
    return list(zip(t.tolist(), np.atleast_1d(position(p, t)).tolist()))


def curve_to_csv(samples) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", "x"])
    for t, x in samples:
        writer.writerow([repr(float(t)), repr(float(x))])
    return buf.getvalue()
