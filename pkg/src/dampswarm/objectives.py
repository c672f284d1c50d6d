"""Benchmark functions, constrained design problems and penalty transforms.

Every problem is an :class:`ObjectiveSpec`: a raw objective, its search box,
optional constraint functions (``g(x) <= 0`` and ``h(x) = 0``) and, where it
is known exactly, the global optimum. Constrained problems are turned into
box-only problems with :func:`additive_penalty_wrap` or
:func:`static_penalty_wrap` before an optimizer sees them.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .core import BoundsBox, DimensionError, DomainError, ParameterError, ProblemNotFoundError
from .validation import check_bounds, check_point

__all__ = [
    "Constraint",
    "ObjectiveSpec",
    "PenaltyWeights",
    "ViolationReport",
    "EQUALITY_TOL",
    "FEASIBILITY_RTOL",
    "STATIC_PENALTY_K",
    "PRESSURE_VESSEL_COST_COEF",
    "REGISTRY",
    "problem_names",
    "lookup",
    "as_objective",
    "evaluate",
    "violations",
    "additive_penalty_wrap",
    "static_penalty_wrap",
]

EQUALITY_TOL = 1e-8
FEASIBILITY_RTOL = 1e-4
STATIC_PENALTY_K = 1e9
# 0.6224 (not 0.6244) is the coefficient that reproduces the 5885.47 reference cost
PRESSURE_VESSEL_COST_COEF = 0.6224


@dataclass(frozen=True)
class Constraint:
    """One constraint function.

    ``scale`` is the magnitude used to express violations in relative terms
    (for instance the 1296000 volume term of the pressure-vessel g3).
    """

    func: Callable[[np.ndarray], float]
    label: str = ""
    scale: float = 1.0

    def __call__(self, x):
        return float(self.func(x))


@dataclass(frozen=True)
class ObjectiveSpec:
    name: str
    func: Callable[[np.ndarray], float]
    bounds: BoundsBox
    inequality: tuple = ()
    equality: tuple = ()
    known_optimum: Optional[tuple] = None
    description: str = ""
    penalty: str = "none"
    base: Optional["ObjectiveSpec"] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.known_optimum is not None:
            x_star, f_star = self.known_optimum
            x_star = np.asarray(x_star, dtype=float)
            if x_star.shape != (self.arity,):
                raise DimensionError(f"{self.name}: optimum has shape {x_star.shape}, arity is {self.arity}")
            if not self.bounds.contains(x_star):
                raise ParameterError(f"{self.name}: known optimum lies outside the bounds")
            object.__setattr__(self, "known_optimum", (x_star, float(f_star)))
        object.__setattr__(self, "inequality", tuple(self.inequality))
        object.__setattr__(self, "equality", tuple(self.equality))

    @property
    def arity(self) -> int:
        return self.bounds.dim

    @property
    def n_constraints(self) -> int:
        return len(self.inequality) + len(self.equality)

    @property
    def constrained(self) -> bool:
        return self.n_constraints > 0

    @property
    def source(self) -> "ObjectiveSpec":
        """The unwrapped problem this spec was derived from."""
        return self if self.base is None else self.base

    def __call__(self, x) -> float:
        return evaluate(self, x)


@dataclass(frozen=True)
class PenaltyWeights:
    inequality_weights: tuple = ()
    equality_weights: tuple = ()

    def __post_init__(self):
        ineq = tuple(float(w) for w in self.inequality_weights)
        eq = tuple(float(w) for w in self.equality_weights)
        if any(not (w > 0 and np.isfinite(w)) for w in ineq + eq):
            raise ParameterError("penalty weights must be positive and finite")
        object.__setattr__(self, "inequality_weights", ineq)
        object.__setattr__(self, "equality_weights", eq)

    @classmethod
    def unit(cls, spec: ObjectiveSpec) -> "PenaltyWeights":
        return cls((1.0,) * len(spec.inequality), (1.0,) * len(spec.equality))

    @classmethod
    def from_flat(cls, spec: ObjectiveSpec, weights) -> "PenaltyWeights":
        """Split one flat list (inequalities first) to match ``spec``."""
        weights = list(weights)
        if len(weights) != spec.n_constraints:
            raise ParameterError(
                f"{spec.name} has {spec.n_constraints} constraints, got {len(weights)} weights"
            )
        n = len(spec.inequality)
        return cls(tuple(weights[:n]), tuple(weights[n:]))


@dataclass(frozen=True)
class ViolationReport:
    inequality_excess: tuple
    equality_excess: tuple
    satisfied_count: int
    total_count: int
    scales: tuple = ()

    @property
    def feasible(self) -> bool:
        return self.satisfied_count == self.total_count

    def relative_excess(self) -> tuple:
        excess = self.inequality_excess + self.equality_excess
        scales = self.scales or (1.0,) * len(excess)
        return tuple(e / max(1.0, abs(s)) for e, s in zip(excess, scales))

    def max_relative_violation(self) -> float:
        return max(self.relative_excess(), default=0.0)

    def is_feasible(self, rtol: float = FEASIBILITY_RTOL) -> bool:
        """Feasibility allowing each violation up to ``rtol`` of its constraint scale."""
        return self.max_relative_violation() <= rtol

    def to_dict(self) -> dict:
        return {
            "inequality_excess": [float(v) for v in self.inequality_excess],
            "equality_excess": [float(v) for v in self.equality_excess],
            "satisfied": self.satisfied_count,
            "total": self.total_count,
            "max_relative_violation": self.max_relative_violation(),
        }


def _point(spec: ObjectiveSpec, x) -> np.ndarray:
    return check_point(x, spec.arity)


def evaluate(spec: ObjectiveSpec, x) -> float:
    """Objective value of ``spec`` at ``x``; ``x`` may lie outside the bounds."""
    return float(spec.func(_point(spec, x)))


def violations(spec: ObjectiveSpec, x) -> ViolationReport:
    x = _point(spec, x)
    with np.errstate(divide="ignore", invalid="ignore"):
        g = [c(x) for c in spec.inequality]
        h = [c(x) for c in spec.equality]
    # nan from a singular constraint counts as violated
    ineq = tuple(max(v, 0.0) if not np.isnan(v) else np.inf for v in g)
    # |h| within EQUALITY_TOL is reported as zero so that "satisfied" and
    # "zero excess" stay the same thing
    eq = tuple(abs(v) if not abs(v) <= EQUALITY_TOL else 0.0 for v in h)
    s = sum(1 for e in ineq + eq if e == 0.0)
    scales = tuple(c.scale for c in spec.inequality) + tuple(c.scale for c in spec.equality)
    return ViolationReport(ineq, eq, s, len(ineq) + len(eq), scales)


def additive_penalty_wrap(spec: ObjectiveSpec, weights: PenaltyWeights | None = None) -> ObjectiveSpec:
    """``F(x) = f(x) + sum r_i max(g_i, 0) + sum c_j |h_j|`` as a box-only problem."""
    if not spec.constrained:
        raise ParameterError(f"{spec.name} has no constraints to penalize")
    if weights is None:
        weights = PenaltyWeights.unit(spec)
    if len(weights.inequality_weights) != len(spec.inequality) or len(weights.equality_weights) != len(
        spec.equality
    ):
        raise ParameterError(
            f"{spec.name} needs {len(spec.inequality)} inequality and {len(spec.equality)} "
            f"equality weights, got {len(weights.inequality_weights)} and {len(weights.equality_weights)}"
        )
    f, ineq, eq = spec.func, spec.inequality, spec.equality
    r, c = weights.inequality_weights, weights.equality_weights

    def penalized(x):
        total = f(x)
        for w, g in zip(r, ineq):
            total += w * max(g(x), 0.0)
        for w, h in zip(c, eq):
            total += w * abs(h(x))
        return total

    return replace(
        spec,
        name=f"{spec.name}+additive",
        func=penalized,
        inequality=(),
        equality=(),
        known_optimum=None,
        penalty="additive",
        base=spec.source,
    )


def static_penalty_wrap(spec: ObjectiveSpec, K: float = STATIC_PENALTY_K) -> ObjectiveSpec:
    """``f(x)`` on feasible points, otherwise ``K * (1 - s/m)`` for ``s`` of ``m`` satisfied."""
    if not spec.constrained:
        raise ParameterError(f"{spec.name} has no constraints to penalize")
    if not (K > 0 and np.isfinite(K)):
        raise ParameterError(f"K must be positive and finite, got {K}")
    K = float(K)
    m = spec.n_constraints

    def penalized(x):
        report = violations(spec, x)
        if report.satisfied_count == m:
            return spec.func(x)
        return K * (1.0 - report.satisfied_count / m)

    return replace(
        spec,
        name=f"{spec.name}+static",
        func=penalized,
        inequality=(),
        equality=(),
        known_optimum=None,
        penalty="static",
        base=spec.source,
    )


# --- unconstrained test functions -------------------------------------------


def ackley(x):
    f_1 = -20 * np.exp(-0.2 * np.sqrt(0.5 * (x[0] ** 2 + x[1] ** 2)))
    f_2 = -np.exp(0.5 * (np.cos(2 * np.pi * x[0]) + np.cos(2 * np.pi * x[1]))) + np.e + 20
    return f_1 + f_2


def sphere(x):
    return np.sum(x**2)


def rosenbrock(x):
    return np.sum(100 * (x[1:] - x[:-1] ** 2) ** 2 + (1 - x[:-1]) ** 2)


def beale(x):
    return (
        (1.5 - x[0] + x[0] * x[1]) ** 2
        + (2.25 - x[0] + x[0] * x[1] ** 2) ** 2
        + (2.625 - x[0] + x[0] * x[1] ** 3) ** 2
    )


def booth(x):
    return (x[0] + 2 * x[1] - 7) ** 2 + (2 * x[0] + x[1] - 5) ** 2


def bukin_n6(x):
    return 100 * np.sqrt(np.abs(x[1] - 0.01 * x[0] ** 2)) + 0.01 * np.abs(x[0] + 10)


def matyas(x):
    return 0.26 * (x[0] ** 2 + x[1] ** 2) - 0.48 * x[0] * x[1]


def levy(x):
    # last term uses sin^2(3 pi y); some tables print 2 pi y
    s = np.sin(3 * np.pi * x[1]) ** 2
    return np.sin(3 * np.pi * x[0]) ** 2 + (x[0] - 1) ** 2 * (1 + s) + (x[1] - 1) ** 2 * (1 + s)


def easom(x):
    return -np.cos(x[0]) * np.cos(x[1]) * np.exp(-((x[0] - np.pi) ** 2 + (x[1] - np.pi) ** 2))


def eggholder(x):
    f_1 = -(x[1] + 47) * np.sin(np.sqrt(np.abs(x[0] / 2 + (x[1] + 47))))
    f_2 = -x[0] * np.sin(np.abs(x[0] - (x[1] + 47)))
    return f_1 + f_2


def mccormick(x):
    return np.sin(x[0] + x[1]) + (x[0] - x[1]) ** 2 - 1.5 * x[0] + 2.5 * x[1] + 1


def eggcrate(x):
    return x[0] ** 2 + x[1] ** 2 + 25 * (np.sin(x[0]) ** 2 + np.sin(x[1]) ** 2)


def michalewicz(x):
    i = np.arange(1, x.size + 1)
    return -np.sum(np.sin(x) * np.sin(i * x**2 / np.pi) ** 20)


# --- constrained problems ----------------------------------------------------


def pressure_vessel_cost(x, coef=PRESSURE_VESSEL_COST_COEF):
    """Material, forming and welding cost of a cylindrical vessel.

    ``x = (shell thickness, head thickness, inner radius, cylinder length)``.
    """
    return (
        coef * x[0] * x[2] * x[3]
        + 1.7781 * x[1] * x[2] ** 2
        + 3.1661 * x[0] ** 2 * x[3]
        + 19.84 * x[0] ** 2 * x[2]
    )


def spring_weight(x):
    return (x[2] + 2) * x[1] * x[0] ** 2


def _spring_g2(x):
    return (
        (4 * x[1] ** 2 - x[0] * x[1]) / (12566 * (x[1] * x[0] ** 3 - x[0] ** 4))
        + 1 / (5108 * x[0] ** 2)
        - 1
    )


ROSENBROCK_CONSTRAINTS = (
    Constraint(lambda x: (x[0] - 1) ** 3 - x[1] + 1, "(x-1)^3 - y + 1 <= 0"),
    Constraint(lambda x: x[0] + x[1] - 2, "x + y - 2 <= 0", 2.0),
)

PRESSURE_VESSEL_CONSTRAINTS = (
    Constraint(lambda x: -x[0] + 0.0193 * x[2], "-x1 + 0.0193 x3 <= 0"),
    Constraint(lambda x: -x[1] + 0.00954 * x[2], "-x2 + 0.00954 x3 <= 0"),
    Constraint(
        lambda x: -np.pi * x[2] ** 2 * x[3] - (4 / 3) * np.pi * x[2] ** 3 + 1296000,
        "-pi x3^2 x4 - 4/3 pi x3^3 + 1296000 <= 0",
        1296000.0,
    ),
    Constraint(lambda x: x[3] - 240, "x4 - 240 <= 0", 240.0),
)

SPRING_CONSTRAINTS = (
    Constraint(lambda x: 1 - (x[2] * x[1] ** 3) / (71785 * x[0] ** 4), "shear stress"),
    Constraint(_spring_g2, "surge frequency"),
    Constraint(lambda x: 1 - (140.45 * x[0]) / (x[2] * x[1] ** 2), "deflection"),
    Constraint(lambda x: (x[0] + x[1]) / 1.5 - 1, "outer diameter"),
)


def _spec(name, func, lower, upper, optimum=None, **kw):
    return ObjectiveSpec(name, func, BoundsBox(lower, upper), known_optimum=optimum, **kw)


# Optima are listed only where they are exact; eggholder, mccormick and
# michalewicz optima are only known to a few digits.
REGISTRY = {
    spec.name: spec
    for spec in (
        _spec("ackley", ackley, [-5, -5], [5, 5], ([0, 0], 0.0)),
        _spec("sphere", sphere, [-100, -100], [100, 100], ([0, 0], 0.0)),
        _spec("rosenbrock", rosenbrock, [-10, -10], [10, 10], ([1, 1], 0.0)),
        _spec("beale", beale, [-4.5, -4.5], [4.5, 4.5], ([3, 0.5], 0.0)),
        _spec("booth", booth, [-10, -10], [10, 10], ([1, 3], 0.0)),
        _spec("bukin_n6", bukin_n6, [-15, -3], [-5, 3], ([-10, 1], 0.0)),
        _spec("matyas", matyas, [-10, -10], [10, 10], ([0, 0], 0.0)),
        _spec("levy", levy, [-10, -10], [10, 10], ([1, 1], 0.0)),
        _spec("easom", easom, [-100, -100], [100, 100], ([np.pi, np.pi], -1.0)),
        _spec("eggholder", eggholder, [-512, -512], [512, 512]),
        _spec("mccormick", mccormick, [-1.5, -3], [4, 4]),
        _spec("eggcrate", eggcrate, [-5, -5], [5, 5], ([0, 0], 0.0)),
        _spec("michalewicz", michalewicz, [0, 0], [np.pi, np.pi]),
        _spec(
            "rosenbrock_constrained",
            rosenbrock,
            [-1.5, -0.5],
            [1.5, 2.5],
            ([1, 1], 0.0),
            inequality=ROSENBROCK_CONSTRAINTS,
            description="Rosenbrock with a cubic and a linear inequality constraint",
        ),
        _spec(
            "pressure_vessel",
            pressure_vessel_cost,
            [0, 0, 10, 10],
            [99, 99, 200, 200],
            inequality=PRESSURE_VESSEL_CONSTRAINTS,
            description="cylindrical pressure vessel cost (Ts, Th, R, L)",
        ),
        _spec(
            "spring",
            spring_weight,
            [0.05, 0.25, 2],
            [2, 1.30, 15],
            inequality=SPRING_CONSTRAINTS,
            description="tension/compression spring weight (d, D, N)",
        ),
    )
}


def problem_names() -> list:
    return list(REGISTRY)


def lookup(name: str) -> ObjectiveSpec:
    try:
        return REGISTRY[name]
    except KeyError:
        raise ProblemNotFoundError(name, REGISTRY) from None


def as_objective(objective, bounds=None) -> ObjectiveSpec:
    """Accept a spec, a registry name, or a callable plus ``bounds``."""
    if isinstance(objective, ObjectiveSpec):
        if bounds is not None:
            return replace(objective, bounds=check_bounds(bounds))
        return objective
    if isinstance(objective, str):
        spec = lookup(objective)
        return spec if bounds is None else replace(spec, bounds=check_bounds(bounds))
    if callable(objective):
        if bounds is None:
            raise ParameterError("bounds are required for a plain callable objective")
        name = getattr(objective, "__name__", "objective")
        return ObjectiveSpec(name, objective, check_bounds(bounds))
    raise ParameterError(f"cannot use {objective!r} as an objective")
