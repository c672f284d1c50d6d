import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dampswarm.core import DimensionError, DomainError, ParameterError, ProblemNotFoundError, RngStream
from dampswarm.objectives import (
    REGISTRY,
    PenaltyWeights,
    additive_penalty_wrap,
    as_objective,
    evaluate,
    lookup,
    static_penalty_wrap,
    violations,
)

REGISTRY_NAMES = [
    "ackley",
    "sphere",
    "rosenbrock",
    "beale",
    "booth",
    "bukin_n6",
    "matyas",
    "levy",
    "easom",
    "eggholder",
    "mccormick",
    "eggcrate",
    "michalewicz",
    "rosenbrock_constrained",
    "pressure_vessel",
    "spring",
]

VERIFIED_OPTIMA = ["sphere", "matyas", "booth", "beale", "rosenbrock", "levy", "ackley", "easom", "eggcrate"]

TABLE3_POINT = (0.778169, 0.384698, 40.319619, 200.0)


def test_registry_has_every_problem():
    assert sorted(REGISTRY) == sorted(REGISTRY_NAMES)


@pytest.mark.parametrize(
    "name, lower, upper",
    [
        ("ackley", [-5, -5], [5, 5]),
        ("sphere", [-100, -100], [100, 100]),
        ("bukin_n6", [-15, -3], [-5, 3]),
        ("mccormick", [-1.5, -3], [4, 4]),
        ("michalewicz", [0, 0], [math.pi, math.pi]),
        ("rosenbrock_constrained", [-1.5, -0.5], [1.5, 2.5]),
        ("pressure_vessel", [0, 0, 10, 10], [99, 99, 200, 200]),
        ("spring", [0.05, 0.25, 2], [2, 1.30, 15]),
    ],
)
def test_lookup_bounds(name, lower, upper):
    spec = lookup(name)
    np.testing.assert_array_equal(spec.bounds.lower, lower)
    np.testing.assert_array_equal(spec.bounds.upper, upper)


def test_lookup_ackley_optimum():
    x_star, f_star = lookup("ackley").known_optimum
    np.testing.assert_array_equal(x_star, [0, 0])
    assert f_star == 0.0


def test_lookup_pressure_vessel_constraints():
    assert len(lookup("pressure_vessel").inequality) == 4


def test_lookup_miss_lists_names():
    with pytest.raises(ProblemNotFoundError) as info:
        lookup("nonexistent")
    assert "ackley" in str(info.value) and "pressure_vessel" in str(info.value)


@pytest.mark.parametrize(
    "name, x, expected",
    [
        ("sphere", (0, 0), 0.0),
        ("ackley", (0, 0), 0.0),
        ("rosenbrock", (1, 1), 0.0),
        ("beale", (3, 0.5), 0.0),
        ("booth", (1, 3), 0.0),
        ("matyas", (0, 0), 0.0),
        ("levy", (1, 1), 0.0),
        ("easom", (math.pi, math.pi), -1.0),
    ],
)
def test_evaluate_at_optima(name, x, expected):
    assert evaluate(lookup(name), x) == pytest.approx(expected, abs=1e-12)


def test_pressure_vessel_cost_at_reference_point():
    # exact rational evaluation of the four-term cost at this point is 5885.476588...
    assert evaluate(lookup("pressure_vessel"), TABLE3_POINT) == pytest.approx(5885.476588353738, rel=1e-12)
    assert abs(evaluate(lookup("pressure_vessel"), TABLE3_POINT) - 5885.473070) < 0.5


def test_spring_and_extra_functions_match_hand_values():
    # (N + 2) D d^2 with d=0.05, D=0.25, N=2
    assert evaluate(lookup("spring"), (0.05, 0.25, 2)) == pytest.approx(4 * 0.25 * 0.0025)
    assert evaluate(lookup("bukin_n6"), (-10, 1)) == 0.0
    assert evaluate(lookup("mccormick"), (0, 0)) == pytest.approx(1.0)
    assert evaluate(lookup("eggcrate"), (0, 0)) == 0.0
    # sin(pi/2) * sin(1 * (pi/2)^2 / pi)^20
    expected = -(math.sin(math.pi / 4) ** 20)
    assert evaluate(lookup("michalewicz"), (math.pi / 2, 0)) == pytest.approx(expected)


def test_evaluate_errors():
    with pytest.raises(DimensionError):
        evaluate(lookup("sphere"), [1, 2, 3])
    with pytest.raises(DomainError):
        evaluate(lookup("sphere"), [np.nan, 0])
    with pytest.raises(DomainError):
        evaluate(lookup("sphere"), [np.inf, 0])


def test_evaluate_outside_bounds_is_allowed():
    assert evaluate(lookup("ackley"), (50, 50)) > 0


@pytest.mark.parametrize("name", REGISTRY_NAMES)
def test_evaluation_is_pure(name):
    spec = lookup(name)
    x = RngStream(3).uniform_in(spec.bounds, 1)[0]
    assert evaluate(spec, x) == evaluate(spec, x.copy())


@pytest.mark.parametrize("name", VERIFIED_OPTIMA + ["bukin_n6", "rosenbrock_constrained"])
def test_known_optimum_is_not_beaten(name):
    spec = lookup(name)
    x_star, f_star = spec.known_optimum
    assert evaluate(spec, x_star) == pytest.approx(f_star, abs=1e-9)
    samples = RngStream(11).uniform_in(spec.bounds, 1000)
    assert all(evaluate(spec, x) >= f_star - 1e-9 for x in samples)


def test_violations_feasible_corner():
    rep = violations(lookup("rosenbrock_constrained"), (1, 1))
    assert rep.satisfied_count == 2 and rep.total_count == 2
    assert rep.inequality_excess == (0.0, 0.0)


def test_violations_rosenbrock_infeasible():
    rep = violations(lookup("rosenbrock_constrained"), (1.5, 2.5))
    # g1 = 0.125 - 2.5 + 1 < 0, g2 = 1.5 + 2.5 - 2 = 2
    assert rep.inequality_excess == (0.0, 2.0)
    assert rep.satisfied_count == 1


def test_violations_pressure_vessel():
    rep = violations(lookup("pressure_vessel"), (1, 1, 10, 10))
    g3 = 1296000 - math.pi * 100 * 10 - (4 / 3) * math.pi * 1000
    assert rep.inequality_excess[0] == 0.0  # -1 + 0.193
    assert rep.inequality_excess[1] == 0.0
    assert rep.inequality_excess[2] == pytest.approx(g3, rel=1e-14)
    assert rep.inequality_excess[3] == 0.0
    assert rep.satisfied_count == 3
    assert rep.relative_excess()[2] == pytest.approx(g3 / 1296000)


@settings(max_examples=200)
@given(st.sampled_from(["rosenbrock_constrained", "pressure_vessel", "spring"]), st.integers(0, 2**31))
def test_violation_counts_are_consistent(name, seed):
    spec = lookup(name)
    x = RngStream(seed).uniform_in(spec.bounds, 1)[0]
    rep = violations(spec, x)
    positive = sum(1 for e in rep.inequality_excess + rep.equality_excess if e > 0)
    assert rep.satisfied_count + positive == rep.total_count
    assert all(e >= 0 for e in rep.inequality_excess)


def test_additive_wrap_examples():
    spec = lookup("rosenbrock_constrained")
    F = additive_penalty_wrap(spec, PenaltyWeights((1.0, 1.0)))
    assert not F.constrained
    assert F((1, 1)) == 0.0
    # f = 1 + 100 * 4, g1 = -1 - 2 + 1 < 0, g2 = 0
    assert F((0, 2)) == 401.0


def test_additive_wrap_weight_mismatch():
    with pytest.raises(ParameterError):
        additive_penalty_wrap(lookup("rosenbrock_constrained"), PenaltyWeights((1.0,)))
    with pytest.raises(ParameterError):
        additive_penalty_wrap(lookup("sphere"))
    with pytest.raises(ParameterError):
        PenaltyWeights((1.0, 0.0))


@settings(max_examples=200)
@given(st.integers(0, 2**31))
def test_additive_wrap_monotone_in_weights(seed):
    spec = lookup("rosenbrock_constrained")
    x = RngStream(seed).uniform_in(spec.bounds, 1)[0]
    F1 = additive_penalty_wrap(spec, PenaltyWeights((1.0, 1.0)))
    F2 = additive_penalty_wrap(spec, PenaltyWeights((2.0, 2.0)))
    assert F2(x) >= F1(x)
    if violations(spec, x).feasible:
        assert F1(x) == evaluate(spec, x)


def test_static_wrap_examples():
    spec = lookup("pressure_vessel")
    F = static_penalty_wrap(spec, 1e9)
    x = (1.5, 1.0, 60.0, 200.0)
    assert violations(spec, x).feasible
    assert F(x) == evaluate(spec, x)
    # g1..g4 all violated outside the box
    assert violations(spec, (-1, -1, 10, 300)).satisfied_count == 0
    assert F((-1, -1, 10, 300)) == 1e9
    assert F((1, 1, 10, 10)) == 2.5e8


def test_static_wrap_decreasing_in_satisfied_count():
    spec = lookup("pressure_vessel")
    F = static_penalty_wrap(spec)
    points = {0: (-1, -1, 10, 300), 1: (-1, -1, 10, 200), 2: (1, -1, 10, 200), 3: (1, 1, 10, 200)}
    values = []
    for s, x in points.items():
        assert violations(spec, x).satisfied_count == s
        values.append(F(x))
    assert all(a > b > 0 for a, b in zip(values, values[1:]))


def test_static_wrap_rejects_bad_K():
    with pytest.raises(ParameterError):
        static_penalty_wrap(lookup("pressure_vessel"), 0)


def test_as_objective_accepts_callables():
    spec = as_objective(lambda x: float(np.sum((x - 1) ** 2)), [(-2, 2), (-2, 2), (-2, 2)])
    assert spec.arity == 3
    assert spec(np.ones(3)) == 0.0
    with pytest.raises(ParameterError):
        as_objective(lambda x: 0.0)
