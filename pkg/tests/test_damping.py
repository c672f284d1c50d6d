import csv
import io
import math
import zlib

import numpy as np
import pytest

from dampswarm.core import ParameterError
from dampswarm.damping import (
    OscillatorParams,
    Regime,
    classify_regime,
    curve_to_csv,
    position,
    sample_curve,
)


def random_params(regime, rng):
    m = rng.uniform(0.1, 5)
    k = rng.uniform(0.5, 50)
    omega0 = math.sqrt(k / m)
    if regime is Regime.UNDERDAMPED:
        c = 2 * m * rng.uniform(0, 0.95) * omega0
    elif regime is Regime.OVERDAMPED:
        c = 2 * m * rng.uniform(1.05, 3) * omega0
    else:
        c = 2 * math.sqrt(k * m)
    return OscillatorParams(m, c, k, rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-math.pi, math.pi))


def ode_residual(p, t, h=1e-5):
    x0, xp, xm = position(p, t), position(p, t + h), position(p, t - h)
    d1 = (xp - xm) / (2 * h)
    d2 = (xp - 2 * x0 + xm) / h**2
    return p.mass * d2 + p.damping * d1 + p.stiffness * x0


@pytest.mark.parametrize(
    "m, k, c, expected",
    [(1, 1, 4, Regime.OVERDAMPED), (1, 1, 2, Regime.CRITICAL), (1, 1, 0.2, Regime.UNDERDAMPED)],
)
def test_classify(m, k, c, expected):
    assert classify_regime(OscillatorParams(m, c, k)) is expected


def test_classify_scale_invariant():
    rng = np.random.default_rng(0)
    for regime in Regime:
        for _ in range(50):
            p = random_params(regime, rng)
            s = rng.uniform(0.01, 100)
            q = OscillatorParams(s * p.mass, s * p.damping, s * p.stiffness)
            assert classify_regime(q) is classify_regime(p) is regime


def test_figure_parameters_are_all_underdamped():
    # m=0.1, k=100 gives omega0 ~ 31.6, above every gamma in {10, 6, 2}
    for gamma in (10, 6, 2):
        p = OscillatorParams(0.1, 2 * 0.1 * gamma, 100)
        assert classify_regime(p) is Regime.UNDERDAMPED


def test_position_at_zero():
    assert position(OscillatorParams(1, 0.2, 1, amp_A=1.7), 0) == pytest.approx(1.7)
    assert position(OscillatorParams(1, 2, 1, amp_A=-0.3, amp_B=5), 0) == pytest.approx(-0.3)


def test_undamped_limit_is_cosine():
    assert position(OscillatorParams(1, 0, 1, amp_A=1), math.pi) == pytest.approx(-1.0, abs=1e-15)


def test_overdamped_roots_negative():
    p = OscillatorParams(1, 4, 1)
    l1, l2 = p.roots
    assert l1 < 0 and l2 < 0 and l1 != l2
    assert l1 == pytest.approx(-2 + math.sqrt(3))
    assert math.isnan(p.omega_d)


@pytest.mark.parametrize("regime", list(Regime))
def test_ode_residual(regime):
    rng = np.random.default_rng(zlib.crc32(regime.value.encode()))
    for _ in range(100):
        p = random_params(regime, rng)
        assert classify_regime(p) is regime
        for t in rng.uniform(0.1, 5, 20):
            assert abs(ode_residual(p, t)) <= 1e-4 * max(1, p.stiffness * abs(p.amp_A))


@pytest.mark.parametrize("regime", [Regime.OVERDAMPED, Regime.CRITICAL])
def test_no_oscillation_without_underdamping(regime):
    rng = np.random.default_rng(1)
    for _ in range(20):
        p = random_params(regime, rng)
        p = OscillatorParams(p.mass, p.damping, p.stiffness, abs(p.amp_A) + 0.01, abs(p.amp_B))
        t = np.linspace(0, 10 / p.gamma, 10_000)
        assert np.all(position(p, t) > 0)


def test_sample_curve_endpoints_and_bounds():
    p = OscillatorParams(1, 0, 4, amp_A=2)
    pts = sample_curve(p, 0, 3, 2)
    assert [t for t, _ in pts] == [0.0, 3.0]
    pts = sample_curve(p, 0, 10, 500)
    assert len(pts) == 500
    assert all(abs(x) <= 2 for _, x in pts)


def test_underdamped_envelope():
    p = OscillatorParams(0.1, 2 * 0.1 * 2, 100, amp_A=1.5, phase=0.3)
    for t, x in sample_curve(p, 0, 5, 1000):
        assert abs(x) <= 1.5 * math.exp(-p.gamma * t) + 1e-12


@pytest.mark.parametrize("args", [(1, 1, 5), (0, 1, 1), (-1, 1, 5)])
def test_sample_curve_rejects_bad_range(args):
    with pytest.raises(ParameterError):
        sample_curve(OscillatorParams(1, 0.1, 1), *args)


def test_from_rates():
    p = OscillatorParams.from_rates(gamma=3, omega0=5)
    assert p.gamma == pytest.approx(3) and p.omega0 == pytest.approx(5)
    assert classify_regime(p) is Regime.UNDERDAMPED


def test_curve_csv():
    text = curve_to_csv(sample_curve(OscillatorParams(1, 0.5, 1), 0, 1, 3))
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["t", "x"]
    assert len(rows) == 4
    assert float(rows[3][0]) == 1.0
