import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import detuned, grid, reference
from rabiam.errors import DomainError, IrrationalRatioError, NoOscillationError, ResonanceError
from rabiam.metrics import (
    common_period,
    compare,
    dominant_frequency,
    estimate_period,
    lcm_period,
    max_transfer,
    secondary_peak_ratio,
)
from rabiam.params import GROUND, params_from_frequencies, params_resonant
from rabiam.rwa import rwa_probabilities_ground, rwa_propagate, rwa_summary, strong_field_propagate
from rabiam.trajectory import MethodKind, Trajectory


def rwa_params(Omega_R, Delta, Sigma=60.0):
    return params_from_frequencies(0.5 * (Sigma + Delta), 0.5 * (Sigma - Delta), Omega_R)


def p1_trajectory(t, p1):
    p1 = np.asarray(p1, dtype=float)
    return Trajectory(MethodKind.RWA, t, np.column_stack([np.sqrt(p1), np.sqrt(1 - p1)]))


def test_compare_identical():
    p = rwa_params(1.0, 0.5)
    tr = rwa_propagate(p, GROUND, np.linspace(0, 40, 1001))
    rep = compare(tr, tr)
    assert rep.max_abs_err == 0 and rep.rms_err == 0
    assert rep.period_a == rep.period_b
    assert rep.max_transfer_a == rep.max_transfer_b


def test_compare_against_closed_form():
    p = rwa_params(1.0, 0.7)
    t = np.linspace(0, 60, 2001)
    tr = rwa_propagate(p, GROUND, t)
    assert compare(tr, p1_trajectory(t, rwa_probabilities_ground(p, t)[0])).max_abs_err < 1e-10


def test_compare_small_eps_regime():
    ref = reference("detuned", 0.1, 0.01)
    rwa = rwa_propagate(detuned(0.1, 0.01), GROUND, ref.times)
    assert compare(ref, rwa).max_abs_err < 0.02


def test_compare_rejects_grid_mismatch():
    p = rwa_params(1.0, 0.5)
    a = rwa_propagate(p, GROUND, np.linspace(0, 10, 101))
    b = rwa_propagate(p, GROUND, np.linspace(0, 10, 102))
    with pytest.raises(DomainError):
        compare(a, b)


@given(st.floats(0.1, 5), st.floats(-5, 5), st.floats(0, 3))
def test_compare_symmetric_and_bounded(Omega_R, Delta, phase):
    from rabiam.params import prepared_state
    p = rwa_params(Omega_R, Delta)
    t = np.linspace(0, 30, 512)
    a = rwa_propagate(p, GROUND, t)
    b = rwa_propagate(p, prepared_state(phase, 0.0), t)
    ab, ba = compare(a, b), compare(b, a)
    assert (ab.max_abs_err, ab.rms_err) == (ba.max_abs_err, ba.rms_err)
    assert 0 <= ab.rms_err <= ab.max_abs_err <= 1


def test_compare_flags_missing_oscillation():
    t = np.linspace(0, 10, 300)
    flat = p1_trajectory(t, np.full(t.size, 0.5))
    rep = compare(flat, flat)
    assert rep.period_a is None and rep.dominant_freq_a is None


def test_period_of_known_signal():
    t = np.linspace(0, 20, 20001)
    assert estimate_period(t, np.sin(t) ** 2) == pytest.approx(math.pi, abs=1e-4)


def test_period_of_rwa():
    p = rwa_params(3, 4)
    t = np.linspace(0, 10 * rwa_summary(p).period, 2001)
    assert estimate_period(t, rwa_propagate(p, GROUND, t).p1) == pytest.approx(2 * math.pi / 5, rel=1e-3)


def test_period_of_constant_signal():
    t = np.linspace(0, 10, 1000)
    with pytest.raises(NoOscillationError):
        estimate_period(t, np.full(t.size, 0.5))


def test_period_needs_two_maxima():
    t = np.linspace(0, 4, 1000)
    with pytest.raises(NoOscillationError):
        estimate_period(t, np.sin(t))


def test_period_rejects_nonuniform_grid():
    t = np.linspace(0, 10, 100) ** 2
    with pytest.raises(DomainError):
        estimate_period(t, np.sin(t))


def test_period_ignores_small_ripple():
    t = np.linspace(0, 40, 40001)
    p1 = np.cos(t / 2) ** 2 + 0.02 * np.sin(60 * t)
    assert estimate_period(t, p1) == pytest.approx(2 * math.pi, rel=1e-3)


def test_rwa_period_and_transfer_across_random_parameters(rng):
    for _ in range(20):
        p = rwa_params(rng.uniform(0.2, 3), rng.uniform(-4, 4))
        s = rwa_summary(p)
        t = np.linspace(0, 8 * s.period, 4001)
        p1 = rwa_probabilities_ground(p, t)[0]
        assert estimate_period(t, p1) == pytest.approx(s.period, rel=1e-3)
        assert max_transfer(rwa_propagate(p, GROUND, t)) == pytest.approx(s.max_transfer, abs=1e-4)


def test_dominant_frequency_of_sine():
    t = np.arange(1000) / 100
    assert dominant_frequency(t, np.sin(2 * math.pi * 5 * t)) == pytest.approx(5, abs=0.02)


def test_dominant_frequency_of_rwa():
    p = rwa_params(1.0, 0.8)
    s = rwa_summary(p)
    t = np.linspace(0, 10 * s.period, 2001)
    assert dominant_frequency(t, rwa_propagate(p, GROUND, t).p1) == pytest.approx(1 / s.period, rel=0.01)
    assert secondary_peak_ratio(t, rwa_propagate(p, GROUND, t).p1) < 0.01


def test_nrwa_spectrum_is_richer_at_strong_coupling():
    ref = reference("resonant", 0.9, periods=10)
    f0 = 1 / (2 * math.pi)
    f = dominant_frequency(ref.times, ref.p1)
    assert abs(f - f0) / f0 > 0.01
    assert secondary_peak_ratio(ref.times, ref.p1) > 0.01


@given(st.floats(-100, 100))
def test_dominant_frequency_offset_invariance(offset):
    t = np.linspace(0, 30, 1500)
    p1 = np.cos(0.9 * t) ** 2 + 0.1 * np.sin(3.1 * t)
    assert dominant_frequency(t, p1 + offset) == pytest.approx(dominant_frequency(t, p1), rel=1e-9)


def test_dominant_frequency_preconditions():
    t = np.linspace(0, 10, 100)
    with pytest.raises(DomainError):
        dominant_frequency(t, np.sin(5 * t))
    t = np.linspace(0, 10, 1000)
    with pytest.raises(NoOscillationError):
        dominant_frequency(t, np.full(t.size, 0.3))


def test_max_transfer_examples():
    p = rwa_params(1.0, 1.0)
    t = np.linspace(0, 3 * rwa_summary(p).period, 3001)
    assert max_transfer(rwa_propagate(p, GROUND, t)) == pytest.approx(0.5, abs=1e-6)
    p = rwa_params(1.0, 2.0)
    t = np.linspace(0, 3 * rwa_summary(p).period, 3001)
    assert max_transfer(rwa_propagate(p, GROUND, t)) == pytest.approx(0.2, abs=1e-6)
    t = np.linspace(0, 10, 2001)
    assert max_transfer(strong_field_propagate(params_resonant(1, 0.1), GROUND, t)) == pytest.approx(1, abs=1e-6)


def test_common_period_examples():
    assert common_period(params_from_frequencies(51, 49, 1)) == pytest.approx(math.pi, rel=1e-15)
    assert common_period(params_from_frequencies(2, 1, 1)) == pytest.approx(2 * math.pi, rel=1e-15)
    assert lcm_period(1.7, 1.7) == pytest.approx(2 * math.pi / 1.7, rel=1e-15)
    assert common_period(params_from_frequencies(49, 51, 1)) == pytest.approx(math.pi, rel=1e-15)


def test_common_period_errors():
    with pytest.raises(ResonanceError):
        common_period(params_resonant(1, 0.1))
    with pytest.raises(IrrationalRatioError):
        lcm_period(1.0, math.sqrt(2))


@given(st.integers(1, 50), st.integers(1, 50), st.floats(0.1, 10))
def test_common_period_is_a_multiple_of_both(m, n, scale):
    T = lcm_period(m * scale, n * scale)
    for freq in (m * scale, n * scale):
        cycles = T * freq / (2 * math.pi)
        assert cycles == pytest.approx(round(cycles), abs=1e-9)
    assert T == pytest.approx(2 * math.pi / (math.gcd(m, n) * scale), rel=1e-12)
