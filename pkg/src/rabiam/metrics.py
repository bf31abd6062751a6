"""Error norms, period, transfer and spectral estimates for trajectories.

These functions only measure; deciding whether two methods "agree" is left
to the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy.signal import find_peaks

from .errors import DomainError, IrrationalRatioError, NoOscillationError, ResonanceError
from .params import SystemParams
from .trajectory import Trajectory

#: Ranges of P1 below this count as "no oscillation".
MIN_RANGE = 1e-6
#: Maxima must rise this fraction of the signal range above their surroundings.
PEAK_PROMINENCE = 0.25
MIN_SPECTRUM_SAMPLES = 256
_FLAT_SPECTRUM = 1e-9
_MAIN_LOBE_BINS = 3


@dataclass(frozen=True)
class ComparisonReport:
    """Pairwise comparison of two trajectories on the same grid.

    Period and dominant-frequency fields are ``None`` when the corresponding
    signal does not oscillate (or is too short for a spectrum).
    """

    max_abs_err: float
    rms_err: float
    period_a: Optional[float]
    period_b: Optional[float]
    max_transfer_a: float
    max_transfer_b: float
    dominant_freq_a: Optional[float]
    dominant_freq_b: Optional[float]


def _uniform_step(times) -> float:
    times = np.asarray(times, dtype=float)
    if times.size < 3:
        raise DomainError("need at least three samples")
    steps = np.diff(times)
    dt = (times[-1] - times[0]) / (times.size - 1)
    if not np.allclose(steps, dt, rtol=1e-6, atol=0):
        raise DomainError("time grid must be uniform")
    return dt


def _parabolic(y_left, y_mid, y_right):
    """Vertex offset (in samples) and height of the parabola through three points."""
    denom = y_left - 2.0 * y_mid + y_right
    if denom == 0:
        return 0.0, y_mid
    delta = 0.5 * (y_left - y_right) / denom
    return delta, y_mid - 0.25 * (y_left - y_right) * delta


def estimate_period(times, p1) -> float:
    """Mean spacing of successive maxima of ``p1``.

    Each maximum is refined by a three-point parabola.  Maxima less prominent
    than a quarter of the signal range are ignored, so fast small ripple
    riding on a slow oscillation does not count.

    Raises
    ------
    NoOscillationError
        If the range of ``p1`` is below ``MIN_RANGE`` or fewer than two
        maxima are found.
    """
    dt = _uniform_step(times)
    p1 = np.asarray(p1, dtype=float)
    span = float(np.ptp(p1))
    if span < MIN_RANGE:
        raise NoOscillationError(f"P1 range {span:.2e} is below {MIN_RANGE:g}")
    idx, _ = find_peaks(p1, prominence=PEAK_PROMINENCE * span)
    if idx.size < 2:
        raise NoOscillationError(f"found {idx.size} maxima, need at least 2")
    t = np.asarray(times, dtype=float)
    peaks = [t[i] + _parabolic(p1[i - 1], p1[i], p1[i + 1])[0] * dt for i in idx]
    return (peaks[-1] - peaks[0]) / (len(peaks) - 1)


def _spectrum(times, p1):
    dt = _uniform_step(times)
    p1 = np.asarray(p1, dtype=float)
    if p1.size < MIN_SPECTRUM_SAMPLES:
        raise DomainError(f"need at least {MIN_SPECTRUM_SAMPLES} samples, got {p1.size}")
    w = np.blackman(p1.size)
    mean = np.dot(p1, w) / w.sum()
    mag = np.abs(np.fft.rfft((p1 - mean) * w)) / w.sum()
    mag[0] = 0.0
    return mag, dt


def dominant_frequency(times, p1) -> float:
    """Frequency (cycles per unit time) of the strongest non-DC spectral line.

    The signal is windowed (Blackman) after removing its weighted mean, and
    the peak bin is refined by a parabola through the log magnitudes.
    """
    mag, dt = _spectrum(times, p1)
    k = int(np.argmax(mag))
    if mag[k] < _FLAT_SPECTRUM:
        raise NoOscillationError("spectrum is flat")
    delta = 0.0
    if 1 <= k < mag.size - 1 and np.all(mag[k - 1:k + 2] > 0):
        delta, _ = _parabolic(*np.log(mag[k - 1:k + 2]))
    n = np.asarray(p1).size
    return (k + delta) / (n * dt)


def secondary_peak_ratio(times, p1) -> float:
    """Height of the largest spectral peak outside the main lobe, relative to the main peak.

    Returns 0 for a single-tone signal.
    """
    mag, _ = _spectrum(times, p1)
    k0 = int(np.argmax(mag))
    if mag[k0] < _FLAT_SPECTRUM:
        raise NoOscillationError("spectrum is flat")
    inner = mag[1:-1]
    is_peak = (inner > mag[:-2]) & (inner >= mag[2:])
    ks = np.flatnonzero(is_peak) + 1
    ks = ks[np.abs(ks - k0) > _MAIN_LOBE_BINS]
    if ks.size == 0:
        return 0.0
    return float(mag[ks].max() / mag[k0])


def max_transfer(traj: Trajectory) -> float:
    """Largest upper-level population, refined by a parabola at the peak."""
    p2 = traj.p2
    k = int(np.argmax(p2))
    if 0 < k < p2.size - 1:
        return float(_parabolic(p2[k - 1], p2[k], p2[k + 1])[1])
    return float(p2[k])


def _or_none(fn, *args):
    try:
        return fn(*args)
    except (NoOscillationError, DomainError):
        return None


def compare(traj_a: Trajectory, traj_b: Trajectory) -> ComparisonReport:
    if traj_a.times.shape != traj_b.times.shape or not np.array_equal(traj_a.times, traj_b.times):
        raise DomainError("trajectories must share the same time grid")
    diff = np.abs(traj_a.p1 - traj_b.p1)
    return ComparisonReport(
        max_abs_err=float(diff.max()),
        rms_err=float(math.sqrt(np.mean(diff ** 2))),
        period_a=_or_none(estimate_period, traj_a.times, traj_a.p1),
        period_b=_or_none(estimate_period, traj_b.times, traj_b.p1),
        max_transfer_a=max_transfer(traj_a),
        max_transfer_b=max_transfer(traj_b),
        dominant_freq_a=_or_none(dominant_frequency, traj_a.times, traj_a.p1),
        dominant_freq_b=_or_none(dominant_frequency, traj_b.times, traj_b.p1),
    )


def lcm_period(delta: float, sigma: float, max_denominator: int = 10 ** 6) -> float:
    """Least common multiple of ``2 pi/|delta|`` and ``2 pi/|sigma|``.

    Raises
    ------
    IrrationalRatioError
        If ``|sigma/delta| = p/q`` fails with ``q <= max_denominator``: the
        sigma term may drift by at most 1e-9 cycles (relative to ``p``) over
        the returned window.
    """
    if delta == 0.0 or sigma == 0.0:
        raise ResonanceError("both frequencies must be non-zero")
    ratio = abs(sigma / delta)
    frac = Fraction(ratio).limit_denominator(max_denominator)
    if abs(frac.denominator * ratio - frac.numerator) > 1e-9 * max(1.0, ratio):
        raise IrrationalRatioError(f"frequency ratio {ratio!r} has no small rational form")
    # sigma/delta = p/q  =>  q T_delta = p T_sigma
    return frac.denominator * 2.0 * math.pi / abs(delta)


def common_period(params: SystemParams, max_denominator: int = 10 ** 6) -> float:
    """Shortest window over which both the Delta and Sigma terms are periodic."""
    if params.Delta == 0.0:
        raise ResonanceError("common period needs Delta != 0")
    return lcm_period(params.Delta, params.Sigma, max_denominator)
