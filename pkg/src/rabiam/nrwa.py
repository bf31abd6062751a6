"""Fixed-step integration of the full (no-RWA) amplitude equations.

The system is ``dx/dt = i A(t) x`` with the Hermitian coupling

    A(t) = (Omega_R/2) [[0, e^{i Delta t} + e^{-i Sigma t}],
                        [e^{-i Delta t} + e^{i Sigma t}, 0]].

Because it is linear, one step of either scheme is a 2x2 matrix that
depends only on the step start time and length.  Step matrices are built
in vectorized chunks and applied to the state in a scalar loop.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConvergenceError, DomainError, IntegrationDivergedError
from .params import InitialState, SystemParams
from .trajectory import MethodKind, Trajectory

#: Default number of steps per period of the fastest frequency.
STEPS_PER_CYCLE = 200
#: Coarsest accepted resolution; anything below is rejected outright.
MIN_STEPS_PER_CYCLE = 8
_CHUNK = 65536

SCHEMES = ("rk4", "trapezoid")


@dataclass(frozen=True)
class IntegratorConfig:
    """Step scheme, step size (``None`` means :func:`default_dt`) and norm guard."""

    scheme: str = "rk4"
    dt: Optional[float] = None
    norm_tolerance: float = 1e-5

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise DomainError(f"unknown scheme {self.scheme!r}; expected one of {SCHEMES}")
        if self.dt is not None and not self.dt > 0:
            raise DomainError(f"dt must be positive, got {self.dt!r}")
        if not self.norm_tolerance > 0:
            raise DomainError(f"norm_tolerance must be positive, got {self.norm_tolerance!r}")


def fastest_period(params: SystemParams) -> float:
    periods = [2 * math.pi / params.Sigma, 2 * math.pi / params.Omega_R]
    if params.Delta != 0:
        periods.append(2 * math.pi / abs(params.Delta))
    return min(periods)


def default_dt(params: SystemParams) -> float:
    return fastest_period(params) / STEPS_PER_CYCLE


def coupling(params: SystemParams, t):
    """Upper off-diagonal entry of ``A(t)``; the lower one is its conjugate."""
    t = np.asarray(t, dtype=float)
    return 0.5 * params.Omega_R * (np.exp(1j * params.Delta * t) + np.exp(-1j * params.Sigma * t))


def coupling_matrix(params: SystemParams, t) -> np.ndarray:
    """The Hermitian matrix ``A(t)``."""
    a = complex(coupling(params, t))
    return np.array([[0, a], [a.conjugate(), 0]], dtype=complex)


def nrwa_rhs(params: SystemParams, t: float, state) -> np.ndarray:
    """Time derivative ``i A(t) x`` of the amplitude pair ``state``."""
    x = np.asarray(state, dtype=complex)
    a = complex(coupling(params, t))
    return np.array([1j * a * x[1], 1j * a.conjugate() * x[0]])


def _generator(a: np.ndarray) -> np.ndarray:
    """Stack of ``i A`` for a stack of coupling values."""
    g = np.zeros(a.shape + (2, 2), dtype=complex)
    g[:, 0, 1] = 1j * a
    g[:, 1, 0] = 1j * np.conj(a)
    return g


def _rk4_matrices(params, t0, h):
    eye = np.eye(2)
    g0 = _generator(coupling(params, t0))
    gm = _generator(coupling(params, t0 + 0.5 * h))
    g1 = _generator(coupling(params, t0 + h))
    hh = h[:, None, None]
    k1 = g0
    k2 = gm @ (eye + 0.5 * hh * k1)
    k3 = gm @ (eye + 0.5 * hh * k2)
    k4 = g1 @ (eye + hh * k3)
    return eye + hh / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _trapezoid_matrices(params, t0, h):
    # (I - h/2 G(t+h)) x' = (I + h/2 G(t)) x, inverted in closed form
    a0 = coupling(params, t0)
    a1 = coupling(params, t0 + h)
    q = 0.5j * h
    rhs = np.empty(a0.shape + (2, 2), dtype=complex)
    rhs[:, 0, 0] = rhs[:, 1, 1] = 1.0
    rhs[:, 0, 1] = q * a0
    rhs[:, 1, 0] = q * np.conj(a0)
    inv = np.empty_like(rhs)
    det = 1.0 + (0.5 * h) ** 2 * np.abs(a1) ** 2
    inv[:, 0, 0] = inv[:, 1, 1] = 1.0 / det
    inv[:, 0, 1] = q * a1 / det
    inv[:, 1, 0] = q * np.conj(a1) / det
    return inv @ rhs


_STEPPERS = {"rk4": _rk4_matrices, "trapezoid": _trapezoid_matrices}


def _substeps(times: np.ndarray, dt: float):
    """Start times and lengths of the steps covering every output interval.

    Each interval is split into the fewest equal steps no longer than ``dt``,
    so output times are hit exactly.
    """
    lengths = np.diff(times)
    counts = np.maximum(1, np.ceil(lengths / dt - 1e-9).astype(np.int64))
    h = np.repeat(lengths / counts, counts)
    first = np.repeat(np.cumsum(counts) - counts, counts)
    j = np.arange(h.size) - first
    starts = np.repeat(times[:-1], counts) + j * h
    return starts, h, np.cumsum(counts)


def integrate(
    params: SystemParams,
    init,
    t_end: float,
    config: Optional[IntegratorConfig] = None,
    times=None,
) -> Trajectory:
    """Integrate the full equations from t = 0 to ``t_end``.

    Parameters
    ----------
    params : SystemParams
    init : InitialState or array-like
        Amplitudes at t = 0.  Arrays need not be normalized; the norm guard
        then measures drift relative to the initial norm.
    t_end : float
        Final time.
    config : IntegratorConfig, optional
    times : array-like, optional
        Output grid starting at 0 and ending at ``t_end``.  Defaults to one
        sample per step.

    Raises
    ------
    IntegrationDivergedError
        If ``| |x(t)|^2 - |x(0)|^2 |`` exceeds ``config.norm_tolerance`` at
        any output time.
    """
    config = config or IntegratorConfig()
    if not t_end > 0:
        raise DomainError(f"t_end must be positive, got {t_end!r}")
    dt = config.dt if config.dt is not None else default_dt(params)
    if dt > fastest_period(params) / MIN_STEPS_PER_CYCLE:
        raise DomainError(
            f"dt={dt:g} under-resolves the fastest period {fastest_period(params):g}"
        )
    if times is None:
        n = max(1, math.ceil(t_end / dt - 1e-9))
        times = np.linspace(0.0, t_end, n + 1)
    else:
        times = np.asarray(times, dtype=float)
        if times.ndim != 1 or times.size < 2 or times[0] != 0.0:
            raise DomainError("output grid must start at 0 and contain at least two times")
        if not np.all(np.diff(times) > 0):
            raise DomainError("output grid must be strictly increasing")
        if not math.isclose(times[-1], t_end, rel_tol=1e-12):
            raise DomainError(f"output grid ends at {times[-1]!r}, expected t_end={t_end!r}")

    x0 = init.as_array() if isinstance(init, InitialState) else np.asarray(init, dtype=complex)
    starts, h, emit_after = _substeps(times, dt)
    stepper = _STEPPERS[config.scheme]

    out = np.empty((times.size, 2), dtype=complex)
    out[0] = x0
    x1, x2 = complex(x0[0]), complex(x0[1])
    emit = emit_after.tolist()
    k = 0
    step = 0
    for lo in range(0, h.size, _CHUNK):
        m = stepper(params, starts[lo:lo + _CHUNK], h[lo:lo + _CHUNK])
        m11, m12 = m[:, 0, 0].tolist(), m[:, 0, 1].tolist()
        m21, m22 = m[:, 1, 0].tolist(), m[:, 1, 1].tolist()
        for j in range(len(m11)):
            x1, x2 = m11[j] * x1 + m12[j] * x2, m21[j] * x1 + m22[j] * x2
            step += 1
            if step == emit[k]:
                k += 1
                out[k] = (x1, x2)
                if k == len(emit):
                    break

    method = MethodKind.NRWA if config.scheme == "rk4" else MethodKind.NRWA_TRAPEZOID
    traj = Trajectory(method, times, out)
    norm0 = float(np.sum(np.abs(x0) ** 2))
    drift = np.abs(traj.norm2 - norm0)
    bad = np.flatnonzero(drift > config.norm_tolerance)
    if bad.size:
        i = int(bad[0])
        raise IntegrationDivergedError(float(times[i]), float(drift[i]), config.norm_tolerance)
    return traj


def norm_drift(traj: Trajectory) -> float:
    """Largest deviation of ``|c1|^2 + |c2|^2`` from 1 over the grid."""
    return float(np.max(np.abs(traj.norm2 - 1.0)))


def converged_reference(
    params: SystemParams,
    init,
    times,
    scheme: str = "rk4",
    tol: float = 1e-8,
    dt: Optional[float] = None,
    max_halvings: int = 6,
) -> Trajectory:
    """Halve the step until P1 changes by less than ``tol`` on ``times``.

    Returns the finer trajectory of the last compared pair.
    """
    times = np.asarray(times, dtype=float)
    dt = dt if dt is not None else default_dt(params)
    prev = integrate(params, init, times[-1], IntegratorConfig(scheme, dt), times)
    for _ in range(max_halvings):
        dt *= 0.5
        cur = integrate(params, init, times[-1], IntegratorConfig(scheme, dt), times)
        if np.max(np.abs(cur.p1 - prev.p1)) < tol:
            return cur
        prev = cur
    change = float(np.max(np.abs(cur.p1 - prev.p1)))
    raise ConvergenceError(f"P1 still changes by {change:.2e} after {max_halvings} halvings")
