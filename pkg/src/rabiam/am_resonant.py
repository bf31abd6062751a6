"""First- and second-order averaging at resonance (omega = Omega).

At Delta = 0 the field splits into a constant part ``i (Omega_R/2) sigma_x``
and a part oscillating at ``2 omega``.  The averaged vectors evolve under
constant generators

    G1 = i (Omega_R/2) sigma_x
    G2 = i (Omega_R/2) sigma_x + i (Omega_R/2)**2 / (2 omega) sigma_z

G2 is the mean of ``fbar + ftilde' w - w' fbar`` over one period of
``2 omega``: the ``ftilde' w`` product is the constant sigma_z term and the
commutator with ``fbar`` oscillates as ``cos(2 omega t)``, which is what
``U(t)`` integrates.  Its eigenvalues are ``+-i B``.
"""

from __future__ import annotations

import math

import numpy as np

from ._linalg import invert_near_identity, stack2x2
from .errors import DomainError
from .params import InitialState
from .trajectory import MethodKind, Trajectory, time_grid


def _check(omega, Omega_R):
    if not (omega > 0 and Omega_R > 0):
        raise DomainError(f"omega and Omega_R must be positive, got {omega!r}, {Omega_R!r}")


def resonant_frequency_B(Omega_R: float, omega: float) -> float:
    """Oscillation frequency of the second-order averaged amplitudes."""
    _check(omega, Omega_R)
    q = (0.5 * Omega_R) ** 2
    return math.sqrt((q / (2.0 * omega)) ** 2 + q)


def averaged_generator(omega: float, Omega_R: float, order: int) -> np.ndarray:
    _check(omega, Omega_R)
    g = 0.5j * Omega_R * np.array([[0, 1], [1, 0]], dtype=complex)
    if order == 2:
        g = g + 1j * (0.5 * Omega_R) ** 2 / (2.0 * omega) * np.diag([1.0, -1.0])
    elif order != 1:
        raise ValueError(f"order must be 1 or 2, got {order}")
    return g


def transform_w_resonant(omega: float, Omega_R: float, t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    c = Omega_R / (4.0 * omega)
    zero = np.zeros_like(t)
    return stack2x2(zero, -c * np.exp(-2j * omega * t), c * np.exp(2j * omega * t), zero)


def transform_u_resonant(omega: float, Omega_R: float, t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    u = 1j * (0.5 * Omega_R) ** 2 / (2.0 * omega ** 2) * np.sin(2.0 * omega * t)
    zero = np.zeros_like(t)
    return stack2x2(u, zero, zero, -u)


def _evolve(generator: np.ndarray, z0: np.ndarray, t: np.ndarray) -> np.ndarray:
    """``exp(G t) z0`` for ``G = i (a sigma_x + b sigma_z)`` with real a, b."""
    a = generator[0, 1].imag
    b = generator[0, 0].imag
    freq = math.hypot(a, b)
    c = np.cos(freq * t)[:, None]
    s = (np.sin(freq * t) / freq)[:, None]
    hz = np.array([a * z0[1] + b * z0[0], a * z0[0] - b * z0[1]])
    return c * z0 + 1j * s * hz


def am1_resonant_solve(omega: float, Omega_R: float, init: InitialState, times) -> Trajectory:
    """First-order resonant solution ``x(t) = (I + W(t)) y(t)``.

    ``y`` oscillates at ``Omega_R / 2``.
    """
    _check(omega, Omega_R)
    t = time_grid(times)
    y0 = invert_near_identity(transform_w_resonant(omega, Omega_R, 0.0), init.as_array())
    y = _evolve(averaged_generator(omega, Omega_R, 1), y0, t)
    x = y + np.einsum("nij,nj->ni", transform_w_resonant(omega, Omega_R, t), y)
    return Trajectory(MethodKind.AM1_R, t, x)


def am2_resonant_solve(omega: float, Omega_R: float, init: InitialState, times) -> Trajectory:
    """Second-order resonant solution ``x(t) = (I + W(t) + U(t)) z(t)``.

    ``z`` oscillates at :func:`resonant_frequency_B`.  Since ``U(0) = 0`` the
    initial inversion only involves ``W(0)``.
    """
    _check(omega, Omega_R)
    t = time_grid(times)
    m0 = transform_w_resonant(omega, Omega_R, 0.0) + transform_u_resonant(omega, Omega_R, 0.0)
    z0 = invert_near_identity(m0, init.as_array())
    z = _evolve(averaged_generator(omega, Omega_R, 2), z0, t)
    m = transform_w_resonant(omega, Omega_R, t) + transform_u_resonant(omega, Omega_R, t)
    x = z + np.einsum("nij,nj->ni", m, z)
    return Trajectory(MethodKind.AM2_R, t, x)
