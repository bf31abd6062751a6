"""First- and second-order averaging away from resonance (Delta != 0).

The amplitude equation is already in standard form with zero mean, so the
averaged first-order vector ``y`` is constant.  At second order the averaged
vector obeys ``dz/dt = i A diag(-1, 1) z`` with the secular constant
``A = (Omega_R/2)**2 * 2 Omega / (omega**2 - Omega**2)``.

The problem is linear, so every near-identity transform is represented by
the matrix it applies to the averaged vector: ``eps w(y, t) = W(t) y`` and
``eps^2 u(z, t) = U(t) z``.
"""

from __future__ import annotations

import numpy as np

from ._linalg import invert_near_identity, stack2x2
from .errors import ResonanceError
from .params import InitialState, SystemParams
from .trajectory import MethodKind, Trajectory, time_grid


def _require_detuned(params: SystemParams):
    if params.Delta == 0.0:
        raise ResonanceError("non-resonant averaging needs Delta != 0; use the resonant solver")


def ftilde_matrix(params: SystemParams, t) -> np.ndarray:
    """Oscillating part of the vector field; equal to the full field here."""
    t = np.asarray(t, dtype=float)
    c = 0.5j * params.Omega_R
    D, S = params.Delta, params.Sigma
    zero = np.zeros_like(t)
    return stack2x2(zero, c * (np.exp(1j * D * t) + np.exp(-1j * S * t)),
                   c * (np.exp(-1j * D * t) + np.exp(1j * S * t)), zero)


def transform_w(params: SystemParams, t) -> np.ndarray:
    """First-order transform ``W(t)``, the zero-mean antiderivative of ``ftilde``."""
    _require_detuned(params)
    t = np.asarray(t, dtype=float)
    c = 0.5j * params.Omega_R
    D, S = params.Delta, params.Sigma
    zero = np.zeros_like(t)
    w12 = c * (np.exp(1j * D * t) / (1j * D) - np.exp(-1j * S * t) / (1j * S))
    w21 = c * (-np.exp(-1j * D * t) / (1j * D) + np.exp(1j * S * t) / (1j * S))
    return stack2x2(zero, w12, w21, zero)


def h_matrix(params: SystemParams, t) -> np.ndarray:
    """Second-order field ``eps^2 h(z, t) = H(t) z`` before averaging."""
    _require_detuned(params)
    t = np.asarray(t, dtype=float)
    c = 1j * (0.5 * params.Omega_R) ** 2
    D, S = params.Delta, params.Sigma
    e_plus, e_minus = np.exp(1j * (D + S) * t), np.exp(-1j * (D + S) * t)
    h11 = c * (1 / S - 1 / D - e_minus / D + e_plus / S)
    h22 = c * (-1 / S + 1 / D + e_plus / D - e_minus / S)
    return stack2x2(h11, np.zeros_like(t), np.zeros_like(t), h22)


def htilde_matrix(params: SystemParams, t) -> np.ndarray:
    """Zero-mean part of :func:`h_matrix`, written with ``Delta + Sigma = 2 omega``."""
    _require_detuned(params)
    t = np.asarray(t, dtype=float)
    c = 1j * (0.5 * params.Omega_R) ** 2
    D, S, w = params.Delta, params.Sigma, params.omega
    e_plus, e_minus = np.exp(2j * w * t), np.exp(-2j * w * t)
    h11 = c * (-e_minus / D + e_plus / S)
    h22 = c * (e_plus / D - e_minus / S)
    return stack2x2(h11, np.zeros_like(t), np.zeros_like(t), h22)


def transform_u(params: SystemParams, t) -> np.ndarray:
    """Second-order transform ``U(t)``, the zero-mean antiderivative of ``htilde``."""
    _require_detuned(params)
    t = np.asarray(t, dtype=float)
    c = 1j * (0.5 * params.Omega_R) ** 2
    D, S, w = params.Delta, params.Sigma, params.omega
    e_plus, e_minus = np.exp(2j * w * t), np.exp(-2j * w * t)
    u11 = c * (e_minus / (2j * w * D) + e_plus / (2j * w * S))
    u22 = c * (e_plus / (2j * w * D) + e_minus / (2j * w * S))
    return stack2x2(u11, np.zeros_like(t), np.zeros_like(t), u22)


def secular_A(params: SystemParams) -> float:
    """Secular frequency of the second-order averaged system.

    ``omega**2 - Omega**2`` equals ``Delta * Sigma``, so the sign of ``A``
    follows the sign of the detuning.
    """
    _require_detuned(params)
    return (0.5 * params.Omega_R) ** 2 * (2.0 * params.Omega / (params.omega ** 2 - params.Omega ** 2))


def averaged_h_matrix(params: SystemParams) -> np.ndarray:
    """Generator ``i A diag(-1, 1)`` of the second-order averaged system."""
    A = secular_A(params)
    return np.diag([-1j * A, 1j * A])


def am1_solve(params: SystemParams, init: InitialState, times) -> Trajectory:
    """First-order solution ``x(t) = (I + W(t)) y0`` with constant ``y0``.

    ``y0`` inverts the transform exactly at t = 0 so ``x(0)`` equals ``init``.
    """
    t = time_grid(times)
    y0 = invert_near_identity(transform_w(params, 0.0), init.as_array())
    x = y0 + transform_w(params, t) @ y0
    return Trajectory(MethodKind.AM1_NR, t, x)


def am2_solve(params: SystemParams, init: InitialState, times) -> Trajectory:
    """Second-order solution ``x(t) = (I + W(t) + U(t)) z(t)``.

    The averaged vector rotates as ``z(t) = (z10 e^{-iAt}, z20 e^{iAt})``.
    """
    t = time_grid(times)
    z0 = invert_near_identity(transform_w(params, 0.0) + transform_u(params, 0.0), init.as_array())
    A = secular_A(params)
    z = np.column_stack([z0[0] * np.exp(-1j * A * t), z0[1] * np.exp(1j * A * t)])
    m = transform_w(params, t) + transform_u(params, t)
    x = z + np.einsum("nij,nj->ni", m, z)
    return Trajectory(MethodKind.AM2_NR, t, x)
