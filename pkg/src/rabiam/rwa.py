"""Closed-form solutions within the rotating-wave approximation.

Dropping the sum-frequency terms leaves

    dC1/dt = i (Omega_R/2) exp(+i Delta t) C2
    dC2/dt = i (Omega_R/2) exp(-i Delta t) C1

which is constant in the frame ``C1 = a exp(i Delta t/2)``,
``C2 = b exp(-i Delta t/2)``.  There ``d(a, b)/dt = i H (a, b)`` with

    H = [[-Delta/2, Omega_R/2], [Omega_R/2, Delta/2]],

whose eigenvalues are ``+-lam``, ``lam = sqrt(Omega_R**2 + Delta**2) / 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import InitialState, SystemParams
from .trajectory import MethodKind, Trajectory, time_grid


@dataclass(frozen=True)
class RwaSummary:
    lambda_half: float
    period: float
    max_transfer: float


def rwa_summary(params: SystemParams) -> RwaSummary:
    gen = params.generalized_rabi
    return RwaSummary(
        lambda_half=0.5 * gen,
        period=2.0 * math.pi / gen,
        max_transfer=params.Omega_R ** 2 / (params.Omega_R ** 2 + params.Delta ** 2),
    )


def rwa_probabilities_ground(params: SystemParams, t):
    """Populations for the initial condition ``C1(0)=1, C2(0)=0``."""
    s = rwa_summary(params)
    p2 = s.max_transfer * np.sin(s.lambda_half * np.asarray(t, dtype=float)) ** 2
    return 1.0 - p2, p2


def rwa_probabilities_phased(params: SystemParams, theta_minus_phi: float, t):
    """Populations for ``C1(0) = e^{i theta}/sqrt2, C2(0) = e^{i phi}/sqrt2``.

    Only the phase difference enters.  At resonance this is
    ``P1 = 1/2 + sin(Omega_R t) sin(theta - phi) / 2``.
    """
    t = np.asarray(t, dtype=float)
    OR, D = params.Omega_R, params.Delta
    gen2 = OR ** 2 + D ** 2
    two_lam_t = math.sqrt(gen2) * t
    p1 = (
        0.5
        - OR * D / (2.0 * gen2) * math.cos(theta_minus_phi) * (1.0 - np.cos(two_lam_t))
        + OR / (2.0 * math.sqrt(gen2)) * np.sin(two_lam_t) * math.sin(theta_minus_phi)
    )
    return p1, 1.0 - p1


def strong_field_probabilities(Omega_R: float, t):
    """Populations when every exponential in the coupling is replaced by 1."""
    c = np.cos(Omega_R * np.asarray(t, dtype=float))
    p1 = c ** 2
    return p1, 1.0 - p1


def rwa_propagate(params: SystemParams, init: InitialState, times) -> Trajectory:
    """Exact amplitudes of the RWA system for an arbitrary initial state."""
    t = time_grid(times)
    OR, D = params.Omega_R, params.Delta
    lam = 0.5 * params.generalized_rabi
    c = np.cos(lam * t)
    s = np.sin(lam * t) / lam
    a0, b0 = init.c1, init.c2
    # exp(iHt) = cos(lam t) I + i sin(lam t) H / lam
    a = c * a0 + 1j * s * (-0.5 * D * a0 + 0.5 * OR * b0)
    b = c * b0 + 1j * s * (0.5 * OR * a0 + 0.5 * D * b0)
    rot = np.exp(0.5j * D * t)
    amps = np.column_stack([a * rot, b * np.conj(rot)])
    return Trajectory(MethodKind.RWA, t, amps)


def strong_field_propagate(params: SystemParams, init: InitialState, times) -> Trajectory:
    """Amplitudes of ``dC/dt = i Omega_R sigma_x C`` (strong-field limit)."""
    t = time_grid(times)
    c = np.cos(params.Omega_R * t)
    s = np.sin(params.Omega_R * t)
    amps = np.column_stack([c * init.c1 + 1j * s * init.c2, c * init.c2 + 1j * s * init.c1])
    return Trajectory(MethodKind.STRONG, t, amps)
