"""Physical parameters, initial states and the epsilon parameterization.

All frequencies are angular (rad per unit time).  The natural unit is
``Omega_R = 1`` and results are reported on the scaled axis
``Omega_R * t / (2 pi)``, i.e. time in units of the resonant RWA period.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DomainError

#: Inputs whose norm is further than this from 1 are rejected.
NORM_REJECT_TOL = 1e-9


@dataclass(frozen=True)
class SystemParams:
    """Frequencies of the driven two-level system.

    Only ``omega`` (field), ``Omega`` (level splitting) and ``Omega_R`` (Rabi)
    are free; the detuning, sum frequency and the three epsilon ratios are
    derived.  ``eps1`` is ``None`` at resonance, where ``Omega_R / Delta``
    does not exist.
    """

    omega: float
    Omega: float
    Omega_R: float = 1.0
    Delta: float = field(init=False)
    Sigma: float = field(init=False)
    eps1: Optional[float] = field(init=False)
    eps2: float = field(init=False)
    eps3: float = field(init=False)

    def __post_init__(self):
        for name in ("omega", "Omega", "Omega_R"):
            value = getattr(self, name)
            if not (isinstance(value, numbers.Real) and math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be a positive finite number, got {value!r}")
            object.__setattr__(self, name, float(value))
        Delta = self.omega - self.Omega
        Sigma = self.omega + self.Omega
        object.__setattr__(self, "Delta", Delta)
        object.__setattr__(self, "Sigma", Sigma)
        object.__setattr__(self, "eps1", None if Delta == 0.0 else self.Omega_R / Delta)
        object.__setattr__(self, "eps2", self.Omega_R / Sigma)
        object.__setattr__(self, "eps3", self.Omega_R / self.omega)

    @property
    def resonant(self) -> bool:
        return self.Delta == 0.0

    @property
    def generalized_rabi(self) -> float:
        """sqrt(Omega_R**2 + Delta**2), the RWA oscillation frequency."""
        return math.hypot(self.Omega_R, self.Delta)


def params_from_frequencies(omega: float, Omega: float, Omega_R: float = 1.0) -> SystemParams:
    return SystemParams(omega, Omega, Omega_R)


def params_from_epsilons(Omega_R: float, eps1: float, eps2: float) -> SystemParams:
    """Build parameters from ``eps1 = Omega_R/Delta`` and ``eps2 = Omega_R/Sigma``.

    Raises
    ------
    DomainError
        If ``eps2 <= 0``, ``eps1 == 0`` or the pair implies a non-positive
        field or level frequency (``|eps1| <= eps2``).
    """
    if not Omega_R > 0:
        raise DomainError(f"Omega_R must be positive, got {Omega_R!r}")
    if not eps2 > 0:
        raise DomainError(f"eps2 must be positive, got {eps2!r}")
    if eps1 == 0:
        raise DomainError("eps1 must be non-zero (use the resonant parameterization)")
    Delta = Omega_R / eps1
    Sigma = Omega_R / eps2
    omega = 0.5 * (Sigma + Delta)
    Omega = 0.5 * (Sigma - Delta)
    if omega <= 0 or Omega <= 0:
        raise DomainError(
            f"eps1={eps1}, eps2={eps2} give omega={omega:g}, Omega={Omega:g}; both must be positive"
        )
    return SystemParams(omega, Omega, Omega_R)


def params_resonant(Omega_R: float, eps3: float) -> SystemParams:
    """Resonant parameters with ``omega = Omega = Omega_R / eps3``."""
    if not eps3 > 0:
        raise DomainError(f"eps3 must be positive, got {eps3!r}")
    omega = Omega_R / eps3
    return SystemParams(omega, omega, Omega_R)


@dataclass(frozen=True)
class InitialState:
    """Normalized complex amplitudes ``(c1, c2)`` at t = 0.

    Inputs within ``NORM_REJECT_TOL`` of unit norm are renormalized; anything
    further off is rejected as a caller bug.
    """

    c1: complex
    c2: complex

    def __post_init__(self):
        c1, c2 = complex(self.c1), complex(self.c2)
        norm2 = abs(c1) ** 2 + abs(c2) ** 2
        if not abs(norm2 - 1.0) <= NORM_REJECT_TOL:
            raise DomainError(f"initial state has |c1|^2+|c2|^2 = {norm2!r}, expected 1")
        scale = 1.0 / math.sqrt(norm2)
        object.__setattr__(self, "c1", c1 * scale)
        object.__setattr__(self, "c2", c2 * scale)

    def as_array(self) -> np.ndarray:
        return np.array([self.c1, self.c2], dtype=complex)


GROUND = InitialState(1.0, 0.0)


def prepared_state(theta: float, phi: float) -> InitialState:
    """Equal populations with phases ``arg c1 = theta`` and ``arg c2 = phi``."""
    r = 1.0 / math.sqrt(2.0)
    return InitialState(r * complex(math.cos(theta), math.sin(theta)),
                        r * complex(math.cos(phi), math.sin(phi)))


def probabilities(state):
    """Return ``(P1, P2) = (|c1|**2, |c2|**2)``.

    ``state`` may be an :class:`InitialState`, a pair of complex numbers or
    an array whose last axis holds the two amplitudes.
    """
    if isinstance(state, InitialState):
        return abs(state.c1) ** 2, abs(state.c2) ** 2
    amps = np.asarray(state, dtype=complex)
    p = amps.real ** 2 + amps.imag ** 2
    if p.ndim == 1:
        return float(p[0]), float(p[1])
    return p[..., 0], p[..., 1]


def scaled_time(t, Omega_R: float):
    """Map physical time to the figure axis ``Omega_R t / 2 pi``."""
    return np.asarray(t) * Omega_R / (2.0 * math.pi)


def physical_time(t_scaled, Omega_R: float):
    return np.asarray(t_scaled) * (2.0 * math.pi) / Omega_R
