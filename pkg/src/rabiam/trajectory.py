"""Trajectory container shared by every solver."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


class MethodKind(str, enum.Enum):
    """Solution method tag; the value is the CSV column suffix."""

    NRWA = "nrwa"
    NRWA_TRAPEZOID = "nrwa_trap"
    RWA = "rwa"
    AM1_NR = "am1_nr"
    AM2_NR = "am2_nr"
    AM1_R = "am1_r"
    AM2_R = "am2_r"
    STRONG = "strong"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Trajectory:
    """Amplitudes of one method on a time grid.

    ``amplitudes`` has shape ``(len(times), 2)``; ``p1`` and ``p2`` are the
    level populations derived from it.
    """

    method: MethodKind
    times: np.ndarray
    amplitudes: np.ndarray

    def __post_init__(self):
        times = np.array(self.times, dtype=float)
        amps = np.array(self.amplitudes, dtype=complex)
        if times.ndim != 1 or amps.shape != (times.size, 2):
            raise ValueError(f"amplitudes shape {amps.shape} does not match {times.size} times")
        if times.size > 1 and not np.all(np.diff(times) > 0):
            raise ValueError("times must be strictly increasing")
        times.flags.writeable = False
        amps.flags.writeable = False
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def p1(self) -> np.ndarray:
        c = self.amplitudes[:, 0]
        return c.real ** 2 + c.imag ** 2

    @property
    def p2(self) -> np.ndarray:
        c = self.amplitudes[:, 1]
        return c.real ** 2 + c.imag ** 2

    @property
    def norm2(self) -> np.ndarray:
        return self.p1 + self.p2

    def __len__(self):
        return self.times.size


def time_grid(times) -> np.ndarray:
    """Validate a non-empty 1-D time grid and return it as a float array."""
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise DomainError("time grid must be a non-empty 1-D sequence")
    return times
