"""Run configurations and dispatch from method names to solvers."""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass, replace
from typing import Mapping, Optional

import numpy as np

from .am_nonresonant import am1_solve, am2_solve
from .am_resonant import am1_resonant_solve, am2_resonant_solve
from .errors import ConfigError, DomainError
from .nrwa import SCHEMES, IntegratorConfig, integrate
from .params import (
    GROUND,
    InitialState,
    SystemParams,
    params_from_epsilons,
    params_from_frequencies,
    params_resonant,
    physical_time,
    prepared_state,
)
from .rwa import rwa_propagate, strong_field_propagate
from .trajectory import MethodKind, Trajectory

NONRESONANT_AM = (MethodKind.AM1_NR, MethodKind.AM2_NR)
RESONANT_AM = (MethodKind.AM1_R, MethodKind.AM2_R)


@dataclass(frozen=True)
class RunConfig:
    """Everything needed to reproduce one simulation.

    ``duration_periods`` is measured in scaled time ``Omega_R t / 2 pi``.
    ``phase`` is ``theta - phi`` of a prepared initial state, or ``None`` for
    the ground state.
    """

    methods: tuple
    params: SystemParams
    duration_periods: float
    samples: int
    init: InitialState = GROUND
    scheme: str = "rk4"
    dt: Optional[float] = None
    override_resonance_guard: bool = False

    def __post_init__(self):
        methods = tuple(MethodKind(m) for m in self.methods)
        object.__setattr__(self, "methods", methods)
        if not methods:
            raise ConfigError("method set must be non-empty")
        if len(set(methods)) != len(methods):
            raise ConfigError("method set contains duplicates")
        if not (isinstance(self.duration_periods, numbers.Real)
                and math.isfinite(self.duration_periods) and self.duration_periods > 0):
            raise ConfigError(f"duration must be > 0, got {self.duration_periods!r}")
        if isinstance(self.samples, bool) or not isinstance(self.samples, numbers.Integral) \
                or self.samples < 2:
            raise ConfigError(f"samples must be an integer >= 2, got {self.samples!r}")
        if self.scheme not in SCHEMES:
            raise ConfigError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        if self.dt is not None and not (math.isfinite(self.dt) and self.dt > 0):
            raise ConfigError(f"dt must be positive, got {self.dt!r}")
        resonant = self.params.resonant
        for m in methods:
            if m in NONRESONANT_AM and resonant:
                raise ConfigError(f"{m.value} requires Delta != 0")
            if m in RESONANT_AM and not resonant and not self.override_resonance_guard:
                raise ConfigError(
                    f"{m.value} requires Delta = 0 (set override_resonance_guard for crossover runs)"
                )

    def scaled_times(self) -> np.ndarray:
        return np.linspace(0.0, float(self.duration_periods), int(self.samples))

    def times(self) -> np.ndarray:
        return physical_time(self.scaled_times(), self.params.Omega_R)


def solve(config: RunConfig, method: MethodKind) -> Trajectory:
    """Trajectory of one method on the configuration's output grid."""
    p, init, t = config.params, config.init, config.times()
    if method is MethodKind.NRWA or method is MethodKind.NRWA_TRAPEZOID:
        scheme = config.scheme if method is MethodKind.NRWA else "trapezoid"
        return integrate(p, init, float(t[-1]), IntegratorConfig(scheme, config.dt), t)
    if method is MethodKind.RWA:
        return rwa_propagate(p, init, t)
    if method is MethodKind.STRONG:
        return strong_field_propagate(p, init, t)
    if method is MethodKind.AM1_NR:
        return am1_solve(p, init, t)
    if method is MethodKind.AM2_NR:
        return am2_solve(p, init, t)
    if method is MethodKind.AM1_R:
        return am1_resonant_solve(p.omega, p.Omega_R, init, t)
    if method is MethodKind.AM2_R:
        return am2_resonant_solve(p.omega, p.Omega_R, init, t)
    raise ConfigError(f"unknown method {method!r}")


def execute(config: RunConfig) -> dict:
    """All selected trajectories, keyed by method in selection order."""
    return {m: solve(config, m) for m in config.methods}


def _params_from_mapping(entry: Mapping) -> SystemParams:
    keys = set(entry)
    Omega_R = entry.get("Omega_R", 1.0)
    try:
        if keys - {"Omega_R"} == {"omega", "Omega"}:
            return params_from_frequencies(entry["omega"], entry["Omega"], Omega_R)
        if keys - {"Omega_R"} == {"eps1", "eps2"}:
            return params_from_epsilons(Omega_R, entry["eps1"], entry["eps2"])
        if keys - {"Omega_R", "resonant"} == {"eps3"}:
            if entry.get("resonant", True) is not True:
                raise ConfigError("eps3 parameterization is resonant; 'resonant' must be true")
            return params_resonant(Omega_R, entry["eps3"])
    except (DomainError, TypeError) as exc:
        raise ConfigError(f"invalid params: {exc}") from None
    raise ConfigError(
        "params must contain exactly one of {omega, Omega}, {eps1, eps2}, {eps3, resonant}"
        f" (plus optional Omega_R), got {sorted(keys)}"
    )


def _init_from_value(entry) -> InitialState:
    if entry == "ground":
        return GROUND
    if isinstance(entry, Mapping) and set(entry) == {"theta", "phi"}:
        try:
            return prepared_state(float(entry["theta"]), float(entry["phi"]))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"invalid init: {exc}") from None
    raise ConfigError(f'init must be "ground" or {{"theta": ..., "phi": ...}}, got {entry!r}')


_CONFIG_KEYS = {"methods", "params", "init", "duration_periods", "samples",
                "integrator", "override_resonance_guard", "sweep"}


def config_from_mapping(doc: Mapping) -> RunConfig:
    """Parse the JSON configuration document.

    Unknown keys are rejected so typos do not silently fall back to defaults.
    A ``sweep`` key is tolerated and ignored here.
    """
    if not isinstance(doc, Mapping):
        raise ConfigError("config must be a JSON object")
    unknown = set(doc) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    for key in ("methods", "params", "duration_periods", "samples"):
        if key not in doc:
            raise ConfigError(f"missing config key {key!r}")
    methods = doc["methods"]
    if not isinstance(methods, (list, tuple)):
        raise ConfigError("methods must be an array of method names")
    try:
        methods = tuple(MethodKind(m) for m in methods)
    except ValueError as exc:
        valid = ", ".join(k.value for k in MethodKind)
        raise ConfigError(f"{exc}; valid methods: {valid}") from None
    if not isinstance(doc["params"], Mapping):
        raise ConfigError("params must be an object")
    integ = doc.get("integrator", {})
    if not isinstance(integ, Mapping) or set(integ) - {"scheme", "dt"}:
        raise ConfigError('integrator must be an object with optional keys "scheme", "dt"')
    override = doc.get("override_resonance_guard", False)
    if not isinstance(override, bool):
        raise ConfigError("override_resonance_guard must be a boolean")
    return RunConfig(
        methods=methods,
        params=_params_from_mapping(doc["params"]),
        duration_periods=doc["duration_periods"],
        samples=doc["samples"],
        init=_init_from_value(doc.get("init", "ground")),
        scheme=integ.get("scheme", "rk4"),
        dt=integ.get("dt"),
        override_resonance_guard=override,
    )


def with_axis_value(base: RunConfig, axis: str, value: float) -> RunConfig:
    """Copy of ``base`` with one sweep coordinate replaced."""
    p = base.params
    try:
        if axis == "eps1":
            return replace(base, params=params_from_epsilons(p.Omega_R, value, p.eps2))
        if axis == "eps2":
            if p.resonant:
                raise ConfigError("an eps2 sweep needs a non-resonant base config")
            return replace(base, params=params_from_epsilons(p.Omega_R, p.eps1, value))
        if axis == "eps3":
            return replace(base, params=params_resonant(p.Omega_R, value))
        if axis == "phase":
            return replace(base, init=prepared_state(value, 0.0))
    except DomainError as exc:
        raise ConfigError(f"{axis}={value!r}: {exc}") from None
    raise ConfigError(f"sweep axis must be eps1, eps2, eps3 or phase, got {axis!r}")
