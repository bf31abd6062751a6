"""Named run configurations for each published figure panel.

Presets carry only the parameters that define each panel (epsilon values
and the initial phase difference).  Non-resonant panels run for 10 scaled
periods and resonant ones for 3, both on 2001 samples.
"""

from __future__ import annotations

import math
import string

from .errors import ConfigError
from .params import GROUND, params_from_epsilons, params_resonant, prepared_state
from .runner import RunConfig
from .trajectory import MethodKind as M

SAMPLES = 2001
NONRESONANT_PERIODS = 10.0
RESONANT_PERIODS = 3.0

# Legend order used by the figures.
NONRESONANT_METHODS = (M.NRWA, M.RWA, M.AM2_NR, M.AM1_NR)
RESONANT_METHODS = (M.NRWA, M.RWA, M.AM2_R, M.AM1_R)
CROSSOVER_METHODS = NONRESONANT_METHODS + (M.AM2_R, M.AM1_R)

EPS2_SWEEP = (0.4, 0.4, 0.1, 0.1, 0.04, 0.04, 0.01, 0.01)
EPS1_PAIRS = (-0.5, 0.5) * 4
EPS1_SWEEP = (-0.9, 0.9, -0.6, 0.6, -0.2, 0.2, -0.1, 0.1)
EPS3_SWEEP = (0.9, 0.5, 0.1, 0.05)
DETUNED_PHASES = tuple(k * math.pi / 3 for k in range(6))
CROSSOVER_EPS1 = (0.5, 1.0, 5.0, 10.0)
RESONANCE_PHASES = tuple(k * math.pi / 6 for k in range(12))
# The twelve-panel figure skips the letter j.
RESONANCE_PHASE_LETTERS = "abcdefghiklm"
RESONANCE_PHASE_GROUP = "fig8-resonance-phases"


def _state(phase):
    return GROUND if phase is None else prepared_state(phase, 0.0)


def _detuned(eps1, eps2, phase=None, methods=NONRESONANT_METHODS, override=False):
    return RunConfig(methods, params_from_epsilons(1.0, eps1, eps2), NONRESONANT_PERIODS,
                     SAMPLES, _state(phase), override_resonance_guard=override)


def _resonant(eps3, phase=None):
    return RunConfig(RESONANT_METHODS, params_resonant(1.0, eps3), RESONANT_PERIODS,
                     SAMPLES, _state(phase))


def _build():
    presets = {}
    letters = string.ascii_lowercase
    third = math.pi / 3
    for i, (e1, e2) in enumerate(zip(EPS1_PAIRS, EPS2_SWEEP)):
        presets[f"fig1{letters[i]}"] = lambda e1=e1, e2=e2: _detuned(e1, e2)
        presets[f"fig4{letters[i]}"] = lambda e1=e1, e2=e2: _detuned(e1, e2, third)
    for i, e1 in enumerate(EPS1_SWEEP):
        presets[f"fig2{letters[i]}"] = lambda e1=e1: _detuned(e1, 0.01)
        presets[f"fig5{letters[i]}"] = lambda e1=e1: _detuned(e1, 0.01, third)
    for i, e3 in enumerate(EPS3_SWEEP):
        presets[f"fig3{letters[i]}"] = lambda e3=e3: _resonant(e3)
        presets[f"fig3p-{letters[i]}"] = lambda e3=e3: _resonant(e3, third)
    for i, ph in enumerate(DETUNED_PHASES):
        presets[f"fig6{letters[i]}"] = lambda ph=ph: _detuned(0.5, 0.01, ph)
    for i, e1 in enumerate(CROSSOVER_EPS1):
        presets[f"fig7{letters[i]}"] = lambda e1=e1: _detuned(
            e1, 0.01, methods=CROSSOVER_METHODS, override=True)
    for letter, ph in zip(RESONANCE_PHASE_LETTERS, RESONANCE_PHASES):
        presets[f"fig8{letter}"] = lambda ph=ph: _resonant(0.1, ph)
    return presets


_PRESETS = _build()
PRESET_IDS = tuple(_PRESETS) + (RESONANCE_PHASE_GROUP,)


def preset_config(preset_id: str) -> RunConfig:
    """RunConfig of a single-panel preset."""
    try:
        return _PRESETS[preset_id]()
    except KeyError:
        raise ConfigError(f"unknown preset {preset_id!r}") from None


def expand_preset(preset_id: str) -> list:
    """``[(name, RunConfig), ...]``; one entry except for group presets."""
    if preset_id == RESONANCE_PHASE_GROUP:
        return [(f"fig8{c}", preset_config(f"fig8{c}")) for c in RESONANCE_PHASE_LETTERS]
    return [(preset_id, preset_config(preset_id))]
