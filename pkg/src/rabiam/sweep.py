"""One-axis parameter sweeps with a summary table."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .csvio import FLOAT_FORMAT, write_run_csv
from .errors import ConfigError, NoOscillationError
from .metrics import estimate_period, max_transfer
from .runner import RunConfig, execute, with_axis_value
from .trajectory import MethodKind

AXES = ("eps1", "eps2", "eps3", "phase")
SUMMARY_COLUMNS = ("value", "max_abs_err_am2_vs_nrwa", "max_abs_err_rwa_vs_nrwa",
                   "period_nrwa", "max_transfer_nrwa")


def _fmt(x):
    return "" if x is None else FLOAT_FORMAT.format(x)


def _summary_row(value, config: RunConfig, trajs: dict) -> list:
    ref = trajs.get(MethodKind.NRWA)
    am2 = MethodKind.AM2_R if config.params.resonant else MethodKind.AM2_NR
    if am2 not in trajs:
        am2 = MethodKind.AM2_NR if am2 is MethodKind.AM2_R else MethodKind.AM2_R

    def err(method):
        if ref is None or method not in trajs:
            return None
        return float(abs(trajs[method].p1 - ref.p1).max())

    period = transfer = None
    if ref is not None:
        transfer = max_transfer(ref)
        try:
            period = estimate_period(config.scaled_times(), ref.p1)
        except NoOscillationError:
            pass
    return [value, err(am2), err(MethodKind.RWA), period, transfer]


def _evaluate(args):
    value, config = args
    trajs = execute(config)
    return {m: t.p1 for m, t in trajs.items()}, _summary_row(value, config, trajs)


def sweep(axis: str, values, base: RunConfig, out_dir, workers=None) -> Path:
    """Run ``base`` at each sweep value and write one CSV per point.

    Every point is validated before any computation starts, and files are
    written only after all points have succeeded.  ``period_nrwa`` in the
    summary is in scaled time.

    Returns the path of ``summary.csv``.
    """
    if axis not in AXES:
        raise ConfigError(f"sweep axis must be one of {AXES}, got {axis!r}")
    values = [float(v) for v in values]
    if not values:
        raise ConfigError("sweep needs at least one value")
    configs = [with_axis_value(base, axis, v) for v in values]

    jobs = list(zip(values, configs))
    workers = workers if workers is not None else min(len(jobs), os.cpu_count() or 1)
    if workers <= 1:
        results = [_evaluate(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_evaluate, jobs))

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for i, ((_, config), (p1, _)) in enumerate(zip(jobs, results)):
        write_run_csv(out / f"{axis}_{i:03d}.csv", config.scaled_times(), p1)
    lines = [",".join(SUMMARY_COLUMNS)]
    lines += [",".join(_fmt(x) for x in row) for _, row in results]
    summary = out / "summary.csv"
    with open(summary, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return summary
