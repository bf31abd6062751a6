"""Command-line entry point: ``rabiam run|sweep|figure|plot``.

Exit codes: 0 success, 2 configuration or schema error, 3 numerical
divergence.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from pathlib import Path

from .csvio import emit_plot_script, write_run_csv
from .errors import ConfigError, DomainError, IntegrationDivergedError, SchemaError
from .presets import PRESET_IDS, expand_preset
from .runner import RunConfig, config_from_mapping, execute
from .sweep import AXES, sweep

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DIVERGED = 3

_PI_TERM = re.compile(r"^([+-]?\d*\.?\d*)\*?pi(?:/(\d*\.?\d+))?$")


def parse_value(text: str) -> float:
    """Parse a float, also accepting multiples of pi such as ``11pi/6``."""
    s = text.strip().replace(" ", "")
    m = _PI_TERM.match(s)
    if m:
        sign_only = {"": 1.0, "+": 1.0, "-": -1.0}
        coef = sign_only.get(m.group(1))
        coef = float(m.group(1)) if coef is None else coef
        return coef * math.pi / (float(m.group(2)) if m.group(2) else 1.0)
    try:
        return float(s)
    except ValueError:
        raise ConfigError(f"cannot parse value {text!r}") from None


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from None


def _config_doc(args) -> dict:
    """JSON document from ``--config`` with command-line flags layered on top."""
    doc = dict(_load_json(args.config)) if args.config else {}
    if args.methods is not None:
        doc["methods"] = [m.strip() for m in args.methods.split(",") if m.strip()]
    freq = {k: getattr(args, k) for k in ("omega", "Omega", "eps1", "eps2", "eps3")
            if getattr(args, k) is not None}
    if freq or args.Omega_R is not None:
        params = freq or dict(doc.get("params", {}))
        if "eps3" in params and args.resonant:
            params["resonant"] = True
        if args.Omega_R is not None:
            params["Omega_R"] = args.Omega_R
        doc["params"] = params
    if args.theta is not None or args.phi is not None:
        doc["init"] = {"theta": args.theta or 0.0, "phi": args.phi or 0.0}
    if args.duration is not None:
        doc["duration_periods"] = args.duration
    if args.samples is not None:
        doc["samples"] = args.samples
    integ = dict(doc.get("integrator", {}))
    if args.scheme is not None:
        integ["scheme"] = args.scheme
    if args.dt is not None:
        integ["dt"] = args.dt
    if integ:
        doc["integrator"] = integ
    if args.override_resonance_guard:
        doc["override_resonance_guard"] = True
    return doc


def _write_run(config: RunConfig, path: Path, raw_time: bool) -> Path:
    trajs = execute(config)
    t = config.times() if raw_time else config.scaled_times()
    return write_run_csv(path, t, {m: tr.p1 for m, tr in trajs.items()}, raw_time=raw_time)


def cmd_run(args) -> Path:
    config = config_from_mapping(_config_doc(args))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return _write_run(config, out / f"{args.name}.csv", args.raw_time)


def cmd_sweep(args) -> Path:
    doc = _config_doc(args)
    sweep_doc = doc.pop("sweep", {})
    if not isinstance(sweep_doc, dict):
        raise ConfigError("sweep must be an object with keys axis, values")
    axis = args.axis or sweep_doc.get("axis")
    if args.values:
        values = [parse_value(v) for v in args.values.split(",") if v.strip()]
    else:
        values = [parse_value(v) if isinstance(v, str) else v for v in sweep_doc.get("values", [])]
    if axis is None:
        raise ConfigError("sweep axis not given (--axis or sweep.axis)")
    return sweep(axis, values, config_from_mapping(doc), args.out, workers=args.workers)


def cmd_figure(args) -> list:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return [_write_run(cfg, out / f"{name}.csv", args.raw_time)
            for name, cfg in expand_preset(args.preset_id)]


def cmd_plot(args) -> Path:
    csv_path = Path(args.csv)
    out = Path(args.out) / f"{csv_path.stem}.py" if args.out else None
    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
    return emit_plot_script(csv_path, out)


def _add_config_flags(p):
    p.add_argument("--config", help="JSON configuration file")
    p.add_argument("--methods", help="comma-separated method names, e.g. nrwa,rwa,am2_nr")
    p.add_argument("--omega", type=float, help="field frequency")
    p.add_argument("--Omega", type=float, help="level splitting")
    p.add_argument("--Omega-R", dest="Omega_R", type=float, help="Rabi frequency (default 1)")
    p.add_argument("--eps1", type=float, help="Omega_R / Delta")
    p.add_argument("--eps2", type=float, help="Omega_R / Sigma")
    p.add_argument("--eps3", type=float, help="Omega_R / omega at resonance")
    p.add_argument("--resonant", action="store_true", help="mark the eps3 parameterization")
    p.add_argument("--theta", type=parse_value, help="phase of c1 (prepared state)")
    p.add_argument("--phi", type=parse_value, help="phase of c2 (prepared state)")
    p.add_argument("--duration", type=float, help="duration in scaled periods")
    p.add_argument("--samples", type=int, help="output grid size")
    p.add_argument("--scheme", choices=("rk4", "trapezoid"))
    p.add_argument("--dt", type=float, help="integrator step (physical time)")
    p.add_argument("--override-resonance-guard", action="store_true",
                   help="allow resonant AM at Delta != 0 (crossover runs)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rabiam", description="Driven two-level system solvers.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one configuration")
    _add_config_flags(run)
    run.add_argument("--name", default="run", help="CSV file stem (default: run)")
    run.add_argument("--raw-time", action="store_true", help="write physical time instead of scaled")
    run.add_argument("--out", default=".", help="output directory")
    run.set_defaults(func=cmd_run)

    sw = sub.add_parser("sweep", help="sweep one axis and write a summary")
    _add_config_flags(sw)
    sw.add_argument("--axis", choices=AXES)
    sw.add_argument("--values", help="comma-separated values; multiples of pi allowed (pi/6)")
    sw.add_argument("--workers", type=int, help="worker processes (default: cpu count)")
    sw.add_argument("--out", default="sweep", help="output directory")
    sw.set_defaults(func=cmd_sweep)

    fig = sub.add_parser("figure", help="reproduce a figure panel")
    fig.add_argument("preset_id", choices=PRESET_IDS, metavar="preset-id",
                     help="e.g. fig1g, fig3c, fig7d, fig8-resonance-phases")
    fig.add_argument("--raw-time", action="store_true")
    fig.add_argument("--out", default=".", help="output directory")
    fig.set_defaults(func=cmd_figure)

    plot = sub.add_parser("plot", help="write a matplotlib script for a run CSV")
    plot.add_argument("csv")
    plot.add_argument("--out", help="directory for the script (default: next to the CSV)")
    plot.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except IntegrationDivergedError as exc:
        print(f"error: integration diverged: {exc}", file=sys.stderr)
        return EXIT_DIVERGED
    except (ConfigError, SchemaError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    for path in result if isinstance(result, list) else [result]:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
