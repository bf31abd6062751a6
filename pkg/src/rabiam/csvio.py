"""CSV output of populations and a matching matplotlib script generator."""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .errors import SchemaError
from .trajectory import MethodKind

FLOAT_FORMAT = "{:.12g}"
TIME_COLUMNS = ("t_scaled", "t")

# (linestyle, color); the crossover figure restyles the AM curves.
DEFAULT_STYLES = {
    "nrwa": ("-", "forestgreen"),
    "nrwa_trap": ("-", "olive"),
    "rwa": ("--", "red"),
    "strong": (":", "magenta"),
    "am2_nr": (":", "blue"),
    "am1_nr": ("-.", "black"),
    "am2_r": (":", "blue"),
    "am1_r": ("-.", "black"),
}
CROSSOVER_STYLES = {
    "am2_nr": ("--", "blue"),
    "am2_r": ("--", "cyan"),
    "am1_r": ("-.", "gray"),
}
LEGEND_LABELS = {
    "nrwa": "NRWA",
    "nrwa_trap": "NRWA (trapezoid)",
    "rwa": "RWA",
    "strong": "strong field",
    "am2_nr": "AM2",
    "am1_nr": "AM1",
    "am2_r": "AM2 (resonant)",
    "am1_r": "AM1 (resonant)",
}
LEGEND_ORDER = ("nrwa", "nrwa_trap", "rwa", "strong", "am2_nr", "am1_nr", "am2_r", "am1_r")


def write_run_csv(path, t, columns: dict, raw_time: bool = False) -> Path:
    """Write ``t`` and one ``P1_<method>`` column per entry of ``columns``.

    Values are printed with 12 significant digits so identical inputs give
    identical bytes.
    """
    path = Path(path)
    names = [MethodKind(m).value for m in columns]
    header = ["t" if raw_time else "t_scaled"] + [f"P1_{n}" for n in names]
    data = np.column_stack([np.asarray(t, dtype=float)]
                           + [np.asarray(v, dtype=float) for v in columns.values()])
    lines = [",".join(header)]
    lines.extend(",".join(FLOAT_FORMAT.format(x) for x in row) for row in data.tolist())
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def parse_header(header, source="<csv>") -> list:
    """Method names of a run-CSV header; raises SchemaError if malformed."""
    if len(header) < 2 or header[0] not in TIME_COLUMNS:
        raise SchemaError(f"{source}: header must be 't_scaled,P1_<method>[,...]', got {header!r}")
    methods = []
    for col in header[1:]:
        name = col[3:] if col.startswith("P1_") else None
        try:
            methods.append(MethodKind(name).value)
        except ValueError:
            raise SchemaError(f"{source}: unknown column {col!r}") from None
    if len(set(methods)) != len(methods):
        raise SchemaError(f"{source}: duplicate method columns")
    return methods


def read_run_csv(path):
    """Return ``(t, {method: P1})`` from a run CSV."""
    path = Path(path)
    if not path.is_file():
        raise SchemaError(f"{path}: no such CSV file")
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise SchemaError(f"{path}: empty file")
    methods = parse_header(rows[0], path)
    try:
        data = np.array(rows[1:], dtype=float)
    except ValueError as exc:
        raise SchemaError(f"{path}: {exc}") from None
    if data.ndim != 2 or data.shape[1] != len(methods) + 1:
        raise SchemaError(f"{path}: rows do not match the header width {len(methods) + 1}")
    return data[:, 0], {m: data[:, i + 1] for i, m in enumerate(methods)}


_SCRIPT = '''\
"""Plot {csv_name}; generated file."""
import matplotlib.pyplot as plt
import numpy as np

CSV = {csv_path!r}
CURVES = {curves!r}

data = np.genfromtxt(CSV, delimiter=",", names=True)
fig, ax = plt.subplots(figsize=(6, 3.5))
for column, label, style, color in CURVES:
    ax.plot(data[{time_col!r}], data[column], linestyle=style, color=color, label=label)
ax.set_xlabel({xlabel!r})
ax.set_ylabel("$P_1$")
ax.set_ylim(-0.02, 1.02)
ax.legend(loc="best", fontsize="small")
fig.tight_layout()
fig.savefig({png_path!r}, dpi=150)
'''


def emit_plot_script(csv_path, out_path=None, style_map=None) -> Path:
    """Write a standalone matplotlib script that plots a run CSV.

    Parameters
    ----------
    csv_path : path-like
        Run CSV to plot.  Only its header is read here.
    out_path : path-like, optional
        Script destination; defaults to the CSV path with a ``.py`` suffix.
    style_map : dict, optional
        ``{method: (linestyle, color)}`` overrides.

    Raises
    ------
    SchemaError
        If the CSV is missing or its header is malformed.
    """
    csv_path = Path(csv_path)
    if not csv_path.is_file():
        raise SchemaError(f"{csv_path}: no such CSV file")
    with open(csv_path, encoding="utf-8", newline="") as fh:
        header = next(csv.reader(fh), [])
    methods = parse_header(header, csv_path)

    styles = dict(DEFAULT_STYLES)
    if any(m in methods for m in ("am1_nr", "am2_nr")) and any(m in methods for m in ("am1_r", "am2_r")):
        styles.update(CROSSOVER_STYLES)
    styles.update(style_map or {})
    curves = [(f"P1_{m}", LEGEND_LABELS[m], *styles[m])
              for m in sorted(methods, key=LEGEND_ORDER.index)]

    out_path = Path(out_path) if out_path is not None else csv_path.with_suffix(".py")
    xlabel = r"$t$" if header[0] == "t" else r"$\Omega_R t / 2\pi$"
    out_path.write_text(_SCRIPT.format(
        csv_name=csv_path.name,
        csv_path=str(csv_path.resolve()),
        curves=curves,
        time_col=header[0],
        xlabel=xlabel,
        png_path=str(csv_path.resolve().with_suffix(".png")),
    ), encoding="utf-8")
    return out_path
