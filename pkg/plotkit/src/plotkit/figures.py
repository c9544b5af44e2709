"""Render figures from sdlscert experiment CSVs.

Two figure kinds:

``violin``
    Two stacked panels from a violin.csv
    (``N,trial,status,lambda_min,lambda_max,epsilon,lb,ub``): top
    eigenvalue on top, bottom eigenvalue below, one violin per dataset
    size with the individual trials scattered over it.  Certificate
    bounds from the ``ub``/``lb`` columns are overlaid as red
    downward/upward-pointing triangles.
``timing``
    Two curves from a timing.csv
    (``n,p,N,status,t_ls_ms,t_sdls_ms,admm_iters``): relaxed and
    constrained solve times against the problem dimension, on a
    logarithmic time axis.

Rendering is a pure function of the CSV: the data are plotted exactly as
read, never reordered or rescaled beyond the declared axis transforms,
and nothing is recomputed.  Rows whose status is not ``ok`` carry no
numbers and are skipped (their count is reported in the result).
"""

import csv
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


class SchemaError(ValueError):
    """The CSV does not match the expected schema."""


_SCHEMAS = {
    "violin": ["N", "trial", "status", "lambda_min", "lambda_max", "epsilon",
               "lb", "ub"],
    "timing": ["n", "p", "N", "status", "t_ls_ms", "t_sdls_ms", "admm_iters"],
}


@dataclass
class FigureSpec:
    """What to read, what to draw, and where to write it."""

    input_csv: str
    output_path: str
    kind: str
    xlabel: str | None = None
    ylabel: str | None = None
    log_x: bool = False
    log_y: bool | None = None  # None: kind default (timing logs the time axis)

    def __post_init__(self):
        if self.kind not in _SCHEMAS:
            raise SchemaError(
                f"unknown figure kind {self.kind!r}; expected one of "
                f"{sorted(_SCHEMAS)}"
            )
        if not Path(self.input_csv).exists():
            raise SchemaError(f"input CSV does not exist: {self.input_csv}")


@dataclass
class RenderResult:
    """Where the image went and how many data points each series got."""

    output_path: str
    points_plotted: dict = field(default_factory=dict)
    rows_read: int = 0
    rows_skipped: int = 0


def _load(spec):
    required = _SCHEMAS[spec.kind]
    with open(spec.input_csv, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in required if c not in header]
        if missing:
            raise SchemaError(
                f"{spec.input_csv} is missing required column(s) "
                f"{', '.join(missing)} for a {spec.kind} figure"
            )
        rows = list(reader)
    ok = [r for r in rows if r["status"] == "ok"]
    if not ok:
        raise SchemaError(
            f"{spec.input_csv} has no plottable data rows "
            f"({len(rows)} rows total)"
        )
    return ok, len(rows)


def _render_violin(spec, rows):
    groups = {}
    for r in rows:
        groups.setdefault(int(r["N"]), []).append(r)
    sizes = sorted(groups)
    positions = list(range(1, len(sizes) + 1))

    fig, (ax_top, ax_bot) = plt.subplots(
        2, 1, figsize=(7, 6), sharex=True, constrained_layout=True
    )
    counts = {"lambda_max": 0, "lambda_min": 0}
    for ax, col, bound_col, marker, label in [
        (ax_top, "lambda_max", "ub", "v", "upper bound"),
        (ax_bot, "lambda_min", "lb", "^", "lower bound"),
    ]:
        data = [[float(r[col]) for r in groups[N]] for N in sizes]
        ax.violinplot(data, positions=positions, showmedians=True)
        for pos, N in zip(positions, sizes):
            vals = [float(r[col]) for r in groups[N]]
            ax.plot(
                [pos] * len(vals), vals, linestyle="none", marker="o",
                markersize=3, alpha=0.5, color="C0",
            )
            counts[col] += len(vals)
            bounds = [float(r[bound_col]) for r in groups[N]]
            ax.plot(
                [pos] * len(bounds), bounds, linestyle="none", marker=marker,
                color="red", markersize=7,
                label=label if pos == positions[0] else None,
            )
        default = "top eigenvalue" if col.endswith("max") else "bottom eigenvalue"
        ax.set_ylabel(spec.ylabel or default)
        if spec.log_y:
            ax.set_yscale("log")
        ax.legend(loc="best")
    ax_bot.set_xticks(positions, [str(N) for N in sizes])
    ax_bot.set_xlabel(spec.xlabel or "dataset size N")
    if spec.log_x:
        ax_top.set_xscale("log")
    fig.savefig(spec.output_path, dpi=150)
    plt.close(fig)
    return counts


def _render_timing(spec, rows):
    ns = [int(r["n"]) for r in rows]
    t_ls = [float(r["t_ls_ms"]) for r in rows]
    t_sdls = [float(r["t_sdls_ms"]) for r in rows]

    fig, ax = plt.subplots(figsize=(6, 4), constrained_layout=True)
    ax.plot(ns, t_ls, marker="o", label="relaxed least squares")
    ax.plot(ns, t_sdls, marker="s", label="spectrally constrained")
    log_y = True if spec.log_y is None else spec.log_y
    if log_y and all(t > 0 for t in t_ls + t_sdls):
        ax.set_yscale("log")
    if spec.log_x and all(n > 0 for n in ns):
        ax.set_xscale("log")
    ax.set_xlabel(spec.xlabel or "problem dimension n")
    ax.set_ylabel(spec.ylabel or "solve time [ms]")
    ax.legend(loc="best")
    ax.grid(True, which="both", alpha=0.3)
    fig.savefig(spec.output_path, dpi=150)
    plt.close(fig)
    return {"t_ls_ms": len(t_ls), "t_sdls_ms": len(t_sdls)}


def render(spec):
    """Render the figure described by ``spec``.

    Raises :class:`SchemaError` (before writing anything) when the CSV is
    missing a required column or has no plottable rows.  Returns a
    :class:`RenderResult` with per-series point counts.
    """
    rows, total = _load(spec)
    if spec.kind == "violin":
        counts = _render_violin(spec, rows)
    else:
        counts = _render_timing(spec, rows)
    return RenderResult(
        output_path=spec.output_path,
        points_plotted=counts,
        rows_read=total,
        rows_skipped=total - len(rows),
    )
