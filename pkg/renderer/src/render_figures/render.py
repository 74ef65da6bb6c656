"""Render heatmap / line-plot analogues of the nine canonical figures.

Input contract (produced by `cohtrap figure <id> --out <dir>`):
  <id>.csv            header row + RFC-4180 rows, empty cells for failures
  <id>.manifest.json  axes, series, columns, and (fig2a) the contour level

Figure kinds:
  heatmaps   fig1a, fig1b (alpha x mu), fig2a (lambda x upsilon, with the
             stationary-coherence contour overlaid), fig3c (upsilon x mu)
  line plots fig1c, fig1d, fig3a, fig3b (one curve per series value),
             fig2b (the enhancement-window bounds vs lambda)
"""

from __future__ import annotations

import csv
import json
import math
import os
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

# One style block; fixed so repeated renders are bit-reproducible.
STYLE = {
    "cmap": "viridis",
    "figsize": (5.2, 4.2),
    "dpi": 150,
    "contour_color": "white",
    "contour_linestyle": "--",
    "line_width": 1.6,
    "svg_hashsalt": "render-figures",
}

HEATMAPS = {
    "fig1a": ("alpha", "mu", "c_stationary", "stationary coherence"),
    "fig1b": ("alpha", "mu", "c_stationary", "stationary coherence"),
    "fig2a": ("lambda", "upsilon", "c_stationary", "stationary coherence"),
    "fig3c": ("upsilon", "mu", "qsl_ratio", "QSL ratio"),
}

LINES = {
    "fig1c": ("lambda", "mu", "c_stationary", "stationary coherence"),
    "fig1d": ("alpha", "mu", "c_stationary", "stationary coherence"),
    "fig3a": ("lambda", "mu", "qsl_ratio", "QSL ratio"),
    "fig3b": ("lambda", "upsilon", "qsl_ratio", "QSL ratio"),
}

FIGURE_IDS = tuple(sorted(HEATMAPS) + sorted(LINES) + ["fig2b"])


class SchemaError(ValueError):
    """The CSV/manifest does not match the requested figure's schema."""


@dataclass(frozen=True)
class FigureRequest:
    figure_id: str
    csv_path: str
    out_path: str
    image_format: str = ""  # inferred from out_path when empty

    def resolved_format(self) -> str:
        fmt = self.image_format or os.path.splitext(self.out_path)[1].lstrip(".")
        fmt = fmt.lower()
        if fmt not in ("png", "svg"):
            raise SchemaError(f"unsupported image format {fmt!r}; expected png or svg")
        return fmt


def _manifest_path(csv_path: str) -> str:
    base, _ = os.path.splitext(csv_path)
    return base + ".manifest.json"


def _load_table(csv_path: str):
    try:
        with open(csv_path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            rows = list(reader)
    except OSError as exc:
        raise SchemaError(f"cannot read {csv_path}: {exc}") from exc
    if not rows or len(rows) < 2:
        raise SchemaError(f"{csv_path}: empty table")
    return rows[0], rows[1:]


def _load_manifest(csv_path: str) -> dict:
    path = _manifest_path(csv_path)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise SchemaError(f"missing manifest {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"bad manifest {path}: {exc}") from exc


def _column(header, rows, name):
    try:
        k = header.index(name)
    except ValueError as exc:
        raise SchemaError(f"column {name!r} missing from {header}") from exc
    out = np.empty(len(rows))
    for i, row in enumerate(rows):
        cell = row[k] if k < len(row) else ""
        out[i] = float(cell) if cell not in ("", None) else math.nan
    return out


def _pivot(x, y, z):
    xs = np.unique(x)
    ys = np.unique(y)
    grid = np.full((ys.size, xs.size), np.nan)
    xi = np.searchsorted(xs, x)
    yi = np.searchsorted(ys, y)
    grid[yi, xi] = z
    return xs, ys, grid


def _new_figure():
    plt.rcParams["svg.hashsalt"] = STYLE["svg_hashsalt"]
    return plt.subplots(figsize=STYLE["figsize"])


def _save(fig, request: FigureRequest) -> None:
    fmt = request.resolved_format()
    metadata = {"Date": None} if fmt == "svg" else {}
    fig.savefig(request.out_path, format=fmt, dpi=STYLE["dpi"], metadata=metadata)
    plt.close(fig)


def _render_heatmap(request, header, rows, manifest):
    x_name, y_name, z_name, z_label = HEATMAPS[request.figure_id]
    x = _column(header, rows, x_name)
    y = _column(header, rows, y_name)
    z = _column(header, rows, z_name)
    xs, ys, grid = _pivot(x, y, z)
    fig, ax = _new_figure()
    mesh = ax.pcolormesh(xs, ys, grid, cmap=STYLE["cmap"], shading="nearest")
    fig.colorbar(mesh, ax=ax, label=z_label)
    if request.figure_id == "fig2a":
        level = manifest.get("contour_level")
        if level is None:
            raise SchemaError("fig2a manifest must carry contour_level")
        ax.contour(
            xs,
            ys,
            grid,
            levels=[float(level)],
            colors=STYLE["contour_color"],
            linestyles=STYLE["contour_linestyle"],
        )
    ax.set_xlabel(x_name)
    ax.set_ylabel(y_name)
    ax.set_title(request.figure_id)
    _save(fig, request)


def _render_lines(request, header, rows, manifest):
    series_name, x_name, y_name, y_label = LINES[request.figure_id]
    series = _column(header, rows, series_name)
    x = _column(header, rows, x_name)
    y = _column(header, rows, y_name)
    fig, ax = _new_figure()
    for sv in np.unique(series):
        mask = (series == sv) & ~np.isnan(y)
        if not mask.any():
            continue
        order = np.argsort(x[mask])
        ax.plot(
            x[mask][order],
            y[mask][order],
            lw=STYLE["line_width"],
            label=f"{series_name}={sv:g}",
        )
    ax.set_xlabel(x_name)
    ax.set_ylabel(y_label)
    ax.set_title(request.figure_id)
    ax.legend()
    _save(fig, request)


def _render_boundary(request, header, rows, manifest):
    lam = _column(header, rows, "lambda")
    lo = _column(header, rows, "upsilon_lo")
    hi = _column(header, rows, "upsilon_hi")
    fig, ax = _new_figure()
    mask = ~np.isnan(lo)
    if not mask.any():
        raise SchemaError("fig2b table has no enhancement windows to draw")
    order = np.argsort(lam[mask])
    ax.plot(lam[mask][order], lo[mask][order], lw=STYLE["line_width"], label="upsilon_lo")
    ax.plot(lam[mask][order], hi[mask][order], lw=STYLE["line_width"], label="upsilon_hi")
    ax.fill_between(
        lam[mask][order], lo[mask][order], hi[mask][order], alpha=0.2, linewidth=0
    )
    ax.set_xlabel("lambda")
    ax.set_ylabel("upsilon")
    ax.set_title("fig2b")
    ax.legend()
    _save(fig, request)


def render(request: FigureRequest) -> str:
    """Render one figure analogue; returns the output path."""
    if request.figure_id not in FIGURE_IDS:
        raise SchemaError(f"unknown figure id {request.figure_id!r}; expected one of {FIGURE_IDS}")
    request.resolved_format()  # validate early
    header, rows = _load_table(request.csv_path)
    manifest = _load_manifest(request.csv_path)
    if manifest.get("figure_id") not in (None, request.figure_id):
        raise SchemaError(
            f"manifest figure_id {manifest.get('figure_id')!r} does not match "
            f"requested {request.figure_id!r}"
        )
    if request.figure_id in HEATMAPS:
        _render_heatmap(request, header, rows, manifest)
    elif request.figure_id in LINES:
        _render_lines(request, header, rows, manifest)
    else:
        _render_boundary(request, header, rows, manifest)
    return request.out_path
