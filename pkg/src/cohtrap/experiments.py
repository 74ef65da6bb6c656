"""Parameter sweeps, ECT-boundary extraction, and optimizations that
regenerate the quantitative figure content: stationary-coherence maps and
curves, the enhanced-coherence-trapping (ECT) region, and QSL optima.

Grid evaluation is embarrassingly parallel; rows are always assembled in
lexicographic index order so output tables are byte-identical regardless of
the worker count.
"""

from __future__ import annotations

import dataclasses
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._version import __version__
from .coherence import stationary_coherence
from .dephasing import BathSpec, CorrelationSpec, ModelParams, QubitSpec
from .errors import ConvergenceError, DomainError, NoTrappingError
from .mathcore import Bracket, QuadratureSpec, minimize_2d, minimize_scalar
from .qsl import MODE_PAPER_LITERAL, QSL_MODES, TrappingSpec, qsl_ratio

__all__ = [
    "AXIS_NAMES",
    "FIGURE_IDS",
    "AxisSpec",
    "SweepResult",
    "QslOptimum",
    "sweep",
    "ect_boundary",
    "optimize_stationary_mu",
    "optimize_qsl",
    "figure_dataset",
]

AXIS_NAMES = ("alpha", "mu", "lambda", "upsilon", "omega0", "t")

# Lower bounds (exclusive unless noted) of each sweepable parameter.
_AXIS_DOMAIN = {
    "alpha": (0.0, math.inf),
    "mu": (-1.0, math.inf),
    "lambda": (-1e-15, 1.0 + 1e-15),  # inclusive [0, 1]
    "upsilon": (0.0, math.inf),
    "omega0": (-1e-15, math.inf),  # inclusive 0
    "t": (-1e-15, math.inf),
}

FIGURE_IDS = (
    "fig1a",
    "fig1b",
    "fig1c",
    "fig1d",
    "fig2a",
    "fig2b",
    "fig3a",
    "fig3b",
    "fig3c",
)

# Trapping settings for the extended-time figures (slow algebraic tails near
# mu ~ 1 need far more than the 50/omega_c default before the band closes).
_FIGURE_TRAPPING = TrappingSpec(rel_tol=1e-3, abs_tol=1e-6, t_max=500.0, grid_n=25000)
_FIGURE_QUAD = QuadratureSpec(abs_tol=1e-7, max_depth=40)


@dataclass(frozen=True)
class AxisSpec:
    """A uniformly sampled sweep axis over one named parameter."""

    name: str
    lo: float
    hi: float
    n: int

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise DomainError(f"unknown axis {self.name!r}; expected one of {AXIS_NAMES}")
        if not self.lo < self.hi:
            raise DomainError(f"axis {self.name}: requires lo < hi, got [{self.lo}, {self.hi}]")
        if self.n < 2:
            raise DomainError(f"axis {self.name}: n must be >= 2, got {self.n}")
        dom_lo, dom_hi = _AXIS_DOMAIN[self.name]
        if self.lo <= dom_lo - 1e-15 or self.hi > dom_hi:
            raise DomainError(
                f"axis {self.name}: bounds [{self.lo}, {self.hi}] leave the parameter domain"
            )

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.n)


@dataclass(frozen=True)
class SweepResult:
    """Evaluated grid: axis specs, column names, row tuples, and a manifest
    describing everything needed to reproduce the table."""

    axes: tuple
    columns: tuple
    rows: list
    manifest: dict


@dataclass(frozen=True)
class QslOptimum:
    """Argmin record of a QSL-ratio optimization, with the settings used."""

    vars: str
    arg: dict
    value: float
    mode: str
    omega0: float
    trapping: TrappingSpec
    quad: QuadratureSpec


def _apply_axes(base: ModelParams, names: Sequence[str], values: Sequence[float]) -> ModelParams:
    bath, corr, qubit = base.bath, base.corr, base.qubit
    for name, value in zip(names, values):
        if name == "alpha":
            bath = dataclasses.replace(bath, alpha=float(value))
        elif name == "mu":
            bath = dataclasses.replace(bath, mu=float(value))
        elif name == "lambda":
            corr = dataclasses.replace(corr, lam=float(value))
        elif name == "upsilon":
            corr = dataclasses.replace(corr, upsilon=float(value))
        elif name == "omega0":
            qubit = dataclasses.replace(qubit, omega0=float(value))
        else:  # pragma: no cover - rejected earlier
            raise DomainError(f"axis {name!r} cannot override model parameters")
    return ModelParams(bath=bath, corr=corr, qubit=qubit)


def _row_task(args):
    base, names, values, outputs, trapping, qsl_mode, quad = args
    cells: list = list(values)
    error = ""
    params = None
    try:
        params = _apply_axes(base, names, values)
    except DomainError:
        error = "domain_error"
    if "stationary" in outputs:
        if params is None:
            cells += [None, None]
        else:
            try:
                cv = stationary_coherence(params)
                cells += [cv.rel_entropy, cv.l1]
            except DomainError:
                cells += [None, None]
                error = error or "domain_error"
    if "qsl" in outputs:
        if params is None or error:
            cells += [None, None]
        else:
            try:
                res = qsl_ratio(params, trapping, qsl_mode, quad)
                cells += [res.t_c, res.ratio]
            except NoTrappingError:
                cells += [None, None]
                error = "no_trapping"
            except ConvergenceError:
                cells += [None, None]
                error = "non_convergence"
            except DomainError:
                cells += [None, None]
                error = "domain_error"
    cells.append(error)
    return tuple(cells)


def _params_manifest(params: ModelParams) -> dict:
    return {
        "alpha": params.bath.alpha,
        "mu": params.bath.mu,
        "omega_c": params.bath.omega_c,
        "lambda": params.corr.lam,
        "upsilon": params.corr.upsilon,
        "omega0": params.qubit.omega0,
        "ce": [params.qubit.ce.real, params.qubit.ce.imag],
        "cg": [params.qubit.cg.real, params.qubit.cg.imag],
    }


def _specs_manifest(trapping: TrappingSpec, quad: QuadratureSpec, qsl_mode: str) -> dict:
    return {
        "trapping": dataclasses.asdict(trapping),
        "quadrature": dataclasses.asdict(quad),
        "qsl_mode": qsl_mode,
    }


def sweep(
    base: ModelParams,
    axes: Sequence[AxisSpec],
    outputs: Sequence[str] = ("stationary",),
    *,
    trapping: TrappingSpec = TrappingSpec(),
    qsl_mode: str = MODE_PAPER_LITERAL,
    quad: QuadratureSpec = QuadratureSpec(),
    threads: int = 1,
) -> SweepResult:
    """Evaluate the requested quantities on a 1- or 2-axis parameter grid.

    Rows are ordered lexicographically by axis indices (first axis outermost)
    and per-row failures become an error code plus empty cells; the sweep
    itself never aborts on a row.  ``threads`` > 1 (or 0 for one worker per
    CPU) fans rows out to a process pool; assembly order is unchanged.
    """
    axes = tuple(axes)
    if not 1 <= len(axes) <= 2:
        raise DomainError(f"sweep supports 1 or 2 axes, got {len(axes)}")
    names = [ax.name for ax in axes]
    if len(set(names)) != len(names):
        raise DomainError(f"duplicate axis names: {names}")
    if "t" in names:
        raise DomainError("axis 't' is not sweepable: outputs are time-independent")
    outputs = tuple(outputs)
    if not outputs or any(o not in ("stationary", "qsl") for o in outputs):
        raise DomainError(f"outputs must be a non-empty subset of stationary/qsl, got {outputs}")
    if qsl_mode not in QSL_MODES:
        raise DomainError(f"unknown QSL mode {qsl_mode!r}")

    columns: list = list(names)
    if "stationary" in outputs:
        columns += ["c_stationary", "l1_stationary"]
    if "qsl" in outputs:
        columns += ["t_c", "qsl_ratio"]
    columns.append("error_code")

    grids = [ax.values() for ax in axes]
    points = [
        tuple(float(g[i]) for g, i in zip(grids, idx))
        for idx in np.ndindex(*(ax.n for ax in axes))
    ]
    tasks = [(base, tuple(names), vals, outputs, trapping, qsl_mode, quad) for vals in points]

    if threads == 1:
        rows = [_row_task(t) for t in tasks]
    else:
        workers = threads if threads > 0 else None
        chunk = max(1, len(tasks) // (4 * (workers or 8)))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row_task, tasks, chunksize=chunk))

    manifest = {
        "version": __version__,
        "kind": "sweep",
        "model": _params_manifest(base),
        "axes": [dataclasses.asdict(ax) for ax in axes],
        "outputs": list(outputs),
        "columns": columns,
        **_specs_manifest(trapping, quad, qsl_mode),
    }
    return SweepResult(axes=axes, columns=tuple(columns), rows=rows, manifest=manifest)


def _stationary_rel_entropy(base: ModelParams, **over) -> float:
    names, values = zip(*over.items())
    return stationary_coherence(_apply_axes(base, names, values)).rel_entropy


def ect_boundary(
    alpha: float,
    mu: float,
    lambda_grid: AxisSpec,
    *,
    upsilon_max: float = 6.0,
    scan_n: int = 601,
    tol: float = 1e-4,
):
    """Crossings in upsilon of the stationary coherence through its
    uncorrelated baseline, per correlation weight.

    For each lambda on the grid the difference
    C_inf(lambda, upsilon) - C_inf(lambda=0) is scanned on a fine upsilon
    grid over (0, upsilon_max]; every sign change is bisected to ``tol``.
    The enhanced-trapping region between a rising and a falling crossing may
    be empty, a single interval, or several; all crossings are returned.
    """
    if not mu > 0:
        raise DomainError(f"ECT boundary requires a super-Ohmic bath (mu > 0), got mu={mu}")
    if lambda_grid.name != "lambda":
        raise DomainError(f"lambda_grid must sweep 'lambda', got {lambda_grid.name!r}")
    base = ModelParams(bath=BathSpec(alpha=alpha, mu=mu), corr=CorrelationSpec(lam=0.0))
    c0 = stationary_coherence(base).rel_entropy
    u_grid = np.linspace(0.01, upsilon_max, scan_n)

    out = []
    for lam in lambda_grid.values():
        lam = float(lam)
        if lam == 0.0:
            out.append((lam, []))
            continue
        d = np.array(
            [_stationary_rel_entropy(base, **{"lambda": lam, "upsilon": u}) - c0 for u in u_grid]
        )
        crossings = []
        for i in np.nonzero(d[:-1] * d[1:] < 0)[0]:
            lo, hi = float(u_grid[i]), float(u_grid[i + 1])
            f_lo = d[i]
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                f_mid = _stationary_rel_entropy(base, **{"lambda": lam, "upsilon": mid}) - c0
                if (f_mid > 0) == (f_lo > 0):
                    lo, f_lo = mid, f_mid
                else:
                    hi = mid
            crossings.append(0.5 * (lo + hi))
        out.append((lam, crossings))
    return out


def optimize_stationary_mu(
    params: ModelParams,
    bracket: Bracket,
    *,
    coarse_n: int = 101,
    tol: float = 1e-5,
):
    """Maximize the stationary coherence over the Ohmicity exponent.

    A coarse scan picks the starting basin, then golden-section refines it.
    Returns (mu_star, c_star).
    """
    grid = np.linspace(bracket.lo, bracket.hi, coarse_n)

    def objective(mu: float) -> float:
        return -_stationary_rel_entropy(params, mu=mu)

    vals = np.array([objective(m) for m in grid])
    i = int(np.argmin(vals))
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, coarse_n - 1)]
    mu_star, neg_c = minimize_scalar(objective, Bracket(float(lo), float(hi)), tol)
    return mu_star, -neg_c


def optimize_qsl(
    params: ModelParams,
    vars: str,
    box,
    *,
    mode: str = MODE_PAPER_LITERAL,
    trapping: TrappingSpec = _FIGURE_TRAPPING,
    quad: QuadratureSpec = _FIGURE_QUAD,
    coarse_n: int = 50,
    tol: float = 1e-3,
) -> QslOptimum:
    """Minimize the QSL ratio over mu, upsilon, or both jointly.

    ``box`` is a Bracket for single-variable searches or a pair
    (upsilon_bracket, mu_bracket) for ``vars='joint'``.  Points without
    trapping (or failing to converge) count as +inf and are skipped by the
    coarse scan.  The returned record carries the trapping/quadrature/mode
    actually used.
    """
    if vars not in ("mu", "upsilon", "joint"):
        raise DomainError(f"vars must be one of mu/upsilon/joint, got {vars!r}")

    def ratio_at(**over) -> float:
        try:
            p = _apply_axes(params, tuple(over), tuple(over.values()))
            return qsl_ratio(p, trapping, mode, quad).ratio
        except (NoTrappingError, ConvergenceError, DomainError):
            return math.inf

    if vars == "joint":
        box_u, box_mu = box
        (u_star, mu_star), value = minimize_2d(
            lambda u, m: ratio_at(upsilon=u, mu=m), (box_u, box_mu), coarse_n, tol
        )
        arg = {"upsilon": u_star, "mu": mu_star}
    else:
        bracket: Bracket = box
        grid = np.linspace(bracket.lo, bracket.hi, coarse_n)
        vals = np.array([ratio_at(**{vars: g}) for g in grid])
        if not np.any(np.isfinite(vals)):
            raise DomainError(f"QSL ratio is undefined on the whole {vars} bracket {bracket}")
        i = int(np.argmin(vals))
        lo = float(grid[max(i - 1, 0)])
        hi = float(grid[min(i + 1, coarse_n - 1)])
        x_star, value = minimize_scalar(lambda x: ratio_at(**{vars: x}), Bracket(lo, hi), tol)
        arg = {vars: x_star}

    if not math.isfinite(value):
        raise ConvergenceError("QSL optimization did not find a finite minimum")
    return QslOptimum(
        vars=vars,
        arg=arg,
        value=float(value),
        mode=mode,
        omega0=params.qubit.omega0,
        trapping=trapping,
        quad=quad,
    )


def _series_sweep(
    base: ModelParams,
    series_name: str,
    series_values: Sequence[float],
    axis: AxisSpec,
    outputs: Sequence[str],
    trapping: TrappingSpec,
    quad: QuadratureSpec,
    threads: int,
) -> SweepResult:
    # Concatenate one sweep per series value; the series value becomes the
    # leading column (series values need not be uniformly spaced, so they are
    # not an AxisSpec).
    rows: list = []
    columns = None
    for sv in series_values:
        part = sweep(
            _apply_axes(base, (series_name,), (float(sv),)),
            [axis],
            outputs,
            trapping=trapping,
            quad=quad,
            threads=threads,
        )
        columns = part.columns
        rows += [(float(sv),) + r for r in part.rows]
    manifest = {
        "version": __version__,
        "kind": "series_sweep",
        "model": _params_manifest(base),
        "series": {"name": series_name, "values": [float(v) for v in series_values]},
        "axes": [dataclasses.asdict(axis)],
        "outputs": list(outputs),
        "columns": [series_name] + list(columns),
        **_specs_manifest(trapping, quad, MODE_PAPER_LITERAL),
    }
    return SweepResult(
        axes=(axis,), columns=tuple([series_name] + list(columns)), rows=rows, manifest=manifest
    )


def _base(alpha=0.2, mu=1.46, lam=0.0, upsilon=1.5) -> ModelParams:
    return ModelParams(
        bath=BathSpec(alpha=alpha, mu=mu),
        corr=CorrelationSpec(lam=lam, upsilon=upsilon),
        qubit=QubitSpec(),
    )


def figure_dataset(
    figure_id: str,
    *,
    out_dir: str | None = None,
    grid_n: int | None = None,
    line_n: int | None = None,
    threads: int = 1,
) -> SweepResult:
    """Produce the canonical dataset behind one of the nine figures.

    Focal parameters follow the figure conventions: omega_c = 1, omega0 = 0,
    equal superposition weights, alpha = 0.2 unless the figure sweeps it.
    ``grid_n`` controls heatmap resolution (default 200 per side), ``line_n``
    the number of points per curve (default 200).  With ``out_dir`` set, the
    table is written as <id>.csv plus <id>.manifest.json.
    """
    if figure_id not in FIGURE_IDS:
        raise DomainError(f"unknown figure id {figure_id!r}; expected one of {FIGURE_IDS}")
    hn = grid_n or 200
    ln = line_n or 200

    if figure_id in ("fig1a", "fig1b"):
        lam = 0.0 if figure_id == "fig1a" else 1.0
        result = sweep(
            _base(lam=lam),
            [AxisSpec("alpha", 0.01, 1.0, hn), AxisSpec("mu", -0.9, 4.0, hn)],
            ("stationary",),
            threads=threads,
        )
    elif figure_id == "fig1c":
        result = _series_sweep(
            _base(),
            "lambda",
            (0.0, 0.3, 0.6, 1.0),
            AxisSpec("mu", 0.05, 4.0, ln),
            ("stationary",),
            TrappingSpec(),
            QuadratureSpec(),
            threads,
        )
    elif figure_id == "fig1d":
        result = _series_sweep(
            _base(lam=1.0),
            "alpha",
            (0.05, 0.1, 0.2, 0.4, 0.8),
            AxisSpec("mu", 0.05, 4.0, ln),
            ("stationary",),
            TrappingSpec(),
            QuadratureSpec(),
            threads,
        )
    elif figure_id == "fig2a":
        result = sweep(
            _base(),
            [AxisSpec("lambda", 0.0, 1.0, hn), AxisSpec("upsilon", 0.01, 6.0, hn)],
            ("stationary",),
            threads=threads,
        )
        level = stationary_coherence(_base()).rel_entropy
        cols = list(result.columns)
        k = cols.index("error_code")
        cols.insert(k, "ect")
        rows = []
        for r in result.rows:
            c_val = r[2]
            ect = None if c_val is None else int(c_val > level)
            rows.append(r[:k] + (ect,) + r[k:])
        manifest = dict(result.manifest)
        manifest["columns"] = cols
        manifest["contour_level"] = level
        result = SweepResult(result.axes, tuple(cols), rows, manifest)
    elif figure_id == "fig2b":
        lam_axis = AxisSpec("lambda", 0.05, 1.0, line_n or 96)
        boundary = ect_boundary(0.2, 1.46, lam_axis)
        rows = []
        for lam, crossings in boundary:
            if crossings:
                rows.append((lam, len(crossings), min(crossings), max(crossings), ""))
            else:
                rows.append((lam, 0, None, None, "no_ect"))
        columns = ("lambda", "n_crossings", "upsilon_lo", "upsilon_hi", "error_code")
        manifest = {
            "version": __version__,
            "kind": "ect_boundary",
            "model": _params_manifest(_base()),
            "axes": [dataclasses.asdict(lam_axis)],
            "outputs": ["ect_boundary"],
            "columns": list(columns),
            **_specs_manifest(TrappingSpec(), QuadratureSpec(), MODE_PAPER_LITERAL),
        }
        result = SweepResult((lam_axis,), columns, rows, manifest)
    elif figure_id == "fig3a":
        result = _series_sweep(
            _base(upsilon=2.0),
            "lambda",
            (0.0, 0.3, 0.6, 0.9),
            AxisSpec("mu", 1.0, 4.0, ln),
            ("stationary", "qsl"),
            _FIGURE_TRAPPING,
            _FIGURE_QUAD,
            threads,
        )
    elif figure_id == "fig3b":
        result = _series_sweep(
            _base(),
            "lambda",
            (0.1, 0.3, 0.6, 0.9),
            AxisSpec("upsilon", 0.5, 6.0, ln),
            ("stationary", "qsl"),
            _FIGURE_TRAPPING,
            _FIGURE_QUAD,
            threads,
        )
    else:  # fig3c
        result = sweep(
            _base(lam=0.5),
            [AxisSpec("upsilon", 0.5, 5.0, hn), AxisSpec("mu", 0.5, 4.0, hn)],
            ("stationary", "qsl"),
            trapping=_FIGURE_TRAPPING,
            quad=_FIGURE_QUAD,
            threads=threads,
        )

    manifest = dict(result.manifest)
    manifest["figure_id"] = figure_id
    result = SweepResult(result.axes, result.columns, result.rows, manifest)

    if out_dir is not None:
        from .io import write_csv, write_manifest

        import os

        os.makedirs(out_dir, exist_ok=True)
        write_csv(os.path.join(out_dir, f"{figure_id}.csv"), result.columns, result.rows)
        write_manifest(os.path.join(out_dir, f"{figure_id}.manifest.json"), result.manifest)
    return result
