"""Trapping-time detection and quantum-speed-limit (QSL) times along the
dephasing trajectory.

The trapping time t_c is the first grid time after which |factor(t)| stays
inside a tolerance band around its stationary value for the rest of the
grid.  The QSL time for evolving from the initial state to the trapped state
is reported as the ratio tau_qsl / t_c, in one of two conventions:

* ``paper_literal``:   |factor(0)| * |factor(t_c) - factor(0)| / L
* ``relative_purity``: |Re[conj(factor(0)) * (factor(t_c) - factor(0))]| / L

where L = integral of |d factor/dt| over [0, t_c] (the path length of the
trajectory).  The second form is what the relative-purity metric
B(rho_0, rho_tau) = |tr(rho_0 rho_tau) - tr(rho_0^2)| produces exactly for
equal superposition weights, where the singular-value means reduce to
mean(|dfactor|)/2; both are bounded by 1 through the triangle inequality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dephasing import (
    ModelParams,
    QubitState,
    dephasing_derivative,
    dephasing_factor,
    stationary_magnitude,
)
from .errors import ConvergenceError, DomainError, NoTrappingError
from .mathcore import QuadratureSpec, integrate

__all__ = [
    "MODE_PAPER_LITERAL",
    "MODE_RELATIVE_PURITY",
    "QSL_MODES",
    "TrappingSpec",
    "QslResult",
    "trapping_time",
    "relative_purity_metric",
    "qsl_ratio",
]

MODE_PAPER_LITERAL = "paper_literal"
MODE_RELATIVE_PURITY = "relative_purity"
QSL_MODES = (MODE_PAPER_LITERAL, MODE_RELATIVE_PURITY)


@dataclass(frozen=True)
class TrappingSpec:
    """Tolerance band and search grid for trapping-time detection.

    ``t_max`` of None resolves to 50 / omega_c at use.  The band is
    abs_tol + rel_tol * |stationary magnitude|; tightening rel_tol can only
    move t_c later.
    """

    rel_tol: float = 1e-3
    abs_tol: float = 1e-6
    t_max: float | None = None
    grid_n: int = 5000

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise DomainError("trapping tolerances must be > 0")
        if self.t_max is not None and not self.t_max > 0:
            raise DomainError(f"t_max must be > 0, got {self.t_max}")
        if self.grid_n < 100:
            raise DomainError(f"grid_n must be >= 100, got {self.grid_n}")

    def resolve_t_max(self, omega_c: float) -> float:
        return self.t_max if self.t_max is not None else 50.0 / omega_c


@dataclass(frozen=True)
class QslResult:
    """Trapping time, QSL ratio, and the two sides of the bound."""

    t_c: float
    ratio: float
    numerator: float
    denominator: float
    mode: str


def trapping_time(params: ModelParams, spec: TrappingSpec = TrappingSpec()) -> float:
    """First grid time after which |factor| stays within the tolerance band.

    Raises NoTrappingError for mu <= 0 (no trapping exists) and
    ConvergenceError if the band is not reached by t_max.
    """
    if params.bath.mu <= 0:
        raise NoTrappingError(
            f"coherence trapping requires a super-Ohmic bath (mu > 0), got mu={params.bath.mu}"
        )
    t_max = spec.resolve_t_max(params.bath.omega_c)
    grid = np.linspace(0.0, t_max, spec.grid_n)
    mags = np.abs(dephasing_factor(grid, params))
    target = stationary_magnitude(params)
    band = spec.abs_tol + spec.rel_tol * target
    outside = np.abs(mags - target) > band
    if outside[-1]:
        raise ConvergenceError(
            f"|factor| not within the trapping band by t_max={t_max} "
            f"(gap {abs(mags[-1] - target):.3e} vs band {band:.3e})"
        )
    bad = np.nonzero(outside)[0]
    idx = int(bad[-1]) + 1 if bad.size else 1  # t_c is strictly positive
    return float(grid[idx])


def relative_purity_metric(rho0: QubitState, rho_tau: QubitState) -> float:
    """|tr(rho_0 rho_tau) - tr(rho_0^2)| from the closed 2x2 traces."""
    cross = (
        rho0.rho_ee * rho_tau.rho_ee
        + rho0.rho_gg * rho_tau.rho_gg
        + 2.0 * (rho0.rho_eg * rho_tau.rho_eg.conjugate()).real
    )
    self0 = rho0.rho_ee**2 + rho0.rho_gg**2 + 2.0 * abs(rho0.rho_eg) ** 2
    return abs(cross - self0)


def qsl_ratio(
    params: ModelParams,
    spec: TrappingSpec = TrappingSpec(),
    mode: str = MODE_PAPER_LITERAL,
    quad: QuadratureSpec = QuadratureSpec(),
) -> QslResult:
    """QSL time over trapping time for the evolution to the trapped state.

    Requires equal superposition weights (|ce|^2 = |cg|^2 = 1/2), where both
    conventions reduce to simple functionals of the dephasing factor.  The
    denominator is the trajectory path length, integrated adaptively with the
    analytic derivative.
    """
    if mode not in QSL_MODES:
        raise DomainError(f"unknown QSL mode {mode!r}; expected one of {QSL_MODES}")
    qubit = params.qubit
    if abs(abs(qubit.ce) ** 2 - 0.5) > 1e-9 or abs(abs(qubit.cg) ** 2 - 0.5) > 1e-9:
        raise DomainError("qsl_ratio requires equal superposition weights |ce| = |cg| = 1/sqrt(2)")
    t_c = trapping_time(params, spec)
    f0 = complex(dephasing_factor(0.0, params))
    ft = complex(dephasing_factor(t_c, params))
    if mode == MODE_PAPER_LITERAL:
        numerator = abs(f0 * (ft - f0))
    else:
        numerator = abs((f0.conjugate() * (ft - f0)).real)
    denominator = integrate(
        lambda t: np.abs(dephasing_derivative(t, params)), 0.0, t_c, quad
    )
    if denominator <= 0.0:
        raise DomainError(
            "dephasing factor is constant on [0, t_c]; the QSL ratio is undefined "
            "(zero path length)"
        )
    ratio = numerator / denominator
    if math.isnan(ratio):
        raise ConvergenceError("QSL ratio evaluated to NaN")
    return QslResult(t_c=t_c, ratio=ratio, numerator=numerator, denominator=denominator, mode=mode)
