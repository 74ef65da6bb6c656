"""Self-contained numerical kernels: Euler gamma function, binary entropy,
adaptive Simpson quadrature, and derivative-free minimizers.

Everything here is a pure function of its arguments, safe for concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ConvergenceError, DomainError

__all__ = [
    "Bracket",
    "QuadratureSpec",
    "gamma",
    "binary_entropy",
    "integrate",
    "minimize_scalar",
    "minimize_2d",
]


@dataclass(frozen=True)
class Bracket:
    """A finite search interval lo < hi."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise DomainError(f"bracket endpoints must be finite, got {self}")
        if not self.lo < self.hi:
            raise DomainError(f"bracket requires lo < hi, got {self}")


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerance and recursion budget for adaptive quadrature."""

    abs_tol: float = 1e-9
    max_depth: int = 40

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise DomainError(f"abs_tol must be > 0, got {self.abs_tol}")
        if self.max_depth < 1:
            raise DomainError(f"max_depth must be >= 1, got {self.max_depth}")


# Lanczos approximation, g = 7, 9 coefficients (double-precision set in wide
# circulation; relative error of the positive branch is a few 1e-14).
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _gamma_positive(x: float) -> float:
    # Lanczos series, valid for x >= 0.5.
    z = x - 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, 9):
        acc += _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    if (z + 0.5) * math.log(t) > 690.0:
        # t**(z+0.5) alone would overflow; assemble in log space instead.
        log_g = 0.5 * math.log(2.0 * math.pi) + (z + 0.5) * math.log(t) - t + math.log(acc)
        return math.exp(log_g) if log_g < 709.0 else math.inf
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * acc


def gamma(x: float) -> float:
    """Euler gamma function on (-1, 0) or (0, +inf).

    The negative branch is evaluated through the reflection identity
    gamma(x) = pi / (sin(pi x) * gamma(1 - x)); arguments in (0, 0.5) use the
    same identity to stay on the well-conditioned side of the Lanczos series.
    """
    x = float(x)
    if math.isnan(x):
        raise DomainError("gamma: argument is NaN")
    if x == 0.0 or x <= -1.0:
        raise DomainError(f"gamma: argument must lie in (-1, 0) or (0, inf), got {x}")
    if x >= 0.5:
        return _gamma_positive(x)
    return math.pi / (math.sin(math.pi * x) * _gamma_positive(1.0 - x))


def binary_entropy(p: float) -> float:
    """Shannon entropy of a {p, 1-p} distribution in bits, with 0 log 0 = 0."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"binary_entropy: p must lie in [0, 1], got {p}")
    if p == 0.0 or p == 1.0:
        return 0.0
    q = 1.0 - p
    return -(p * math.log2(p) + q * math.log2(q))


def _eval_batch(f: Callable, x: np.ndarray) -> np.ndarray:
    """Evaluate f on an array, falling back to a scalar loop if f is not
    vectorized."""
    try:
        y = np.asarray(f(x), dtype=float)
        if y.shape == x.shape:
            return y
    except (TypeError, ValueError):
        pass
    return np.array([float(f(v)) for v in x])


def integrate(f: Callable, a: float, b: float, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Adaptive Simpson integral of ``f`` over [a, b].

    Subdivision halves the local tolerance and accepts a panel once the
    classic Richardson estimate |S2 - S1| <= 15 * tol holds, so the final
    result is within ``spec.abs_tol`` of the true integral for smooth
    integrands.  ``f`` is called on numpy arrays of abscissae (all pending
    panels are evaluated in one batch); plain scalar callables work too, at
    a per-point cost.

    Raises ConvergenceError if some panel still fails its tolerance share at
    ``spec.max_depth`` subdivisions.
    """
    a = float(a)
    b = float(b)
    if not a <= b:
        raise DomainError(f"integrate: requires a <= b, got a={a}, b={b}")
    if a == b:
        return 0.0

    mid = 0.5 * (a + b)
    fa, fm, fb = _eval_batch(f, np.array([a, mid, b]))
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)

    # Pending panels, processed breadth-first in one batched f call per level.
    lo = np.array([a])
    hi = np.array([b])
    flo = np.array([fa])
    fmid = np.array([fm])
    fhi = np.array([fb])
    est = np.array([whole])
    tol = np.array([spec.abs_tol])

    total = 0.0
    for depth in range(spec.max_depth + 1):
        m = 0.5 * (lo + hi)
        lm = 0.5 * (lo + m)
        rm = 0.5 * (m + hi)
        fvals = _eval_batch(f, np.concatenate([lm, rm]))
        flm, frm = fvals[: lm.size], fvals[lm.size:]
        h6 = (hi - lo) / 12.0  # panel half-width / 6
        left = h6 * (flo + 4.0 * flm + fmid)
        right = h6 * (fmid + 4.0 * frm + fhi)
        delta = left + right - est
        done = np.abs(delta) <= 15.0 * tol
        total += float(np.sum((left + right + delta / 15.0)[done]))
        if np.all(done):
            return total
        if depth == spec.max_depth:
            raise ConvergenceError(
                f"integrate: {int(np.sum(~done))} panel(s) failed to meet "
                f"abs_tol={spec.abs_tol} at max_depth={spec.max_depth}"
            )
        keep = ~done
        lo, m_k, hi = lo[keep], m[keep], hi[keep]
        flo_k, fm_k, fhi_k = flo[keep], fmid[keep], fhi[keep]
        flm_k, frm_k = flm[keep], frm[keep]
        half_tol = 0.5 * tol[keep]
        lo = np.concatenate([lo, m_k])
        hi = np.concatenate([m_k, hi])
        flo = np.concatenate([flo_k, fm_k])
        fhi = np.concatenate([fm_k, fhi_k])
        fmid = np.concatenate([flm_k, frm_k])
        est = np.concatenate([left[keep], right[keep]])
        tol = np.concatenate([half_tol, half_tol])
    raise ConvergenceError("integrate: unreachable")  # pragma: no cover


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def minimize_scalar(f: Callable[[float], float], bracket: Bracket, tol: float = 1e-8):
    """Golden-section minimization of a unimodal ``f`` on ``bracket``.

    Unimodality is the caller's responsibility (pre-scan with a coarse grid
    when in doubt).  Returns ``(argmin, f(argmin))`` with the argmin within
    ``tol`` of the true minimizer.
    """
    if not tol > 0:
        raise DomainError(f"minimize_scalar: tol must be > 0, got {tol}")
    lo, hi = bracket.lo, bracket.hi
    x1 = hi - _INVPHI * (hi - lo)
    x2 = lo + _INVPHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    max_iter = max(200, int(math.log(max(tol / (hi - lo), 1e-300)) / math.log(_INVPHI)) + 8)
    for _ in range(max_iter):
        if hi - lo <= 2.0 * tol:
            x = 0.5 * (lo + hi)
            return x, f(x)
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INVPHI * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INVPHI * (hi - lo)
            f2 = f(x2)
    raise ConvergenceError(
        f"minimize_scalar: interval {hi - lo!r} still above tol={tol} after {max_iter} iterations"
    )


def minimize_2d(
    f: Callable[[float, float], float],
    box: Sequence[Bracket],
    coarse_n: int = 50,
    tol: float = 1e-4,
):
    """Coarse grid scan followed by coordinate descent with shrinking steps.

    The ``coarse_n`` x ``coarse_n`` scan picks the best starting point (ties
    broken toward the lexicographically smallest grid point), then each
    coordinate is moved in +/- step sweeps, halving the steps whenever no
    move improves, until both steps drop below ``tol``.  ``f`` may return
    ``math.inf`` to mark infeasible points.  Deterministic for fixed inputs.
    """
    bx, by = box
    if coarse_n < 2:
        raise DomainError(f"minimize_2d: coarse_n must be >= 2, got {coarse_n}")
    if not tol > 0:
        raise DomainError(f"minimize_2d: tol must be > 0, got {tol}")
    xs = np.linspace(bx.lo, bx.hi, coarse_n)
    ys = np.linspace(by.lo, by.hi, coarse_n)
    vals = np.array([[f(x, y) for y in ys] for x in xs])
    if not np.any(np.isfinite(vals)):
        raise DomainError("minimize_2d: objective is infinite on the whole coarse grid")
    i, j = np.unravel_index(np.argmin(vals), vals.shape)  # first (smallest) index wins ties
    x, y = float(xs[i]), float(ys[j])
    best = float(vals[i, j])

    step_x = (bx.hi - bx.lo) / (coarse_n - 1)
    step_y = (by.hi - by.lo) / (coarse_n - 1)
    budget = 100_000
    while step_x >= tol or step_y >= tol:
        moved = False
        for cand_x, cand_y in (
            (x - step_x, y),
            (x + step_x, y),
            (x, y - step_y),
            (x, y + step_y),
        ):
            cand_x = min(max(cand_x, bx.lo), bx.hi)
            cand_y = min(max(cand_y, by.lo), by.hi)
            if (cand_x, cand_y) == (x, y):
                continue
            budget -= 1
            if budget <= 0:
                raise ConvergenceError("minimize_2d: evaluation budget exhausted")
            v = f(cand_x, cand_y)
            if v < best:
                x, y, best = cand_x, cand_y, v
                moved = True
        if not moved:
            step_x *= 0.5
            step_y *= 0.5
    return (x, y), best
