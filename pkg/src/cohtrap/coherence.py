"""Coherence quantifiers for qubit states: relative entropy of coherence and
the l1 norm of coherence, plus their values along the dephasing trajectory.

For a qubit, C_rel = S(diag(rho)) - S(rho) with base-2 entropies, and the
2x2 eigenvalues are available in closed form, (1 +/- d)/2 with
d = sqrt((rho_ee - rho_gg)^2 + 4 |rho_eg|^2).  C_l1 = 2 |rho_eg|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .dephasing import ModelParams, QubitState, reduced_state, stationary_magnitude
from .errors import DomainError
from .mathcore import binary_entropy

__all__ = [
    "CoherenceValue",
    "rel_entropy_coherence",
    "l1_coherence",
    "stationary_coherence",
    "initial_coherence",
]

_EIG_SLACK = 1e-9  # tolerated fp excursion of eigenvalues outside [0, 1]


@dataclass(frozen=True)
class CoherenceValue:
    """Relative entropy of coherence (bits) and l1 norm, both in [0, 1]."""

    rel_entropy: float
    l1: float


def _validate(state: QubitState) -> None:
    if abs(state.rho_ee + state.rho_gg - 1.0) > 1e-9:
        raise DomainError(f"state trace must be 1, got {state.rho_ee + state.rho_gg!r}")
    if state.rho_ee < -1e-12 or state.rho_gg < -1e-12:
        raise DomainError("state populations must be nonnegative")
    if abs(state.rho_eg) ** 2 > state.rho_ee * state.rho_gg + _EIG_SLACK:
        raise DomainError(
            f"positivity violated: |rho_eg|^2 = {abs(state.rho_eg) ** 2!r} exceeds "
            f"rho_ee * rho_gg = {state.rho_ee * state.rho_gg!r}"
        )


def _clipped_entropy(p: float) -> float:
    # Absorb fp excursions of at most _EIG_SLACK before the domain check.
    if -_EIG_SLACK < p < 0.0:
        p = 0.0
    elif 1.0 < p < 1.0 + _EIG_SLACK:
        p = 1.0
    return binary_entropy(p)


def rel_entropy_coherence(state: QubitState) -> float:
    """Relative entropy of coherence S(diag(rho)) - S(rho), in bits."""
    _validate(state)
    d = math.sqrt((state.rho_ee - state.rho_gg) ** 2 + 4.0 * abs(state.rho_eg) ** 2)
    s_full = _clipped_entropy(0.5 * (1.0 + d))
    s_diag = _clipped_entropy(state.rho_ee)
    return s_diag - s_full


def l1_coherence(state: QubitState) -> float:
    """l1 norm of coherence: the summed moduli of the off-diagonal elements."""
    _validate(state)
    return 2.0 * abs(state.rho_eg)


def stationary_coherence(params: ModelParams) -> CoherenceValue:
    """Both coherence measures of the t -> infinity reduced state."""
    qubit = params.qubit
    state = QubitState(
        rho_ee=abs(qubit.ce) ** 2,
        rho_gg=abs(qubit.cg) ** 2,
        rho_eg=qubit.ce * qubit.cg.conjugate() * stationary_magnitude(params),
    )
    return CoherenceValue(
        rel_entropy=rel_entropy_coherence(state),
        l1=l1_coherence(state),
    )


def initial_coherence(params: ModelParams) -> float:
    """Relative entropy of coherence at t = 0.

    For equal weights ce = cg = 1/sqrt(2) this reduces to
    1 - binary_entropy((1 + factor0) / 2); general weights go through the
    reduced state.  Any lam > 0 strictly lowers it below the lam = 0 value.
    """
    return rel_entropy_coherence(reduced_state(0.0, params))
