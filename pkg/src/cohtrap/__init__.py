"""cohtrap: exact pure-dephasing dynamics of a qubit with an initially
correlated Ohmic-like bath, coherence measures, coherence trapping, and
quantum-speed-limit times."""

from ._version import __version__
from .coherence import (
    CoherenceValue,
    initial_coherence,
    l1_coherence,
    rel_entropy_coherence,
    stationary_coherence,
)
from .dephasing import (
    BathSpec,
    CorrelationSpec,
    DephasingSample,
    InitConstants,
    ModelParams,
    QubitSpec,
    QubitState,
    corr_terms,
    decay_exponent,
    decay_exponent_ohmic,
    dephasing_derivative,
    dephasing_factor,
    dephasing_sample,
    init_constants,
    max_magnitude,
    reduced_state,
    stationary_magnitude,
)
from .errors import CohtrapError, ConvergenceError, DomainError, NoTrappingError
from .experiments import (
    AxisSpec,
    FIGURE_IDS,
    QslOptimum,
    SweepResult,
    ect_boundary,
    figure_dataset,
    optimize_qsl,
    optimize_stationary_mu,
    sweep,
)
from .mathcore import (
    Bracket,
    QuadratureSpec,
    binary_entropy,
    gamma,
    integrate,
    minimize_2d,
    minimize_scalar,
)
from .qsl import (
    MODE_PAPER_LITERAL,
    MODE_RELATIVE_PURITY,
    QSL_MODES,
    QslResult,
    TrappingSpec,
    qsl_ratio,
    relative_purity_metric,
    trapping_time,
)

__all__ = [
    "__version__",
    "CohtrapError",
    "DomainError",
    "NoTrappingError",
    "ConvergenceError",
    "Bracket",
    "QuadratureSpec",
    "gamma",
    "binary_entropy",
    "integrate",
    "minimize_scalar",
    "minimize_2d",
    "BathSpec",
    "CorrelationSpec",
    "QubitSpec",
    "ModelParams",
    "InitConstants",
    "DephasingSample",
    "QubitState",
    "decay_exponent",
    "decay_exponent_ohmic",
    "corr_terms",
    "init_constants",
    "dephasing_factor",
    "dephasing_derivative",
    "dephasing_sample",
    "stationary_magnitude",
    "reduced_state",
    "max_magnitude",
    "CoherenceValue",
    "rel_entropy_coherence",
    "l1_coherence",
    "stationary_coherence",
    "initial_coherence",
    "MODE_PAPER_LITERAL",
    "MODE_RELATIVE_PURITY",
    "QSL_MODES",
    "TrappingSpec",
    "QslResult",
    "trapping_time",
    "relative_purity_metric",
    "qsl_ratio",
    "AxisSpec",
    "SweepResult",
    "QslOptimum",
    "FIGURE_IDS",
    "sweep",
    "ect_boundary",
    "optimize_stationary_mu",
    "optimize_qsl",
    "figure_dataset",
]
