"""One-sided relaxed Bell-CHSH bounds, saturating models and a brute-force oracle."""

from relaxbell.bounds import (
    BoundResult,
    Regime,
    chsh_bound,
    feasible,
    implied_indeterminism,
    ld_bound,
    mi_bound,
    min_indeterminism_for_violation,
    min_md_for_violation,
    min_signaling_for_violation,
    tradeoff_grid,
)
from relaxbell.errors import DomainError, ParameterError, ValidationError
from relaxbell.hvmodel import (
    CONTEXTS,
    Context,
    HiddenVariableModel,
    LocalDecomposition,
    SampleResult,
    chsh,
    correlator,
    correlator_range,
    joint_probabilities,
    load_model,
    sample_experiment,
    save_model,
)
from relaxbell.metrics import (
    RelaxationProfile,
    indeterminism_degrees,
    measurement_dependence_degrees,
    profile,
    signaling_degrees,
)
from relaxbell.oracle import (
    SearchReport,
    TightnessReport,
    check_tightness,
    max_chsh_search,
    random_constrained_model,
)
from relaxbell.saturate import combined_saturating_model, mi_saturating_model, table1_model

__version__ = "0.1.0"
