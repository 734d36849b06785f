"""Mean-field chaos toolkit for a qubit-coupled optomechanical cavity.

Thin wrapper over the C++ core; see the README for the CLI and file formats.
"""

from ._core import (  # noqa: F401
    AnalysisSettings,
    AttractorKind,
    AttractorLabel,
    BifurcationRow,
    ConfigError,
    IntegratorSettings,
    MleEstimate,
    MleMethod,
    MleSettings,
    MleSign,
    ModelParams,
    Observables,
    PeakSet,
    PhysicalKind,
    State6,
    StepMethod,
    StiffnessError,
    SweepAxis,
    SweepMode,
    __version__,
    analyze_point,
    classify_mle,
    find_peaks,
    grid,
    jacobian,
    linear_steady_state,
    mle,
    mle_lorenz,
    newton_fixed_point,
    observables,
    preset_json,
    preset_names,
    rhs,
    run_sweep,
    simulate,
    to_physical,
)
