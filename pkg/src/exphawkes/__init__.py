"""Exponential Hawkes processes with excitation or inhibition.

Exact maximum-likelihood estimation via restart-time compensators,
thinning simulation, and time-change goodness of fit.
"""

from .core import (
    EmptySample,
    EmptySequence,
    EventSequence,
    EventState,
    ExpHawkesParams,
    FitResult,
    GofReport,
    HawkesError,
    HorizonBeforeLastEvent,
    METHOD_APPROX,
    METHOD_EXACT,
    METHODS,
    NonFinite,
    NonFiniteObjective,
    NonPositiveBaseline,
    NonPositiveDecay,
    NonPositiveTime,
    NotStrictlyIncreasing,
    OptimizerFailure,
    TooFewEvents,
    validate_events,
    validate_params,
)
from .estimate import FitOptions, finite_difference_gradient, fit
from .experiment import (
    DEFAULT_PARAMETER_SETS,
    ExperimentConfig,
    config_from_dict,
    default_config,
    load_config,
    run_experiment,
    summarize,
    write_rows,
    write_summary,
)
from .gof import goodness_of_fit, ks_test_exp1, time_change_residuals
from .intensity import (
    build_event_states,
    compensator,
    compensator_lm,
    conditional_intensity_at,
    segment_compensator,
    transformed_times,
    underlying_intensity_at,
    zero_time_fraction,
)
from .likelihood import approx_log_likelihood, clamped_objective, exact_log_likelihood
from .simulate import EndTime, MaxJumps, StopCriterion, child_seed, simulate, simulate_batch

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_PARAMETER_SETS",
    "EmptySample",
    "EmptySequence",
    "EndTime",
    "EventSequence",
    "EventState",
    "ExpHawkesParams",
    "ExperimentConfig",
    "FitOptions",
    "FitResult",
    "GofReport",
    "HawkesError",
    "HorizonBeforeLastEvent",
    "MaxJumps",
    "METHOD_APPROX",
    "METHOD_EXACT",
    "METHODS",
    "NonFinite",
    "NonFiniteObjective",
    "NonPositiveBaseline",
    "NonPositiveDecay",
    "NonPositiveTime",
    "NotStrictlyIncreasing",
    "OptimizerFailure",
    "StopCriterion",
    "TooFewEvents",
    "approx_log_likelihood",
    "build_event_states",
    "child_seed",
    "clamped_objective",
    "compensator",
    "compensator_lm",
    "conditional_intensity_at",
    "config_from_dict",
    "default_config",
    "exact_log_likelihood",
    "finite_difference_gradient",
    "fit",
    "goodness_of_fit",
    "ks_test_exp1",
    "load_config",
    "run_experiment",
    "segment_compensator",
    "simulate",
    "simulate_batch",
    "summarize",
    "time_change_residuals",
    "transformed_times",
    "underlying_intensity_at",
    "validate_events",
    "validate_params",
    "write_rows",
    "write_summary",
    "zero_time_fraction",
]
