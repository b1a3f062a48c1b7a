"""Domain types, validation and errors for the exponential Hawkes model.

The model is a univariate point process with conditional intensity

    lambda(t) = max(0, lambda0 + sum_{T_k <= t} alpha * exp(-beta * (t - T_k)))

where ``alpha`` may be negative (inhibition).  Everything downstream works
with the *underlying* intensity (the expression inside the max), which
follows a one-dimensional Markov recursion between events.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Canonical names for the two likelihood flavours.  "exact" integrates the
# clipped intensity, "approx" integrates the underlying intensity as if it
# never went negative.
METHOD_EXACT = "exact"
METHOD_APPROX = "approx"
METHODS = (METHOD_EXACT, METHOD_APPROX)


class HawkesError(ValueError):
    """Base class for all validation and computation errors raised here."""


class NonPositiveBaseline(HawkesError):
    """lambda0 must be strictly positive."""


class NonPositiveDecay(HawkesError):
    """beta must be strictly positive."""


class NonFinite(HawkesError):
    """A parameter, time or sample is NaN or infinite."""


class NotStrictlyIncreasing(HawkesError):
    """Event times must be strictly increasing."""


class NonPositiveTime(HawkesError):
    """Event times and horizons must be strictly positive."""


class HorizonBeforeLastEvent(HawkesError):
    """The observation horizon cannot precede the last event."""


class EmptySequence(HawkesError):
    """Operation needs at least one event."""


class TooFewEvents(HawkesError):
    """Operation needs more events than were supplied."""


class OptimizerFailure(HawkesError):
    """No optimizer start produced a finite objective."""


class NonFiniteObjective(HawkesError):
    """Objective evaluated to NaN or infinity during differentiation."""


class EmptySample(HawkesError):
    """A statistical test was handed an empty sample."""


@dataclass(frozen=True)
class ExpHawkesParams:
    """Parameter triple (lambda0, alpha, beta); lambda0 > 0, beta > 0."""

    lambda0: float
    alpha: float
    beta: float

    def __post_init__(self):
        for name in ("lambda0", "alpha", "beta"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise NonFinite(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.lambda0 <= 0.0:
            raise NonPositiveBaseline(f"lambda0 must be > 0, got {self.lambda0}")
        if self.beta <= 0.0:
            raise NonPositiveDecay(f"beta must be > 0, got {self.beta}")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.lambda0, self.alpha, self.beta)


# eq=False: the times array makes field-wise equality a footgun.
@dataclass(frozen=True, eq=False)
class EventSequence:
    """Strictly increasing positive event times observed on (0, horizon]."""

    times: np.ndarray
    horizon: float

    def __post_init__(self):
        times = np.array(self.times, dtype=float).reshape(-1)
        horizon = float(self.horizon)
        if not math.isfinite(horizon) or not np.all(np.isfinite(times)):
            raise NonFinite("event times and horizon must be finite")
        if horizon <= 0.0:
            raise NonPositiveTime(f"horizon must be > 0, got {horizon}")
        if times.size and times[0] <= 0.0:
            raise NonPositiveTime("event times must be > 0")
        if times.size > 1 and not np.all(np.diff(times) > 0.0):
            raise NotStrictlyIncreasing("event times must be strictly increasing")
        if times.size and times[-1] > horizon:
            raise HorizonBeforeLastEvent(
                f"horizon {horizon} precedes last event {times[-1]}"
            )
        times.flags.writeable = False
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "horizon", horizon)

    def __len__(self) -> int:
        return int(self.times.size)


@dataclass(frozen=True)
class EventState:
    """Intensity bookkeeping attached to one event T_k.

    lambda_star_pre is the underlying intensity just before the event,
    lambda_star_post includes the jump alpha, and restart_time is the
    instant the underlying intensity crosses back to zero (equal to the
    event time itself when the post-jump intensity is already >= 0).
    """

    event_time: float
    lambda_star_pre: float
    lambda_star_post: float
    restart_time: float


@dataclass(frozen=True)
class FitResult:
    """Outcome of one maximum-likelihood fit."""

    params: ExpHawkesParams
    log_likelihood: float
    method: str
    converged: bool
    iterations: int
    start_point: tuple[float, float, float]


@dataclass(frozen=True)
class GofReport:
    """Time-change residuals plus the KS test against Exp(1)."""

    transformed_interarrivals: np.ndarray
    ks_statistic: float
    p_value: float
    sample_size: int


def validate_params(lambda0, alpha, beta) -> ExpHawkesParams:
    """Validate and pack a parameter triple."""
    return ExpHawkesParams(float(lambda0), float(alpha), float(beta))


def validate_events(times, horizon) -> EventSequence:
    """Validate raw event times against a horizon and pack them."""
    return EventSequence(np.asarray(times, dtype=float), float(horizon))
