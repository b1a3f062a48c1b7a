"""Time-change residuals and the KS test against the unit exponential.

If the model is right, the compensator increments between consecutive
events are iid Exp(1) (time-change theorem), so goodness of fit reduces
to a one-sample KS test of those increments.
"""

from __future__ import annotations

import math

import numpy as np

from .core import (
    EmptySample,
    EventSequence,
    ExpHawkesParams,
    GofReport,
    NonFinite,
    TooFewEvents,
)
from .intensity import transformed_times

_KS_TERM_TOL = 1e-12
_KS_MAX_TERMS = 100


def time_change_residuals(theta: ExpHawkesParams, events: EventSequence) -> np.ndarray:
    """Compensator increments Lambda(T_k) - Lambda(T_{k-1}), Lambda(T_1) first."""
    if len(events) < 2:
        raise TooFewEvents(f"residuals need >= 2 events, got {len(events)}")
    lam = transformed_times(theta, events)
    return np.diff(lam, prepend=0.0)


def ks_test_exp1(samples) -> tuple[float, float]:
    """One-sample KS statistic and asymptotic p-value against Exp(1).

    D_n = max_k max(k/n - F(x_(k)), F(x_(k)) - (k-1)/n) with
    F(x) = 1 - exp(-x); p = 2 * sum_j (-1)^(j-1) exp(-2 j^2 n D^2),
    truncated once a term drops below 1e-12 (at most 100 terms) and
    clipped to [0, 1].
    """
    x = np.sort(np.asarray(samples, dtype=float).reshape(-1))
    n = int(x.size)
    if n == 0:
        raise EmptySample("ks_test_exp1 needs a nonempty sample")
    if not np.all(np.isfinite(x)) or x[0] < 0.0:
        raise NonFinite("samples must be finite and >= 0")
    cdf = 1.0 - np.exp(-x)
    k = np.arange(1, n + 1, dtype=float)
    d_plus = float(np.max(k / n - cdf))
    d_minus = float(np.max(cdf - (k - 1.0) / n))
    d = max(d_plus, d_minus, 0.0)
    return d, _ks_p_value(n, d)


def _ks_p_value(n: int, d: float) -> float:
    if d <= 0.0:
        return 1.0
    z = 2.0 * n * d * d
    total = 0.0
    for j in range(1, _KS_MAX_TERMS + 1):
        term = math.exp(-z * j * j)
        total += term if j % 2 else -term
        if term < _KS_TERM_TOL:
            break
    return min(1.0, max(0.0, 2.0 * total))


def goodness_of_fit(theta: ExpHawkesParams, events: EventSequence) -> GofReport:
    """Residuals plus KS test in one report."""
    residuals = time_change_residuals(theta, events)
    statistic, p_value = ks_test_exp1(residuals)
    return GofReport(
        transformed_interarrivals=residuals,
        ks_statistic=statistic,
        p_value=p_value,
        sample_size=int(residuals.size),
    )
