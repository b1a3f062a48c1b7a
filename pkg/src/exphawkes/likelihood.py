"""Exact and approximated log-likelihoods, single O(N) pass each.

Both take the form sum_k log lambda_star(T_k^-) - Lambda(t); they differ
only in the compensator.  The exact version integrates the clipped
intensity using per-segment restart times, the approximated version uses
the unclipped integral, so it never undershoots the exact value.
"""

from __future__ import annotations

import math

import numpy as np

from .core import (
    EventSequence,
    ExpHawkesParams,
    HorizonBeforeLastEvent,
    METHOD_APPROX,
    METHOD_EXACT,
    METHODS,
    HawkesError,
    NonPositiveTime,
)


def _check_horizon(events: EventSequence, t: float) -> None:
    if t <= 0.0:
        raise NonPositiveTime(f"t must be > 0, got {t}")
    if len(events) and t < events.times[-1]:
        raise HorizonBeforeLastEvent(
            f"t = {t} precedes last event {events.times[-1]}"
        )


def _single_pass(lam0, alpha, beta, ts, t, exact, floor):
    """Shared likelihood engine.

    ``floor`` None gives the true likelihood with the -inf convention for
    nonpositive pre-intensities; a positive floor clamps log arguments from
    below (optimizer surrogate).  All exponentials here have nonpositive
    arguments: the restart identity exp(-beta*(restart - T_k)) =
    lambda0 / (lambda0 - post) is used directly, so nothing overflows.
    """
    n = len(ts)
    if n == 0:
        return -lam0 * t
    exp, log = math.exp, math.log
    sum_logs = 0.0
    comp = lam0 * ts[0]  # exact compensator up to the first event
    post = lam0
    prev = 0.0
    restart = 0.0
    decay_at_restart = 1.0  # exp(-beta * (restart - prev))
    first = True
    for t_k in ts:
        if first:
            pre = lam0
            first = False
        else:
            decay = exp(-beta * (t_k - prev))
            pre = lam0 + (post - lam0) * decay
            if exact and t_k > restart:
                seg = lam0 * (t_k - restart) + (post - lam0) * (
                    decay_at_restart - decay
                ) / beta
                if seg > 0.0:
                    comp += seg
        if floor is None:
            if pre <= 0.0:
                return -math.inf
            sum_logs += log(pre)
        else:
            sum_logs += log(pre if pre > floor else floor)
        post = pre + alpha
        if post < 0.0:
            restart = t_k + math.log1p(-post / lam0) / beta
            decay_at_restart = lam0 / (lam0 - post)
        else:
            restart = t_k
            decay_at_restart = 1.0
        prev = t_k
    if exact:
        if t > restart:
            decay = exp(-beta * (t - prev))
            seg = lam0 * (t - restart) + (post - lam0) * (decay_at_restart - decay) / beta
            if seg > 0.0:
                comp += seg
    else:
        arr = np.asarray(ts)
        comp = lam0 * t + (alpha / beta) * float(np.sum(1.0 - np.exp(-beta * (t - arr))))
    return sum_logs - comp


def exact_log_likelihood(theta: ExpHawkesParams, events: EventSequence, t: float) -> float:
    """Log-likelihood with the exact (clipped-intensity) compensator.

    Returns -inf when any event-time pre-intensity is <= 0, and
    -lambda0 * t for an empty sequence.
    """
    _check_horizon(events, t)
    return _single_pass(
        theta.lambda0, theta.alpha, theta.beta, events.times.tolist(), t,
        exact=True, floor=None,
    )


def approx_log_likelihood(theta: ExpHawkesParams, events: EventSequence, t: float) -> float:
    """Log-likelihood with the approximated (unclipped) compensator."""
    _check_horizon(events, t)
    return _single_pass(
        theta.lambda0, theta.alpha, theta.beta, events.times.tolist(), t,
        exact=False, floor=None,
    )


def clamped_objective(
    theta: ExpHawkesParams,
    events: EventSequence,
    t: float,
    floor: float = 1e-10,
    method: str = METHOD_EXACT,
) -> float:
    """Optimizer surrogate: log arguments clamped to max(x, floor).

    Always finite; never reported as a likelihood value.
    """
    if method not in METHODS:
        raise HawkesError(f"unknown method {method!r}")
    return _single_pass(
        theta.lambda0, theta.alpha, theta.beta, events.times.tolist(), t,
        exact=(method == METHOD_EXACT), floor=float(floor),
    )
