"""Underlying intensity, restart times and the two compensators.

Between events the underlying intensity relaxes exponentially toward the
baseline:

    lambda_star(t) = lambda0 + (lambda_star(T_k) - lambda0) * exp(-beta * (t - T_k))

for t in (T_k, T_{k+1}].  When an inhibitory jump drives it negative the
conditional intensity stays at zero until the restart time

    T_k^star = T_k + log((lambda0 - lambda_star(T_k)) / lambda0) / beta

and the exact compensator only accumulates mass after T_k^star.  The
approximated compensator integrates the underlying intensity without
clipping, which is the classical self-exciting formula.
"""

from __future__ import annotations

import math

import numpy as np

from .core import (
    EmptySequence,
    EventSequence,
    EventState,
    ExpHawkesParams,
    NonPositiveTime,
)


def build_event_states(params: ExpHawkesParams, events: EventSequence) -> list[EventState]:
    """Per-event pre/post intensities and restart times, one O(N) pass."""
    lam0, alpha, beta = params.lambda0, params.alpha, params.beta
    states = []
    post = lam0  # underlying intensity carried from the previous event
    prev = None
    for t_k in events.times.tolist():
        if prev is None:
            pre = lam0
        else:
            pre = lam0 + (post - lam0) * math.exp(-beta * (t_k - prev))
        post = pre + alpha
        if post < 0.0:
            # log1p keeps the root accurate when the jump barely undershoots.
            restart = t_k + math.log1p(-post / lam0) / beta
        else:
            restart = t_k
        states.append(EventState(t_k, pre, post, restart))
        prev = t_k
    return states


def underlying_intensity_at(params: ExpHawkesParams, events: EventSequence, t: float) -> float:
    """Underlying (possibly negative) intensity at t, direct summation.

    Right-continuous: an event at exactly t contributes its jump.
    """
    past = events.times[events.times <= t]
    if past.size == 0:
        return float(params.lambda0)
    kernel = np.exp(-params.beta * (t - past))
    return float(params.lambda0 + params.alpha * kernel.sum())


def conditional_intensity_at(params: ExpHawkesParams, events: EventSequence, t: float) -> float:
    """Conditional intensity max(0, lambda_star(t))."""
    return max(0.0, underlying_intensity_at(params, events, t))


def segment_compensator(
    params: ExpHawkesParams,
    event_time: float,
    lambda_star_post: float,
    restart_time: float,
    tau: float,
) -> float:
    """Integral of the clipped intensity over (event_time, tau].

    Zero whenever tau <= restart_time, which also covers a restart that
    falls beyond the next event.
    """
    if tau <= restart_time:
        return 0.0
    lam0, beta = params.lambda0, params.beta
    value = lam0 * (tau - restart_time) + (lambda_star_post - lam0) / beta * (
        math.exp(-beta * (restart_time - event_time))
        - math.exp(-beta * (tau - event_time))
    )
    return max(0.0, value)


def compensator(params: ExpHawkesParams, events: EventSequence, t: float) -> float:
    """Exact compensator Lambda(t), integral of the clipped intensity."""
    if t < 0.0:
        raise NonPositiveTime(f"t must be >= 0, got {t}")
    times = events.times
    n_before = int(np.searchsorted(times, t, side="right"))
    if n_before == 0:
        return float(params.lambda0 * t)
    states = build_event_states(params, events)
    total = params.lambda0 * times[0]
    for i in range(n_before - 1):
        s = states[i]
        total += segment_compensator(
            params, s.event_time, s.lambda_star_post, s.restart_time, times[i + 1]
        )
    s = states[n_before - 1]
    total += segment_compensator(
        params, s.event_time, s.lambda_star_post, s.restart_time, t
    )
    return float(total)


def compensator_lm(params: ExpHawkesParams, events: EventSequence, t: float) -> float:
    """Approximated compensator: underlying intensity integrated unclipped.

    lambda0 * t + (alpha / beta) * sum_k (1 - exp(-beta * (t - T_k))).
    Coincides with the exact compensator when alpha >= 0 and never
    exceeds it.
    """
    if t < 0.0:
        raise NonPositiveTime(f"t must be >= 0, got {t}")
    past = events.times[events.times <= t]
    total = params.lambda0 * t
    if past.size:
        total += (params.alpha / params.beta) * float(
            np.sum(1.0 - np.exp(-params.beta * (t - past)))
        )
    return float(total)


def transformed_times(params: ExpHawkesParams, events: EventSequence) -> np.ndarray:
    """Compensator evaluated at every event time, cumulative O(N) pass."""
    if len(events) == 0:
        raise EmptySequence("transformed_times needs at least one event")
    states = build_event_states(params, events)
    out = np.empty(len(states))
    acc = params.lambda0 * states[0].event_time
    out[0] = acc
    for i in range(len(states) - 1):
        s = states[i]
        acc += segment_compensator(
            params, s.event_time, s.lambda_star_post, s.restart_time,
            states[i + 1].event_time,
        )
        out[i + 1] = acc
    return out


def zero_time_fraction(params: ExpHawkesParams, events: EventSequence, t: float) -> float:
    """Fraction of (0, t] on which the conditional intensity is zero.

    Sums (min(restart_k, T_{k+1}, t) - T_k)+ over events whose post-jump
    intensity is negative; T_{k+1} means the next event time or t.
    """
    if t <= 0.0:
        raise NonPositiveTime(f"t must be > 0, got {t}")
    states = build_event_states(params, events)
    total = 0.0
    for i, s in enumerate(states):
        if s.lambda_star_post >= 0.0:
            continue
        nxt = states[i + 1].event_time if i + 1 < len(states) else t
        total += max(0.0, min(s.restart_time, nxt, t) - s.event_time)
    return total / t
