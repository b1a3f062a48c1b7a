"""Thinning sampler for the exponential Hawkes model, both signs of alpha.

Between candidates the underlying intensity relaxes monotonically toward
the baseline, so max(lambda0, lambda_star(current)) dominates the
conditional intensity on the whole proposal interval.  Candidates are
drawn from that constant rate and accepted with probability
lambda(candidate) / bound; the clock advances to every candidate whether
or not it is accepted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import EventSequence, ExpHawkesParams, HawkesError, NonPositiveTime


@dataclass(frozen=True)
class EndTime:
    """Stop at a fixed horizon; candidates beyond it are discarded."""

    horizon: float

    def __post_init__(self):
        horizon = float(self.horizon)
        if not math.isfinite(horizon) or horizon <= 0.0:
            raise NonPositiveTime(f"horizon must be finite and > 0, got {horizon}")
        object.__setattr__(self, "horizon", horizon)


@dataclass(frozen=True)
class MaxJumps:
    """Stop once n_max events have been accepted."""

    n_max: int

    def __post_init__(self):
        n_max = int(self.n_max)
        if n_max < 1:
            raise HawkesError(f"n_max must be >= 1, got {self.n_max}")
        object.__setattr__(self, "n_max", n_max)


StopCriterion = EndTime | MaxJumps


def child_seed(master_seed: int, index: int) -> int:
    """Deterministic per-stream seed derived from a master seed.

    Uses SeedSequence spawn keys, so streams for distinct indices are
    independent and the mapping is stable across runs and platforms.
    """
    ss = np.random.SeedSequence(entropy=int(master_seed), spawn_key=(int(index),))
    return int(ss.generate_state(1, np.uint64)[0])


def simulate(params: ExpHawkesParams, stop: StopCriterion, seed: int) -> EventSequence:
    """Sample one path by thinning.  O(1) intensity update per candidate."""
    if isinstance(stop, EndTime):
        end_time, n_max = stop.horizon, None
    elif isinstance(stop, MaxJumps):
        end_time, n_max = None, stop.n_max
    else:
        raise HawkesError(f"unknown stop criterion {stop!r}")
    rng = np.random.default_rng(int(seed))
    lam0, alpha, beta = params.lambda0, params.alpha, params.beta
    times: list[float] = []
    t = 0.0
    post = lam0  # underlying intensity at the current clock time
    while True:
        bound = lam0 if post < lam0 else post
        t_cand = t + rng.exponential() / bound
        if end_time is not None and t_cand > end_time:
            break
        star = lam0 + (post - lam0) * math.exp(-beta * (t_cand - t))
        accept = rng.random() < (star if star > 0.0 else 0.0) / bound
        if accept:
            times.append(t_cand)
            post = star + alpha
        else:
            post = star
        t = t_cand
        if accept and n_max is not None and len(times) >= n_max:
            break
    horizon = end_time if end_time is not None else times[-1]
    return EventSequence(np.asarray(times), horizon)


def simulate_batch(
    params: ExpHawkesParams,
    stop: StopCriterion,
    master_seed: int,
    repetitions: int,
) -> list[EventSequence]:
    """repetitions independent paths; path i uses child_seed(master_seed, i).

    The output is a deterministic function of (params, stop, master_seed,
    repetitions) regardless of how the paths are scheduled.
    """
    if int(repetitions) < 1:
        raise HawkesError(f"repetitions must be >= 1, got {repetitions}")
    return [
        simulate(params, stop, child_seed(master_seed, i))
        for i in range(int(repetitions))
    ]
