"""Box-constrained maximum-likelihood fitting via L-BFGS-B.

The optimizer maximizes the clamped objective (finite everywhere), with
gradients from central finite differences.  The reported log-likelihood
is the unclamped exact or approximated value re-evaluated at the
solution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .core import (
    ExpHawkesParams,
    FitResult,
    HawkesError,
    HorizonBeforeLastEvent,
    METHOD_EXACT,
    METHODS,
    NonFiniteObjective,
    OptimizerFailure,
    TooFewEvents,
)
from .likelihood import (
    _single_pass,
    approx_log_likelihood,
    exact_log_likelihood,
)

# Saturation bound for the optimizer's view of the clamped objective.  The
# approximated surrogate is unbounded above in the deep-inhibition direction
# (alpha -> -inf), so diverging fits would otherwise race to float overflow
# and feed NaN iterates back into the optimizer.  Any realistic likelihood
# is orders of magnitude inside this bound, so the clip only flattens the
# runaway plateau.
_SATURATION = 1e12
_CLAMP_FLOOR = 1e-10


@dataclass(frozen=True)
class FitOptions:
    """Optimizer configuration.

    multistart > 0 adds that many extra random starts (log-uniform
    lambda0 and beta in [0.01, 10], uniform alpha in [-5, 5]) drawn from
    multistart_seed; the best final objective wins.
    """

    method: str = METHOD_EXACT
    start: tuple[float, float, float] = (1.0, 0.0, 1.0)
    lower_bounds: tuple[float, float, float] = (1e-8, -math.inf, 1e-8)
    max_iterations: int = 500
    gradient_step: float = 1e-6
    tolerance: float = 1e-9
    multistart: int = 0
    multistart_seed: int = 0

    def __post_init__(self):
        if self.method not in METHODS:
            raise HawkesError(f"unknown method {self.method!r}")
        if len(self.start) != 3 or len(self.lower_bounds) != 3:
            raise HawkesError("start and lower_bounds must have length 3")
        if not all(math.isfinite(v) for v in self.start):
            raise HawkesError("start must be finite")
        if any(s < b for s, b in zip(self.start, self.lower_bounds)):
            raise HawkesError("start violates lower_bounds")
        if self.max_iterations < 1:
            raise HawkesError("max_iterations must be >= 1")
        if self.gradient_step <= 0.0 or self.tolerance <= 0.0:
            raise HawkesError("gradient_step and tolerance must be > 0")
        if self.multistart < 0:
            raise HawkesError("multistart must be >= 0")


def finite_difference_gradient(objective, point, rel_step, bounds=None) -> np.ndarray:
    """Central-difference gradient with per-coordinate relative steps.

    Step h_i = rel_step * max(1, |x_i|); falls back to a one-sided
    difference when a bound is closer than h_i.  ``bounds`` is an optional
    list of (lower, upper) pairs, None meaning unbounded.
    """
    x = np.asarray(point, dtype=float)
    grad = np.empty(x.size)
    for i in range(x.size):
        h = rel_step * max(1.0, abs(x[i]))
        lo, hi = (None, None) if bounds is None else bounds[i]
        lo = -math.inf if lo is None else lo
        hi = math.inf if hi is None else hi
        if x[i] - h >= lo and x[i] + h <= hi:
            xp, xm = x.copy(), x.copy()
            xp[i] += h
            xm[i] -= h
            grad[i] = (objective(xp) - objective(xm)) / (2.0 * h)
        elif x[i] + h <= hi:
            xp = x.copy()
            xp[i] += h
            grad[i] = (objective(xp) - objective(x)) / h
        else:
            xm = x.copy()
            xm[i] -= h
            grad[i] = (objective(x) - objective(xm)) / h
        if not math.isfinite(grad[i]):
            raise NonFiniteObjective(
                f"objective not finite near {x.tolist()} (coordinate {i})"
            )
    return grad


def _random_starts(options: FitOptions) -> list[tuple[float, float, float]]:
    rng = np.random.default_rng(options.multistart_seed)
    starts = []
    for _ in range(options.multistart):
        lam0 = math.exp(rng.uniform(math.log(0.01), math.log(10.0)))
        alpha = rng.uniform(-5.0, 5.0)
        beta = math.exp(rng.uniform(math.log(0.01), math.log(10.0)))
        starts.append((lam0, alpha, beta))
    return starts


def fit(events, t: float, options: FitOptions | None = None) -> FitResult:
    """Maximize the clamped objective over (lambda0, alpha, beta).

    Needs at least 2 events and t at or past the last one.  Raises
    OptimizerFailure only if every start yields a non-finite objective.
    """
    if options is None:
        options = FitOptions()
    if len(events) < 2:
        raise TooFewEvents(f"fit needs >= 2 events, got {len(events)}")
    if t < events.times[-1]:
        raise HorizonBeforeLastEvent(
            f"t = {t} precedes last event {events.times[-1]}"
        )

    lo = options.lower_bounds
    bounds = [(None if math.isinf(b) else b, None) for b in lo]
    ts = events.times.tolist()
    exact = options.method == METHOD_EXACT

    def objective(x):
        lam0, alpha, beta = float(x[0]), float(x[1]), float(x[2])
        if not (math.isfinite(lam0) and math.isfinite(alpha) and math.isfinite(beta)):
            return -_SATURATION
        value = _single_pass(lam0, alpha, beta, ts, t, exact=exact, floor=_CLAMP_FLOOR)
        if math.isnan(value):
            return -_SATURATION
        return min(_SATURATION, max(-_SATURATION, value))

    def neg(x):
        return -objective(x)

    def neg_grad(x):
        return -finite_difference_gradient(objective, x, options.gradient_step, bounds)

    best = None
    for start in [tuple(map(float, options.start))] + _random_starts(options):
        if not math.isfinite(objective(np.asarray(start))):
            continue
        res = minimize(
            neg,
            np.asarray(start),
            method="L-BFGS-B",
            jac=neg_grad,
            bounds=bounds,
            options={"maxiter": options.max_iterations, "ftol": options.tolerance},
        )
        if not np.all(np.isfinite(res.x)):
            continue
        if best is None or res.fun < best[0].fun:
            best = (res, start)
    if best is None:
        raise OptimizerFailure("no start produced a finite objective")

    res, start = best
    params = ExpHawkesParams(*res.x)
    if options.method == METHOD_EXACT:
        loglik = exact_log_likelihood(params, events, t)
    else:
        loglik = approx_log_likelihood(params, events, t)
    return FitResult(
        params=params,
        log_likelihood=float(loglik),
        method=options.method,
        converged=bool(res.success),
        iterations=int(res.nit),
        start_point=start,
    )
