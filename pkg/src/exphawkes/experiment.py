"""Monte-Carlo parameter-recovery study over a grid of parameter sets.

For every (parameter set, repetition) one path is simulated up to n_max
events, fitted with each requested method, and scored: relative errors
per coordinate, KS p-value of the time-change residuals at the fitted
parameters, and the zero-intensity time fraction at the true parameters.
Seeding is nested (master -> set -> repetition), so results do not
depend on scheduling or on the number of worker processes.
"""

from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import (
    ExpHawkesParams,
    HawkesError,
    METHOD_APPROX,
    METHOD_EXACT,
    METHODS,
    validate_params,
)
from .estimate import FitOptions, fit
from .gof import goodness_of_fit
from .intensity import zero_time_fraction
from .simulate import MaxJumps, child_seed, simulate

DEFAULT_PARAMETER_SETS = (
    (0.5, -0.001, 0.4),
    (0.5, -0.2, 0.4),
    (1.05, -0.75, 0.8),
    (2.43, -0.98, 0.4),
    (2.85, -2.5, 1.8),
    (1.6, -0.75, 0.1),
)

ROW_FIELDS = (
    "set_id",
    "rep",
    "method",
    "lambda0_hat",
    "alpha_hat",
    "beta_hat",
    "loglik",
    "rel_err_lambda0",
    "rel_err_alpha",
    "rel_err_beta",
    "p_value",
    "zero_frac",
    "status",
)

SUMMARY_FIELDS = (
    "set_id",
    "method",
    "n_ok",
    "lambda0_true",
    "alpha_true",
    "beta_true",
    "mean_lambda0_hat",
    "mean_alpha_hat",
    "mean_beta_hat",
    "mean_p_value",
    "mean_zero_frac",
    "median_rel_err_lambda0",
    "median_rel_err_alpha",
    "median_rel_err_beta",
)


@dataclass(frozen=True)
class ExperimentConfig:
    parameter_sets: tuple[ExpHawkesParams, ...]
    repetitions: int = 100
    n_max: int = 200
    master_seed: int = 1
    methods: tuple[str, ...] = (METHOD_EXACT, METHOD_APPROX)

    def __post_init__(self):
        sets = tuple(
            p if isinstance(p, ExpHawkesParams) else validate_params(*p)
            for p in self.parameter_sets
        )
        if not sets:
            raise HawkesError("parameter_sets must be nonempty")
        object.__setattr__(self, "parameter_sets", sets)
        if int(self.repetitions) < 1:
            raise HawkesError("repetitions must be >= 1")
        if int(self.n_max) < 1:
            raise HawkesError("n_max must be >= 1")
        object.__setattr__(self, "repetitions", int(self.repetitions))
        object.__setattr__(self, "n_max", int(self.n_max))
        object.__setattr__(self, "master_seed", int(self.master_seed))
        methods = tuple(self.methods)
        if not methods or len(set(methods)) != len(methods):
            raise HawkesError("methods must be a nonempty list without duplicates")
        for m in methods:
            if m not in METHODS:
                raise HawkesError(f"unknown method {m!r}")
        object.__setattr__(self, "methods", methods)


def default_config() -> ExperimentConfig:
    return ExperimentConfig(parameter_sets=DEFAULT_PARAMETER_SETS)


def config_from_dict(data: dict) -> ExperimentConfig:
    """Build a config from the JSON layout used by the CLI."""
    try:
        sets = tuple(
            validate_params(p["lambda0"], p["alpha"], p["beta"])
            for p in data["parameter_sets"]
        )
    except (KeyError, TypeError) as exc:
        raise HawkesError(f"malformed parameter_sets: {exc}") from exc
    kwargs = {}
    for key in ("repetitions", "n_max", "master_seed"):
        if key in data:
            kwargs[key] = data[key]
    if "methods" in data:
        kwargs["methods"] = tuple(data["methods"])
    return ExperimentConfig(parameter_sets=sets, **kwargs)


def load_config(path: str) -> ExperimentConfig:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise HawkesError("config must be a JSON object")
    return config_from_dict(data)


def _failed_row(set_id, rep, method, zero_frac):
    nan = float("nan")
    return {
        "set_id": set_id,
        "rep": rep,
        "method": method,
        "lambda0_hat": nan,
        "alpha_hat": nan,
        "beta_hat": nan,
        "loglik": nan,
        "rel_err_lambda0": nan,
        "rel_err_alpha": nan,
        "rel_err_beta": nan,
        "p_value": nan,
        "zero_frac": zero_frac,
        "status": "failed",
    }


def _rel_err(estimate, truth):
    if truth == 0.0:
        return math.inf if estimate != truth else 0.0
    return abs(estimate - truth) / abs(truth)


def _run_task(task):
    """One (set, repetition): simulate once, fit with every method."""
    set_id, truth_tuple, rep, seed, n_max, methods = task
    truth = ExpHawkesParams(*truth_tuple)
    events = simulate(truth, MaxJumps(n_max), seed)
    t = events.horizon
    zero_frac = zero_time_fraction(truth, events, t)
    rows = []
    for method in methods:
        try:
            result = fit(events, t, FitOptions(method=method))
            est = result.params
            if not all(
                math.isfinite(v) for v in (est.lambda0, est.alpha, est.beta)
            ):
                raise HawkesError("non-finite estimates")
            report = goodness_of_fit(est, events)
            rows.append(
                {
                    "set_id": set_id,
                    "rep": rep,
                    "method": method,
                    "lambda0_hat": est.lambda0,
                    "alpha_hat": est.alpha,
                    "beta_hat": est.beta,
                    "loglik": result.log_likelihood,
                    "rel_err_lambda0": _rel_err(est.lambda0, truth.lambda0),
                    "rel_err_alpha": _rel_err(est.alpha, truth.alpha),
                    "rel_err_beta": _rel_err(est.beta, truth.beta),
                    "p_value": report.p_value,
                    "zero_frac": zero_frac,
                    "status": "ok",
                }
            )
        except HawkesError:
            rows.append(_failed_row(set_id, rep, method, zero_frac))
    return rows


def resolve_jobs(jobs=None) -> int:
    """Explicit argument, then HAWKES_JOBS, then the CPU count."""
    if jobs is not None:
        return max(1, int(jobs))
    env = os.environ.get("HAWKES_JOBS", "").strip()
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_experiment(config: ExperimentConfig, jobs=None) -> list[dict]:
    """All rows for the study, sorted by (set_id, rep, method)."""
    jobs = resolve_jobs(jobs)
    tasks = []
    for set_id, truth in enumerate(config.parameter_sets):
        set_seed = child_seed(config.master_seed, set_id)
        for rep in range(config.repetitions):
            tasks.append(
                (
                    set_id,
                    truth.as_tuple(),
                    rep,
                    child_seed(set_seed, rep),
                    config.n_max,
                    config.methods,
                )
            )
    if jobs == 1:
        nested = [_run_task(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            nested = list(pool.map(_run_task, tasks, chunksize=4))
    rows = [row for group in nested for row in group]
    rows.sort(key=lambda r: (r["set_id"], r["rep"], r["method"]))
    return rows


def summarize(config: ExperimentConfig, rows: list[dict]) -> list[dict]:
    """Per (set, method) aggregates over the rows with status ok."""
    out = []
    for set_id, truth in enumerate(config.parameter_sets):
        for method in sorted(config.methods):
            group = [
                r for r in rows
                if r["set_id"] == set_id and r["method"] == method and r["status"] == "ok"
            ]

            def agg(fn, field):
                values = [r[field] for r in group]
                return float(fn(values)) if values else float("nan")

            out.append(
                {
                    "set_id": set_id,
                    "method": method,
                    "n_ok": len(group),
                    "lambda0_true": truth.lambda0,
                    "alpha_true": truth.alpha,
                    "beta_true": truth.beta,
                    "mean_lambda0_hat": agg(np.mean, "lambda0_hat"),
                    "mean_alpha_hat": agg(np.mean, "alpha_hat"),
                    "mean_beta_hat": agg(np.mean, "beta_hat"),
                    "mean_p_value": agg(np.mean, "p_value"),
                    "mean_zero_frac": agg(np.mean, "zero_frac"),
                    "median_rel_err_lambda0": agg(np.median, "rel_err_lambda0"),
                    "median_rel_err_alpha": agg(np.median, "rel_err_alpha"),
                    "median_rel_err_beta": agg(np.median, "rel_err_beta"),
                }
            )
    return out


def _format_value(value):
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _write_csv(path: str, fields, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(fields)
        for row in rows:
            writer.writerow([_format_value(row[f]) for f in fields])


def write_rows(path: str, rows: list[dict]) -> None:
    _write_csv(path, ROW_FIELDS, rows)


def write_summary(path: str, config: ExperimentConfig, rows: list[dict]) -> None:
    _write_csv(path, SUMMARY_FIELDS, summarize(config, rows))
