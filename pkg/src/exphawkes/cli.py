"""Command line interface: simulate, fit, gof and experiment subcommands.

Exit codes: 0 success, 2 invalid flags or config values, 3 unreadable or
unwritable files, 4 data or computation failures.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from .core import (
    EventSequence,
    HawkesError,
    METHOD_APPROX,
    METHOD_EXACT,
    validate_events,
    validate_params,
)
from .estimate import FitOptions, fit
from .gof import goodness_of_fit
from .experiment import default_config, load_config, run_experiment, write_rows, write_summary
from .simulate import EndTime, MaxJumps, simulate

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_DATA = 4


class _UsageError(Exception):
    """Bad flag or config values; maps to exit code 2."""


def _params_from_flags(args) -> "ExpHawkesParams":
    try:
        return validate_params(args.lambda0, args.alpha, args.beta)
    except HawkesError as exc:
        raise _UsageError(str(exc)) from exc


def _read_events(path: str, horizon=None) -> EventSequence:
    """Load a one-column CSV of event times (header 'time')."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["time"]:
            raise HawkesError(f"{path}: expected a single 'time' column")
        try:
            times = [float(row[0]) for row in reader if row]
        except (ValueError, IndexError) as exc:
            raise HawkesError(f"{path}: malformed event row: {exc}") from exc
    if horizon is None:
        if not times:
            raise HawkesError(f"{path}: no events and no --horizon given")
        horizon = times[-1]
    return validate_events(times, horizon)


def _write_events(path: str, events: EventSequence) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("time\n")
        for value in events.times.tolist():
            fh.write(format(value, ".17g") + "\n")


def _sidecar_path(output: str) -> str:
    base, ext = os.path.splitext(output)
    candidate = base + ".json"
    return candidate if candidate != output else output + ".meta.json"


def cmd_simulate(args) -> int:
    params = _params_from_flags(args)
    stop = MaxJumps(args.n_max) if args.n_max is not None else EndTime(args.end_time)
    events = simulate(params, stop, args.seed)
    _write_events(args.output, events)
    meta = {
        "lambda0": params.lambda0,
        "alpha": params.alpha,
        "beta": params.beta,
        "seed": args.seed,
        "stop": (
            {"kind": "max_jumps", "n_max": args.n_max}
            if args.n_max is not None
            else {"kind": "end_time", "horizon": args.end_time}
        ),
        "horizon": events.horizon,
        "n_events": len(events),
    }
    with open(_sidecar_path(args.output), "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2)
        fh.write("\n")
    return EXIT_OK


def cmd_fit(args) -> int:
    events = _read_events(args.input, args.horizon)
    kwargs = {"method": args.method}
    if args.start is not None:
        kwargs["start"] = tuple(args.start)
    if args.max_iterations is not None:
        kwargs["max_iterations"] = args.max_iterations
    if args.tolerance is not None:
        kwargs["tolerance"] = args.tolerance
    if args.gradient_step is not None:
        kwargs["gradient_step"] = args.gradient_step
    if args.multistart is not None:
        kwargs["multistart"] = args.multistart
    if args.multistart_seed is not None:
        kwargs["multistart_seed"] = args.multistart_seed
    try:
        options = FitOptions(**kwargs)
    except HawkesError as exc:
        raise _UsageError(str(exc)) from exc
    result = fit(events, events.horizon, options)
    payload = {
        "params": {
            "lambda0": result.params.lambda0,
            "alpha": result.params.alpha,
            "beta": result.params.beta,
        },
        "log_likelihood": result.log_likelihood,
        "method": result.method,
        "converged": result.converged,
        "iterations": result.iterations,
        "start_point": list(result.start_point),
    }
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def cmd_gof(args) -> int:
    params = _params_from_flags(args)
    events = _read_events(args.input, args.horizon)
    report = goodness_of_fit(params, events)
    payload = {
        "statistic": report.ks_statistic,
        "p_value": report.p_value,
        "n": report.sample_size,
    }
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def cmd_experiment(args) -> int:
    if args.config is not None:
        try:
            config = load_config(args.config)
        except (HawkesError, json.JSONDecodeError) as exc:
            raise _UsageError(f"{args.config}: {exc}") from exc
    else:
        config = default_config()
    os.makedirs(args.output_dir, exist_ok=True)
    rows = run_experiment(config, jobs=args.jobs)
    rows_path = os.path.join(args.output_dir, "rows.csv")
    summary_path = os.path.join(args.output_dir, "summary.csv")
    write_rows(rows_path, rows)
    write_summary(summary_path, config, rows)
    n_failed = sum(1 for r in rows if r["status"] != "ok")
    print(f"wrote {len(rows)} rows ({n_failed} failed) to {rows_path}")
    print(f"wrote summary to {summary_path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exphawkes",
        description="Exponential Hawkes processes with excitation or inhibition: "
        "simulation, exact maximum likelihood and goodness of fit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="sample one path by thinning")
    sim.add_argument("--lambda0", type=float, required=True)
    sim.add_argument("--alpha", type=float, required=True)
    sim.add_argument("--beta", type=float, required=True)
    stop = sim.add_mutually_exclusive_group(required=True)
    stop.add_argument("--n-max", type=int, help="stop after this many events")
    stop.add_argument("--end-time", type=float, help="stop at this horizon")
    sim.add_argument("--seed", type=int, required=True)
    sim.add_argument("--output", "-o", required=True, help="event CSV path")
    sim.set_defaults(func=cmd_simulate)

    fit_p = sub.add_parser("fit", help="maximum-likelihood fit of an event CSV")
    fit_p.add_argument("input", help="event CSV (single 'time' column)")
    fit_p.add_argument(
        "--method", choices=[METHOD_EXACT, METHOD_APPROX], default=METHOD_EXACT
    )
    fit_p.add_argument(
        "--horizon", type=float, help="observation horizon, default last event"
    )
    fit_p.add_argument("--start", type=float, nargs=3, metavar=("L0", "A", "B"))
    fit_p.add_argument("--max-iterations", type=int)
    fit_p.add_argument("--tolerance", type=float)
    fit_p.add_argument("--gradient-step", type=float)
    fit_p.add_argument("--multistart", type=int)
    fit_p.add_argument("--multistart-seed", type=int)
    fit_p.set_defaults(func=cmd_fit)

    gof_p = sub.add_parser("gof", help="time-change KS test at given parameters")
    gof_p.add_argument("input", help="event CSV (single 'time' column)")
    gof_p.add_argument("--lambda0", type=float, required=True)
    gof_p.add_argument("--alpha", type=float, required=True)
    gof_p.add_argument("--beta", type=float, required=True)
    gof_p.add_argument(
        "--horizon", type=float, help="observation horizon, default last event"
    )
    gof_p.set_defaults(func=cmd_gof)

    exp = sub.add_parser("experiment", help="Monte-Carlo recovery study")
    exp.add_argument("--config", "-c", help="JSON config, default built-in study")
    exp.add_argument("--output-dir", "-o", required=True)
    exp.add_argument(
        "--jobs", type=int, help="worker processes, default HAWKES_JOBS or CPU count"
    )
    exp.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except HawkesError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
