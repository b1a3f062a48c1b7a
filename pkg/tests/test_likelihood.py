import math

import numpy as np
import pytest

import exphawkes as eh
from conftest import make_instance

EX_SEGMENT = 1.0 - math.log(2.0) + 2.0 * math.exp(-2.0)


def test_empty_sequence_value():
    p = eh.validate_params(1.5, -0.5, 2.0)
    empty = eh.validate_events([], 4.0)
    assert eh.exact_log_likelihood(p, empty, 4.0) == -6.0
    assert eh.approx_log_likelihood(p, empty, 4.0) == -6.0


def test_single_event_closed_form():
    p = eh.validate_params(1.0, -2.0, 1.0)
    ev = eh.validate_events([1.0], 3.0)
    expected = -(1.0 + EX_SEGMENT)  # log lambda0 = 0
    assert eh.exact_log_likelihood(p, ev, 3.0) == pytest.approx(expected, rel=1e-12)
    expected_lm = -(1.0 + 2.0 * math.exp(-2.0))
    assert eh.approx_log_likelihood(p, ev, 3.0) == pytest.approx(expected_lm, rel=1e-12)


def test_poisson_special_case():
    p = eh.validate_params(2.0, 0.0, 1.0)
    ev = eh.validate_events([0.5, 1.0, 2.5], 3.0)
    expected = 3.0 * math.log(2.0) - 6.0
    assert eh.exact_log_likelihood(p, ev, 3.0) == pytest.approx(expected, rel=1e-14)
    assert eh.approx_log_likelihood(p, ev, 3.0) == pytest.approx(expected, rel=1e-14)


def test_negative_pre_intensity_gives_minus_inf():
    # The second event lands deep in the cooldown window where the
    # underlying intensity is still negative.
    p = eh.validate_params(1.0, -5.0, 1.0)
    ev = eh.validate_events([1.0, 1.01], 2.0)
    assert eh.exact_log_likelihood(p, ev, 2.0) == -math.inf
    assert eh.approx_log_likelihood(p, ev, 2.0) == -math.inf


def test_matches_intensity_module_assembly():
    # Same quantity assembled from the O(N^2) building blocks: a log of the
    # pre-event underlying intensity per event minus the compensator.
    for i in range(12):
        params, events = make_instance(i)
        t = events.horizon
        states = eh.build_event_states(params, events)
        logs = sum(math.log(s.lambda_star_pre) for s in states)
        ref_exact = logs - eh.compensator(params, events, t)
        ref_approx = logs - eh.compensator_lm(params, events, t)
        assert eh.exact_log_likelihood(params, events, t) == pytest.approx(
            ref_exact, rel=1e-9
        )
        assert eh.approx_log_likelihood(params, events, t) == pytest.approx(
            ref_approx, rel=1e-9
        )


def test_approx_never_undershoots_exact():
    # The unclipped compensator is a lower bound on the clipped one, so the
    # approximated log-likelihood is an upper bound on the exact one.
    for i in range(15):
        params, events = make_instance(i)
        t = events.horizon
        exact = eh.exact_log_likelihood(params, events, t)
        approx = eh.approx_log_likelihood(params, events, t)
        assert exact <= approx + 1e-9 * max(1.0, abs(approx))
        if params.alpha >= 0.0:
            assert approx == pytest.approx(exact, rel=1e-12)


def test_clamped_objective_values():
    p = eh.validate_params(1.0, -5.0, 1.0)
    ev = eh.validate_events([1.0, 1.01], 2.0)
    # First log is log(1), the second hits the floor; both events sit
    # inside the first cooldown window so the exact compensator is just
    # lambda0 * T_1.
    assert eh.clamped_objective(p, ev, 2.0) == pytest.approx(
        math.log(1e-10) - 1.0, rel=1e-12
    )
    assert eh.clamped_objective(p, ev, 2.0, floor=1e-6) == pytest.approx(
        math.log(1e-6) - 1.0, rel=1e-12
    )
    with pytest.raises(eh.HawkesError):
        eh.clamped_objective(p, ev, 2.0, method="fast")


def test_clamped_objective_equals_likelihood_when_floor_inactive():
    for i in range(10):
        params, events = make_instance(i)
        t = events.horizon
        assert eh.clamped_objective(params, events, t) == eh.exact_log_likelihood(
            params, events, t
        )
        assert eh.clamped_objective(
            params, events, t, method=eh.METHOD_APPROX
        ) == eh.approx_log_likelihood(params, events, t)


def test_clamped_objective_monotone_in_floor():
    p = eh.validate_params(1.0, -5.0, 1.0)
    ev = eh.validate_events([1.0, 1.01], 2.0)
    floors = [1e-12, 1e-10, 1e-6, 1e-2]
    values = [eh.clamped_objective(p, ev, 2.0, floor=f) for f in floors]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_true_parameters_beat_perturbed():
    p = eh.validate_params(1.05, -0.75, 0.8)
    q = eh.validate_params(1.05 * 1.35, -0.75 * 0.6, 0.8 * 1.5)
    wins = 0
    for i in range(100):
        ev = eh.simulate(p, eh.MaxJumps(200), eh.child_seed(606, i))
        t = ev.horizon
        wins += eh.exact_log_likelihood(p, ev, t) > eh.exact_log_likelihood(q, ev, t)
    assert wins >= 95


def test_horizon_validation():
    p = eh.validate_params(1.0, -0.5, 1.0)
    ev = eh.validate_events([1.0, 2.0], 2.0)
    with pytest.raises(eh.HorizonBeforeLastEvent):
        eh.exact_log_likelihood(p, ev, 1.5)
    with pytest.raises(eh.NonPositiveTime):
        eh.approx_log_likelihood(p, ev, 0.0)
    # The optimizer surrogate accepts any positive t; no last-event check.
    assert math.isfinite(eh.clamped_objective(p, ev, 1.5))
