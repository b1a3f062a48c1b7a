import numpy as np
import pytest

import exphawkes as eh

# Master entropy for the randomized-instance pool shared by the unit and
# acceptance tests (params drawn from the ranges the acceptance criteria
# prescribe, realization simulated at those params).
INSTANCE_SEED = 20260819


def make_instance(index, n_events=50):
    """Randomized (params, events) instance i from the shared pool."""
    rng = np.random.default_rng(
        np.random.SeedSequence(entropy=INSTANCE_SEED, spawn_key=(index,))
    )
    params = eh.validate_params(
        rng.uniform(0.2, 3.0), rng.uniform(-3.0, 1.0), rng.uniform(0.1, 2.0)
    )
    events = eh.simulate(params, eh.MaxJumps(n_events), int(rng.integers(2**63)))
    return params, events


@pytest.fixture(scope="session")
def table1():
    """The default recovery study (6 sets x 100 reps x 2 methods), run once."""
    config = eh.default_config()
    rows = eh.run_experiment(config, jobs=1)
    return config, rows, eh.summarize(config, rows)
