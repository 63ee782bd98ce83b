import math
from fractions import Fraction

import numpy as np
import pytest

from purebirth.occupancy import occupancy_model, pmf
from purebirth.pbp import hitting_time_moments, make_process
from purebirth.sim import (
    RngStream,
    default_workers,
    first_passage_sample,
    geometric_sample,
    monte_carlo,
    simulate_state,
)


def test_geometric_certain_success():
    rng = RngStream(1)
    assert all(geometric_sample(rng, 1.0) == 1 for _ in range(100))
    assert rng.draws == 0


@pytest.mark.slow
def test_geometric_mean_and_support():
    rng = RngStream(7)
    samples = np.array([geometric_sample(rng, 0.5) for _ in range(10**6)])
    assert samples.min() >= 1
    sigma = math.sqrt((1 - 0.5) / 0.25 / samples.size)
    assert abs(samples.mean() - 2) < 4 * sigma


def test_geometric_rejects_bad_probability():
    for bad in (0.0, -0.1, 1.5):
        with pytest.raises(ValueError):
            geometric_sample(RngStream(0), bad)


def test_geometric_near_one():
    rng = RngStream(3)
    assert all(geometric_sample(rng, 1 - 1e-17) == 1 for _ in range(100))


def test_simulate_state_examples():
    rng = RngStream(5)
    proc = occupancy_model(3).process
    assert all(simulate_state(rng, proc, 0) == 0 for _ in range(50))
    assert all(simulate_state(rng, proc, t) >= 1 for t in range(1, 6) for _ in range(200))


def test_simulate_state_draw_budget():
    rng = RngStream(11)
    for proc in (occupancy_model(4).process, make_process([Fraction(1, 3), Fraction(1, 2), Fraction(1, 5), Fraction(0)])):
        n = proc.n
        for i in range(10**5):
            t = i % 9
            before = rng.draws
            state = simulate_state(rng, proc, t)
            assert 0 <= state <= min(n, t)
            assert rng.draws - before <= min(n, t)


def test_single_sample():
    res = monte_carlo(occupancy_model(4).process, 3, 1, seed=9)
    assert sum(res.counts) == 1
    assert 1 <= res.counts.index(1) <= 3


def test_result_invariants():
    res = monte_carlo(occupancy_model(6).process, 5, 5000, seed=2)
    assert sum(res.counts) == 5000 and min(res.counts) >= 0
    assert math.isclose(sum(res.pmf), 1.0)


def test_time_zero_all_mass_at_start():
    res = monte_carlo(occupancy_model(5).process, 0, 1000, seed=4)
    assert res.counts == (1000, 0, 0, 0, 0, 0)


def test_determinism_single_worker():
    proc = occupancy_model(7).process
    assert monte_carlo(proc, 9, 20000, seed=42) == monte_carlo(proc, 9, 20000, seed=42)
    assert monte_carlo(proc, 9, 20000, seed=42) != monte_carlo(proc, 9, 20000, seed=43)


def test_determinism_multi_worker():
    proc = occupancy_model(7).process
    a = monte_carlo(proc, 9, 30001, seed=42, workers=3)
    assert a == monte_carlo(proc, 9, 30001, seed=42, workers=3)
    assert sum(a.counts) == 30001 and a.workers == 3


def test_chunked_runs_reproducible():
    proc = occupancy_model(5).process
    res = monte_carlo(proc, 6, 10000, seed=1, chunk=1000)
    assert res == monte_carlo(proc, 6, 10000, seed=1, chunk=1000)
    assert sum(res.counts) == 10000


def test_batch_matches_scalar_law():
    # the vectorised batch and the scalar loop sample the same law
    proc = make_process([Fraction(1, 2), Fraction(1, 3), Fraction(0)])
    rng = RngStream(8)
    scalar = np.bincount([simulate_state(rng, proc, 4) for _ in range(40000)], minlength=3) / 40000
    batch = np.array(monte_carlo(proc, 4, 40000, seed=8).pmf)
    assert np.all(np.abs(scalar - batch) < 5 * np.sqrt(2 * 0.25 / 40000))


def test_workers_env(monkeypatch):
    monkeypatch.setenv("PUREBIRTH_THREADS", "3")
    assert default_workers() == 3
    monkeypatch.setenv("PUREBIRTH_THREADS", "zero")
    with pytest.raises(ValueError):
        default_workers()


def test_per_state_frequencies():
    n, t, N = 5, 8, 10**6
    res = monte_carlo(occupancy_model(n).process, t, N, seed=123)
    for k in range(n + 1):
        exact = float(pmf(n, k, t))
        se = math.sqrt(exact * (1 - exact) / N)
        assert abs(res.pmf[k] - exact) <= 5 * se + 1e-12


@pytest.mark.slow
def test_first_passage_mean():
    proc = occupancy_model(3).process
    rng = RngStream(17)
    samples = np.array([first_passage_sample(rng, proc, 3) for _ in range(10**6)])
    moments = hitting_time_moments(proc, 3)
    sigma = math.sqrt(float(moments.variance) / samples.size)
    assert abs(samples.mean() - float(moments.mean)) < 4 * sigma
    assert samples.min() >= 3
