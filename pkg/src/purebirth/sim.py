"""Simulation by geometric waiting times.

A run starting in state 0 with time budget t repeatedly draws the waiting time
G ~ Geo(p_i) of the current state and advances while the budget covers it, so at
most min(n, t) uniforms are consumed per run.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .numerics import to_float
from .pbp import PureBirthProcess


class RngStream:
    """Seeded PCG64 stream that counts the uniforms it hands out."""

    def __init__(self, seed: int | np.random.SeedSequence = 0) -> None:
        seq = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
        self.seed_sequence = seq
        self._gen = np.random.Generator(np.random.PCG64(seq))
        self.draws = 0

    def uniform(self) -> float:
        """Uniform on the open interval (0, 1); an exact 0 is redrawn."""
        while True:
            self.draws += 1
            u = self._gen.random()
            if u > 0.0:
                return u

    def uniforms(self, size: int) -> np.ndarray:
        u = self._gen.random(size)
        self.draws += size
        bad = u == 0.0
        while bad.any():
            count = int(bad.sum())
            u[bad] = self._gen.random(count)
            self.draws += count
            bad = u == 0.0
        return u


def geometric_sample(rng: RngStream, p: float) -> int:
    """ceil(ln U / ln(1 - p)), the number of trials up to the first success."""
    if not 0 < p <= 1:
        raise ValueError(f"success probability {p} outside (0, 1]")
    if p == 1:
        return 1
    g = math.ceil(math.log(rng.uniform()) / math.log1p(-p))
    return max(g, 1)


def simulate_state(rng: RngStream, proc: PureBirthProcess, t: int) -> int:
    """State reached at time t from 0."""
    if t < 0:
        raise ValueError("t must be >= 0")
    p = [to_float(x) for x in proc.p]
    state, budget = 0, t
    while budget > 0 and state < proc.n:
        if p[state] == 0:
            break
        budget -= geometric_sample(rng, p[state])
        if budget >= 0:
            state += 1
    return state


def first_passage_sample(rng: RngStream, proc: PureBirthProcess, k: int) -> int:
    """One draw of the first time state k is reached: a sum of k geometric waits."""
    if not 1 <= k <= proc.n:
        raise ValueError(f"k must be in 1..{proc.n}")
    return sum(geometric_sample(rng, to_float(proc.p[i])) for i in range(k))


def _simulate_batch(p: np.ndarray, n: int, t: int, size: int, rng: RngStream) -> np.ndarray:
    """Vectorised version of :func:`simulate_state` for ``size`` independent runs."""
    state = np.zeros(size, dtype=np.int64)
    budget = np.full(size, t, dtype=np.int64)
    with np.errstate(divide="ignore"):
        log_q = np.log1p(-p)
    active = np.flatnonzero((budget > 0) & (p[0] > 0)) if n > 0 else np.empty(0, dtype=np.int64)
    while active.size:
        ps = p[state[active]]
        u = rng.uniforms(active.size)
        g = np.where(ps >= 1.0, 1.0, np.ceil(np.log(u) / log_q[state[active]]))
        g = np.maximum(g, 1.0)
        # waits longer than the remaining budget end the run; clip before the int cast
        g = np.minimum(g, budget[active] + 1.0).astype(np.int64)
        budget[active] -= g
        moved = budget[active] >= 0
        state[active[moved]] += 1
        keep = moved & (budget[active] > 0) & (state[active] < n)
        active = active[keep]
        active = active[p[state[active]] > 0]
    return state


@dataclass(frozen=True)
class MonteCarloResult:
    N: int
    t: int
    counts: tuple[int, ...]
    pmf: tuple[float, ...]
    mean: float
    mean_se: float
    pmf_se: tuple[float, ...]
    seed: int
    workers: int


def default_workers() -> int:
    """Worker cap from PUREBIRTH_THREADS (default 1)."""
    raw = os.environ.get("PUREBIRTH_THREADS", "1")
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"PUREBIRTH_THREADS must be a positive integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError("PUREBIRTH_THREADS must be >= 1")
    return value


def monte_carlo(
    proc: PureBirthProcess, t: int, N: int, seed: int = 0, workers: int | None = None, chunk: int = 1 << 18
) -> MonteCarloResult:
    """Empirical law of X_t from N runs.

    With one worker the stream is seeded directly by ``seed``; with w workers,
    worker i uses the i-th child of that seed and simulates a fixed share of N,
    so output depends only on (seed, N, w) and the batch size ``chunk``.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if t < 0:
        raise ValueError("t must be >= 0")
    workers = default_workers() if workers is None else workers
    if workers < 1:
        raise ValueError("workers must be >= 1")
    workers = min(workers, N)
    p = np.array([to_float(x) for x in proc.p], dtype=np.float64)
    n = proc.n

    def run(stream: RngStream, size: int) -> np.ndarray:
        counts = np.zeros(n + 1, dtype=np.int64)
        done = 0
        while done < size:
            m = min(chunk, size - done)
            counts += np.bincount(_simulate_batch(p, n, t, m, stream), minlength=n + 1)
            done += m
        return counts

    if workers == 1:
        counts = run(RngStream(seed), N)
    else:
        children = np.random.SeedSequence(seed).spawn(workers)
        shares = [N // workers + (i < N % workers) for i in range(workers)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda args: run(RngStream(args[0]), args[1]), zip(children, shares)))
        counts = np.sum(parts, axis=0)

    freq = counts / N
    states = np.arange(n + 1)
    mean = float(states @ freq)
    var = float(((states - mean) ** 2) @ freq)
    return MonteCarloResult(
        N=N,
        t=t,
        counts=tuple(int(c) for c in counts),
        pmf=tuple(float(f) for f in freq),
        mean=mean,
        mean_se=math.sqrt(var / N),
        pmf_se=tuple(math.sqrt(f * (1 - f) / N) for f in freq),
        seed=seed,
        workers=workers,
    )
