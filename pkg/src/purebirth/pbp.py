"""Discrete-time pure birth processes on states 0..n.

From state k the chain moves to k+1 with probability p_k and stays with
q_k = 1 - p_k; state n is absorbing.  Everything here is generic over the
scalar backends in :mod:`purebirth.numerics`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .numerics import LogFloat, Scalar, common_backend, convert, one, to_float, zero
from .sympoly import SYLVESTER_GAP_TOL, h_complete, h_sylvester


@dataclass(frozen=True)
class PureBirthProcess:
    p: tuple[Scalar, ...]
    q: tuple[Scalar, ...]

    @property
    def n(self) -> int:
        return len(self.p) - 1

    @property
    def backend(self) -> str:
        return common_backend(self.p)

    def with_backend(self, backend: str) -> "PureBirthProcess":
        return make_process([convert(x, backend) for x in self.p])

    def shifted(self, r: int) -> "PureBirthProcess":
        """The chain restricted to states r..n, relabelled 0..n-r."""
        if not 0 <= r < self.n:
            raise ValueError(f"shift {r} outside 0..{self.n - 1}")
        return PureBirthProcess(self.p[r:], self.q[r:])


@dataclass(frozen=True)
class BidiagonalMatrix:
    diagonal: tuple[Scalar, ...]
    superdiagonal: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        if len(self.superdiagonal) != len(self.diagonal) - 1:
            raise ValueError("superdiagonal must be one shorter than the diagonal")

    @property
    def dim(self) -> int:
        return len(self.diagonal)

    def to_dense(self) -> list[list[Scalar]]:
        z = zero(common_backend(self.diagonal))
        rows = [[z] * self.dim for _ in range(self.dim)]
        for i, d in enumerate(self.diagonal):
            rows[i][i] = d
        for i, s in enumerate(self.superdiagonal):
            rows[i][i + 1] = s
        return rows

    def left_multiply(self, v: Sequence[Scalar]) -> list[Scalar]:
        """Row vector times this matrix, O(dim)."""
        out = [v[0] * self.diagonal[0]]
        for j in range(1, self.dim):
            out.append(v[j - 1] * self.superdiagonal[j - 1] + v[j] * self.diagonal[j])
        return out

    def top_row_power(self, t: int) -> list[Scalar]:
        """Row 0 of this matrix to the power t, by repeated row-vector propagation."""
        backend = common_backend(self.diagonal)
        v = [one(backend)] + [zero(backend)] * (self.dim - 1)
        for _ in range(t):
            v = self.left_multiply(v)
        return v


@dataclass(frozen=True)
class StateDistribution:
    t: int
    probs: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        backend = common_backend(self.probs)
        if backend == "exact":
            if any(x < 0 for x in self.probs):
                raise ValueError("negative probability")
            if sum(self.probs) != 1:
                raise ValueError("probabilities must sum to 1")
        elif backend == "float":
            if any(x < 0 for x in self.probs) or abs(math.fsum(self.probs) - 1) > 1e-12:
                raise ValueError("float probabilities must be nonnegative and sum to 1 within 1e-12")

    def mean(self) -> Scalar:
        return sum((k * x for k, x in enumerate(self.probs[1:], start=1)), self.probs[0] * 0)

    def variance(self) -> Scalar:
        m = self.mean()
        second = sum((k * k * x for k, x in enumerate(self.probs[1:], start=1)), self.probs[0] * 0)
        return second - m * m


@dataclass(frozen=True)
class HittingTimeMoments:
    k: int
    mean: Scalar
    variance: Scalar


def make_process(p: Sequence[Scalar | str], backend: str | None = None) -> PureBirthProcess:
    """Validate a transition vector p_0..p_n and derive the stop probabilities."""
    if len(p) < 2:
        raise ValueError("transition vector needs at least two entries")
    if backend is not None:
        p = [convert(x, backend) for x in p]
    else:
        p = [convert(x, "exact") if isinstance(x, (str, int)) else x for x in p]
    backend = common_backend(p)
    if backend == "exact":
        p = [Fraction(x) for x in p]
    for i, x in enumerate(p):
        value = x if backend != "logfloat" else float(x)
        if not 0 <= value <= 1:
            raise ValueError(f"p[{i}] = {value} outside [0, 1]")
    if p[-1] != zero(backend):
        raise ValueError("last transition probability must be 0 (absorbing final state)")
    if backend == "logfloat":
        q = [LogFloat(math.log1p(-float(x))) if float(x) < 1 else LogFloat(-math.inf) for x in p]
    else:
        q = [1 - x for x in p]
    return PureBirthProcess(tuple(p), tuple(q))


def transition_matrix(proc: PureBirthProcess) -> BidiagonalMatrix:
    return BidiagonalMatrix(proc.q[:-1] + (one(proc.backend),), proc.p[:-1])


def ccdf_matrix(proc: PureBirthProcess) -> BidiagonalMatrix:
    """Diagonal (1, q_0..q_{n-1}), superdiagonal (p_0..p_{n-1}); row 0 of C^t is Pr(X_t >= j)."""
    return BidiagonalMatrix((one(proc.backend),) + proc.q[:-1], proc.p[:-1])


def _prod(values: Sequence[Scalar], backend: str) -> Scalar:
    out = one(backend)
    for v in values:
        out = out * v
    return out


def _check_state(proc: PureBirthProcess, k: int, t: int) -> None:
    if not 0 <= k <= proc.n:
        raise ValueError(f"state {k} outside 0..{proc.n}")
    if t < 0:
        raise ValueError("time must be >= 0")


def pmf_general(proc: PureBirthProcess, k: int, t: int) -> Scalar:
    """Pr(X_t = k) = h_{t-k}(q_0..q_k) * prod_{i<k} p_i."""
    _check_state(proc, k, t)
    backend = proc.backend
    if k > t:
        return zero(backend)
    return h_complete(t - k, proc.q[: k + 1]) * _prod(proc.p[:k], backend)


def ccdf_general(proc: PureBirthProcess, k: int, t: int) -> Scalar:
    """Pr(X_t > k) = h_{t-k-1}(q_0..q_k, 1) * prod_{i<=k} p_i."""
    _check_state(proc, k, t)
    backend = proc.backend
    if k >= t or k == proc.n:
        return zero(backend)
    return h_complete(t - k - 1, proc.q[: k + 1] + (one(backend),)) * _prod(proc.p[: k + 1], backend)


def cdf_general(proc: PureBirthProcess, k: int, t: int) -> Scalar:
    """Pr(X_t <= k) as a sum of point masses (no subtraction, so logfloat works)."""
    _check_state(proc, k, t)
    total = zero(proc.backend)
    for j in range(min(k, t) + 1):
        total = total + pmf_general(proc, j, t)
    return total


def pmf_vector(proc: PureBirthProcess, t: int) -> StateDistribution:
    """Law of X_t by propagating the point mass at 0 through the transition matrix."""
    return StateDistribution(t, tuple(transition_matrix(proc).top_row_power(t)))


def pmf_distinct(proc: PureBirthProcess, k: int, t: int, tol: float = SYLVESTER_GAP_TOL) -> Scalar:
    """Power-sum closed form of Pr(X_t = k); needs q_0..q_k pairwise distinct.

    (prod_{j<k} p_j) * sum_j q_j^t / prod_{i != j} (q_j - q_i)
    """
    _check_state(proc, k, t)
    backend = proc.backend
    qs = proc.q[: k + 1]
    if k > t:
        h_sylvester(0, qs, tol)  # still enforce the distinctness precondition
        return zero(backend)
    return h_sylvester(t - k, qs, tol) * _prod(proc.p[:k], backend)


def cdf_distinct(proc: PureBirthProcess, k: int, t: int, tol: float = SYLVESTER_GAP_TOL) -> Scalar:
    """Closed form of Pr(X_t <= k) for pairwise-distinct q_0..q_k, all below 1.

    (prod_{j<=k} p_j) * sum_j q_j^t / ((1 - q_j) prod_{i != j} (q_j - q_i))
    """
    _check_state(proc, k, t)
    backend = proc.backend
    if backend == "logfloat":
        raise TypeError("closed form needs signed arithmetic; logfloat is unsupported")
    qs = proc.q[: k + 1]
    h_sylvester(0, qs, tol)
    if any(q == 1 for q in qs):
        raise ValueError("cdf_distinct needs q_j < 1 for every j <= k")
    total = zero(backend)
    for j, qj in enumerate(qs):
        denom = 1 - qj
        for i, qi in enumerate(qs):
            if i != j:
                denom = denom * (qj - qi)
        total = total + qj**t / denom
    return total * _prod(proc.p[: k + 1], backend)


def ccdf_step(proc: PureBirthProcess, row: Sequence[Scalar]) -> list[Scalar]:
    """One step of F(k, t+1) = p_k F(k-1, t) + q_k F(k, t), with F(-1, t) = 1."""
    backend = proc.backend
    prev = one(backend)
    out = []
    for k, cur in enumerate(row):
        out.append(proc.p[k] * prev + proc.q[k] * cur)
        prev = cur
    return out


def cdf_step(proc: PureBirthProcess, row: Sequence[Scalar]) -> list[Scalar]:
    """One step of F(k, t+1) = p_k F(k-1, t) + q_k F(k, t), with F(-1, t) = 0."""
    backend = proc.backend
    prev = zero(backend)
    out = []
    for k, cur in enumerate(row):
        out.append(proc.p[k] * prev + proc.q[k] * cur)
        prev = cur
    return out


def _table_args(proc: PureBirthProcess, t_max: int, k_max: int | None, times) -> tuple[int, list[int]]:
    if t_max < 0:
        raise ValueError("t_max must be >= 0")
    k_max = proc.n if k_max is None else k_max
    if not 0 <= k_max <= proc.n:
        raise ValueError(f"k_max {k_max} outside 0..{proc.n}")
    times = list(range(t_max + 1)) if times is None else sorted(set(times))
    if times and not 0 <= times[0] <= times[-1] <= t_max:
        raise ValueError("requested times must lie in 0..t_max")
    return k_max, times


def ccdf_table(proc: PureBirthProcess, t_max: int, k_max: int | None = None, times: Sequence[int] | None = None):
    """Rows Pr(X_t > k) for k = 0..k_max, one row per t in ``times`` (default 0..t_max).

    Float processes take a vectorised path and return a 2-D numpy array; exact and
    logfloat processes return a list of lists.  Working memory is O(k_max) either way,
    so pass ``times`` to keep output small for large t_max.
    """
    k_max, times = _table_args(proc, t_max, k_max, times)
    if proc.backend == "float":
        return _float_table(proc, k_max, times, ccdf=True)
    if proc.backend == "logfloat":
        raise TypeError("the recurrence is a convex combination but logfloat tables are unsupported; use float")
    return _generic_table(proc, k_max, times, ccdf_step, zero(proc.backend))


def cdf_table(proc: PureBirthProcess, t_max: int, k_max: int | None = None, times: Sequence[int] | None = None):
    """Rows Pr(X_t <= k), built by the CDF recurrence; same conventions as :func:`ccdf_table`."""
    k_max, times = _table_args(proc, t_max, k_max, times)
    if proc.backend == "float":
        return _float_table(proc, k_max, times, ccdf=False)
    if proc.backend == "logfloat":
        raise TypeError("logfloat tables are unsupported; use float")
    return _generic_table(proc, k_max, times, cdf_step, one(proc.backend))


def _generic_table(proc, k_max, times, step, init) -> list[list[Scalar]]:
    wanted = set(times)
    row = [init] * (k_max + 1)
    out = []
    for t in range(times[-1] + 1 if times else 0):
        if t in wanted:
            out.append(list(row))
        row = step(proc, row)
    return out


def _float_table(proc, k_max, times, ccdf: bool) -> np.ndarray:
    p = np.asarray(proc.p[: k_max + 1], dtype=np.float64)
    row = np.full(k_max + 1, 0.0 if ccdf else 1.0)
    left = np.empty(k_max + 1)
    left[0] = 1.0 if ccdf else 0.0
    out = np.empty((len(times), k_max + 1))
    slot = 0
    for t in range(times[-1] + 1 if times else 0):
        if t == times[slot]:
            out[slot] = row
            slot += 1
            if slot == len(times):
                break
        # only cells k < t + 1 can change at this step; the rest stay at their initial value
        m = min(t + 1, k_max + 1)
        # p F(k-1) + q F(k) written as F(k) + p (F(k-1) - F(k)): each cell moves a fraction p of the way
        # to its left neighbour, so float rows stay monotone in k instead of drifting by an ulp near 1
        left[1:m] = row[: m - 1]
        left[:m] -= row[:m]
        left[:m] *= p[:m]
        row[:m] += left[:m]
        left[0] = 1.0 if ccdf else 0.0
    return out


def ccdf_rows(proc: PureBirthProcess, k_max: int | None = None) -> Iterator[list[Scalar]]:
    """Endless iterator over CCDF rows t = 0, 1, 2, ... in the process backend."""
    k_max = proc.n if k_max is None else k_max
    row = [zero(proc.backend)] * (k_max + 1)
    while True:
        yield list(row)
        row = ccdf_step(proc, row)


def hitting_time_moments(proc: PureBirthProcess, k: int) -> HittingTimeMoments:
    """Mean and variance of the first time state k is reached (a sum of geometrics)."""
    if not 1 <= k <= proc.n:
        raise ValueError(f"k must be in 1..{proc.n}")
    backend = proc.backend
    if backend == "logfloat":
        raise TypeError("variance needs subtraction; use exact or float")
    mean = zero(backend)
    var = zero(backend)
    for i in range(k):
        pi = proc.p[i]
        if pi == 0:
            raise ValueError(f"state {k} is unreachable: p[{i}] = 0")
        mean = mean + 1 / pi
        var = var + (1 - pi) / (pi * pi)
    return HittingTimeMoments(k, mean, var)


def hitting_time_pmf(proc: PureBirthProcess, k: int, t: int) -> Scalar:
    """Pr(T_k = t): be in state k-1 at time t-1, then move."""
    if not 1 <= k <= proc.n:
        raise ValueError(f"k must be in 1..{proc.n}")
    if t < 1:
        return zero(proc.backend)
    return pmf_general(proc, k - 1, t - 1) * proc.p[k - 1]


def hitting_time_survival(proc: PureBirthProcess, k: int, t: int) -> Scalar:
    """Pr(T_k > t) = Pr(X_t <= k-1)."""
    if not 1 <= k <= proc.n:
        raise ValueError(f"k must be in 1..{proc.n}")
    return cdf_general(proc, k - 1, t)


def float_values(values: Sequence[Scalar]) -> list[float]:
    return [to_float(v) for v in values]
