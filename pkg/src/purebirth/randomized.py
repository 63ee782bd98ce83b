"""Randomized occupancy: each of t uniform draws from n is kept only with probability p.

The kept-count process is a pure birth chain with p_k = (n-k)p/n and
q_k = (n - (n-k)p)/n.  It shares the classical chain's Pascal eigenvectors;
only the eigenvalues move.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import pbp
from .numerics import Scalar, backend_of, convert, one, zero
from .occupancy import EigenSystem, pascal_u, pascal_u_inv, sum_matrix, sum_matrix_inv
from .sympoly import binomial, falling_factorial, stirling2


@dataclass(frozen=True)
class RandomizedOccupancyModel:
    n: int
    p: Scalar

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("population size n must be >= 1")
        if backend_of(self.p) == "logfloat":
            raise TypeError("retention probability must be exact or float")
        if not 0 < self.p <= 1:
            raise ValueError(f"retention probability {self.p} outside (0, 1]")

    @property
    def backend(self) -> str:
        return backend_of(self.p)

    def stop_prob(self, j: int) -> Scalar:
        """q_j = (n - (n-j) p)/n, also the j-th eigenvalue."""
        return (self.n - (self.n - j) * self.p) / self.n

    @property
    def process(self) -> pbp.PureBirthProcess:
        return pbp.make_process([(self.n - k) * self.p / self.n for k in range(self.n + 1)])


def randomized_model(n: int, p: Scalar | str) -> RandomizedOccupancyModel:
    if isinstance(p, (str, int)):
        p = convert(p, "exact")
    return RandomizedOccupancyModel(n, p)


def _alt_sum(model: RandomizedOccupancyModel, r: int, k: int, weight) -> Scalar:
    m = k - r
    total = zero(model.backend)
    for j in range(m + 1):
        term = binomial(m, j) * weight(j + r)
        total = total - term if (m - j) % 2 else total + term
    return total


def rand_pmf(n: int, p: Scalar | str, k: int, t: int) -> Scalar:
    """Pr(X_t = k) = C(n, k) sum_j (-1)^(k-j) C(k, j) q_j^t."""
    return rand_pmf_conditioned(n, p, 0, k, t)


def rand_pmf_conditioned(n: int, p: Scalar | str, r: int, k: int, t: int) -> Scalar:
    """Pr(X_t = k | X_0 = r) = C(n-r, n-k) sum_{j=0}^{k-r} (-1)^(k-r-j) C(k-r, j) q_{j+r}^t."""
    model = randomized_model(n, p)
    if not 0 <= r <= n:
        raise ValueError(f"initial state r={r} outside 0..{n}")
    if t < 0:
        raise ValueError("t must be >= 0")
    if not r <= k <= n or k - r > t:
        return zero(model.backend)
    return binomial(n - r, n - k) * _alt_sum(model, r, k, lambda j: model.stop_prob(j) ** t)


def rand_cdf(n: int, p: Scalar | str, k: int, t: int) -> Scalar:
    """Pr(X_t <= k) = (n-k) C(n, k) sum_j (-1)^(k-j) C(k, j) q_j^t/(n-j); 1 for k = n."""
    model = randomized_model(n, p)
    if not 0 <= k <= n:
        raise ValueError(f"state {k} outside 0..{n}")
    if t < 0:
        raise ValueError("t must be >= 0")
    if k == n or t == 0:
        return one(model.backend)
    return (n - k) * binomial(n, k) * _alt_sum(model, 0, k, lambda j: model.stop_prob(j) ** t / (n - j))


def rand_eigen_system(n: int, p: Scalar | str) -> EigenSystem:
    model = randomized_model(n, p)
    if model.backend != "exact":
        raise TypeError("the eigensystem is exact; pass p as a rational")
    return EigenSystem(
        n=n,
        eigenvalues=tuple(Fraction(model.stop_prob(j)) for j in range(n + 1)),
        U=pascal_u(n),
        U_inv=pascal_u_inv(n),
        sigma=sum_matrix(n + 1),
        sigma_inv=sum_matrix_inv(n + 1),
    )


def rand_ccdf_table(n: int, p: Scalar | str, t_max: int, k_max: int | None = None, times=None):
    """Pr(X_t > k) rows by F(k, t+1) = ((n-k)p/n) F(k-1, t) + ((n-(n-k)p)/n) F(k, t)."""
    return pbp.ccdf_table(randomized_model(n, p).process, t_max, k_max, times)


@dataclass(frozen=True)
class RandomizedMoments:
    """Moments at time t; factorial and raw moments refer to the empty count Y_t = n - X_t."""

    n: int
    p: Scalar
    t: int
    mean: Scalar
    variance: Scalar
    factorial_moments: tuple[Scalar, ...]
    raw_moments: tuple[Scalar, ...]


def rand_moments(n: int, p: Scalar | str, t: int) -> RandomizedMoments:
    """E[(Y_t)_k] = (n)_k (1 - kp/n)^t for k = 0..n, and the derived X_t moments."""
    model = randomized_model(n, p)
    if t < 0:
        raise ValueError("t must be >= 0")
    p = model.p
    fact = tuple(falling_factorial(n, k) * (1 - k * p / n) ** t for k in range(n + 1))
    raw = []
    for k in range(n + 1):
        total = zero(model.backend)
        for j in range(k + 1):
            total = total + stirling2(k, j) * fact[j]
        raw.append(total)
    a = (1 - p / n) ** t
    b = (1 - 2 * p / n) ** t
    mean = n - n * a
    variance = n * a + n * (n - 1) * b - n * n * a * a
    return RandomizedMoments(n, p, t, mean, variance, fact, tuple(raw))
