"""Related chains: the complementary occupancy chain and the binomial (power-set) chain.

The complementary chain lives on states 1..n and advances from k with
probability k/n, so its transition and stop probabilities are the occupancy
ones swapped.  Public functions take the 1-based states; internally the chain is
the 0-based pure birth process with p = (1/n, 2/n, ..., (n-1)/n, 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import pbp
from .pbp import HittingTimeMoments
from .sympoly import binomial, h_complete


@dataclass(frozen=True)
class ComplementaryOccupancyModel:
    n: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError("the complementary chain needs n >= 2")

    @property
    def process(self) -> pbp.PureBirthProcess:
        """0-based process: internal state i is chain state i + 1."""
        return pbp.make_process([Fraction(i + 1, self.n) for i in range(self.n - 1)] + [Fraction(0)])


def complementary_model(n: int) -> ComplementaryOccupancyModel:
    return ComplementaryOccupancyModel(n)


def _stop_vars(n: int, r: int, k: int) -> list[int]:
    """n^-1 times the stop probabilities of chain states r..k; state n stops with certainty."""
    return [n - j if j < n else n for j in range(r, k + 1)]


def comp_pmf_conditioned(n: int, r: int, k: int, t: int) -> Fraction:
    """Pr(X_t = k | X_0 = r) = ((k-1)!/(r-1)!) h_{t-k+r}(s_r, ..., s_k) / n^t.

    Here s_j = n - j is n times the stop probability of state j < n, and the
    absorbing state n has s_n = n.
    """
    if not 1 <= r <= n:
        raise ValueError(f"initial state r={r} outside 1..{n}")
    if t < 0:
        raise ValueError("t must be >= 0")
    if not r <= k <= n:
        return Fraction(0)
    if n == 1:
        return Fraction(1)
    weight = math.factorial(k - 1) // math.factorial(r - 1)
    return Fraction(weight * int(h_complete(t - k + r, _stop_vars(n, r, k))), n**t)


def comp_pmf(n: int, k: int, t: int) -> Fraction:
    return comp_pmf_conditioned(n, 1, k, t)


def comp_ccdf(n: int, k: int, t: int) -> Fraction:
    """Pr(X_t > k) = k! h_{t-k}(n, n-1, ..., n-k) / n^t for 1 <= k < n."""
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
    if t < 0:
        raise ValueError("t must be >= 0")
    return Fraction(math.factorial(k) * int(h_complete(t - k, list(range(n - k, n + 1)))), n**t)


def comp_cross_relation_check(n: int, k: int, t: int) -> bool:
    """n^t Pr(X_t > k; n) == (n+1)^t Pr(X_t = k+1; n+1)."""
    return n**t * comp_ccdf(n, k, t) == (n + 1) ** t * comp_pmf(n + 1, k + 1, t)


def absorption_recurrence(n: int, t: int) -> list[Fraction]:
    """[Pr(X_t = n | X_0 = k) for k = 1..n], the last column of the t-step matrix.

    Seeded with k = 1 and extended upward by
    a(k) = a(k-1) + ((n-1)/(k-1)) Pr(X_t = n-1 | X_0 = k-1),
    whose second term is a non-absorbing entry with a closed form.
    """
    if n < 2 or t < 0:
        raise ValueError("need n >= 2 and t >= 0")
    out = [comp_pmf_conditioned(n, 1, n, t)]
    for k in range(2, n + 1):
        out.append(out[-1] + Fraction(n - 1, k - 1) * comp_pmf_conditioned(n, k - 1, n - 1, t))
    return out


def absorption_partial_sum(n: int, t: int) -> list[Fraction]:
    """Unrolled recurrence: a(k) = a(1) + (n-1) sum_{j=1}^{k-1} (1/j) Pr(X_t = n-1 | X_0 = j)."""
    if n < 2 or t < 0:
        raise ValueError("need n >= 2 and t >= 0")
    first = comp_pmf_conditioned(n, 1, n, t)
    out = []
    acc = Fraction(0)
    for k in range(1, n + 1):
        if k > 1:
            acc += Fraction(1, k - 1) * comp_pmf_conditioned(n, k - 1, n - 1, t)
        out.append(first + (n - 1) * acc)
    return out


def comp_hitting_moments(n: int, k: int) -> HittingTimeMoments:
    """Hitting time of state k from state 1: mean n H_{k-1}, variance n sum_{j<k} (n-j)/j^2."""
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got k={k}, n={n}")
    mean = n * sum((Fraction(1, j) for j in range(1, k)), Fraction(0))
    var = n * sum((Fraction(n - j, j * j) for j in range(1, k)), Fraction(0))
    return HittingTimeMoments(k, mean, var)


def binomial_chain(n: int) -> pbp.PureBirthProcess:
    """Fair-coin chain: every non-final state advances with probability 1/2."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return pbp.make_process([Fraction(1, 2)] * n + [Fraction(0)])


def binom_pmf(n: int, k: int) -> Fraction:
    if n < 0:
        raise ValueError("n must be >= 0")
    return Fraction(binomial(n, k), 2**n)


def binom_tail_duality(n: int, k: int) -> tuple[Fraction, Fraction]:
    """Pr(X_n > k) for the fair-coin chain: direct binomial tail and (1/2) sum_{j=k}^{n-1} 2^-j C(j, k)."""
    direct = sum((binom_pmf(n, j) for j in range(k + 1, n + 1)), Fraction(0))
    dual = Fraction(1, 2) * sum((Fraction(binomial(j, k), 2**j) for j in range(k, n)), Fraction(0))
    return direct, dual


@dataclass(frozen=True)
class PartialSumTriangle:
    """rows[n][k + 1] = sum_{j > k} C(n, j) for k = -1..n, so row n starts with 2^n and ends with 0."""

    n_max: int
    rows: tuple[tuple[int, ...], ...]

    def value(self, k: int, n: int) -> int:
        return self.rows[n][k + 1]

    def display_row(self, n: int) -> tuple[int, ...]:
        """Row n as usually printed: k = -1..n-1 (the trailing zero dropped)."""
        return self.rows[n][:-1]


def partial_sum_triangle(n_max: int) -> PartialSumTriangle:
    """Build by recurrence: left border 2^n, interior S(k, n) = S(k, n-1) + S(k-1, n-1), right border 1."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    rows = [(1, 0)]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        row = [2 * prev[0]]
        for k in range(0, n - 1):
            row.append(prev[k + 1] + prev[k])
        row.extend([1, 0])
        rows.append(tuple(row))
    triangle = PartialSumTriangle(n_max, tuple(rows))
    for n in range(n_max + 1):
        for k in range(-1, n + 1):
            direct = sum(binomial(n, j) for j in range(k + 1, n + 1))
            if triangle.value(k, n) != direct:
                raise AssertionError(f"recurrence and direct sum disagree at k={k}, n={n}")
    return triangle


def partial_sum_duality(k: int, n: int) -> int:
    """(1/2) sum_{j=k}^{n-1} 2^(n-j) C(j, k), an alternative expression of sum_{j > k} C(n, j)."""
    total = sum(2 ** (n - j) * binomial(j, k) for j in range(k, n))
    return total // 2
