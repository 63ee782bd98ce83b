"""Brute-force reference computations.

Nothing here imports the formula modules: the oracles build their own dense
matrices straight from a transition vector and enumerate outcomes directly, so
agreement with the closed forms is a genuine two-route check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

DEFAULT_PATH_CAP = 2_000_000
DEFAULT_TUPLE_CAP = 10_000_000


class OracleTooLarge(ValueError):
    """Raised when an enumeration would exceed its configured cap."""


@dataclass(frozen=True)
class DenseMatrix:
    """Square matrix of exact rationals, row-major."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        size = len(self.rows)
        if any(len(row) != size for row in self.rows):
            raise ValueError("DenseMatrix must be square")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Fraction | int]]) -> "DenseMatrix":
        return cls(tuple(tuple(Fraction(x) for x in row) for row in rows))

    @classmethod
    def identity(cls, dim: int) -> "DenseMatrix":
        return cls.from_rows([[int(i == j) for j in range(dim)] for i in range(dim)])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self.rows[i][j]

    def __matmul__(self, other: "DenseMatrix") -> "DenseMatrix":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        cols = list(zip(*other.rows))
        return DenseMatrix(
            tuple(tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols) for row in self.rows)
        )

    def row_sums(self) -> tuple[Fraction, ...]:
        return tuple(sum(row, Fraction(0)) for row in self.rows)

    def tolist(self) -> list[list[Fraction]]:
        return [list(row) for row in self.rows]


def matrix_power_exact(m: DenseMatrix, t: int) -> DenseMatrix:
    """m**t by binary exponentiation with full dense products."""
    if t < 0:
        raise ValueError("t must be >= 0")
    result = DenseMatrix.identity(m.dim)
    base = m
    while t:
        if t & 1:
            result = result @ base
        t >>= 1
        if t:
            base = base @ base
    return result


def birth_matrix(p: Sequence[Fraction | int]) -> DenseMatrix:
    """Dense pure-birth transition matrix: stay with 1 - p_i, move up with p_i."""
    p = [Fraction(x) for x in p]
    size = len(p)
    rows = [[Fraction(0)] * size for _ in range(size)]
    for i, pi in enumerate(p):
        rows[i][i] = 1 - pi
        if i + 1 < size:
            rows[i][i + 1] = pi
        elif pi != 0:
            raise ValueError("last state must be absorbing")
    return DenseMatrix.from_rows(rows)


def enumerate_paths(p: Sequence[Fraction | int], t: int, cap: int = DEFAULT_PATH_CAP) -> list[Fraction]:
    """Law of X_t from 0 by summing the weight of every stay/move sequence of length t.

    ``p`` is the transition vector (or any object with a ``p`` attribute holding one).
    """
    p = [Fraction(x) for x in getattr(p, "p", p)]
    if t < 0:
        raise ValueError("t must be >= 0")
    if 2**t > cap:
        raise OracleTooLarge(f"2**{t} step sequences exceed cap {cap}")
    probs = [Fraction(0)] * len(p)

    def walk(state: int, steps_left: int, weight: Fraction) -> None:
        if weight == 0:
            return
        if steps_left == 0:
            probs[state] += weight
            return
        walk(state, steps_left - 1, weight * (1 - p[state]))
        if p[state] != 0:
            walk(state + 1, steps_left - 1, weight * p[state])

    walk(0, t, Fraction(1))
    return probs


def enumerate_tuples(n: int, t: int, cap: int = DEFAULT_TUPLE_CAP) -> list[Fraction]:
    """Law of the number of distinct values in a uniform tuple from {0..n-1}^t."""
    if n < 1 or t < 0:
        raise ValueError("need n >= 1 and t >= 0")
    total = n**t
    if total > cap:
        raise OracleTooLarge(f"{n}**{t} tuples exceed cap {cap}")
    counts = [0] * (n + 1)
    for tup in itertools.product(range(n), repeat=t):
        counts[len(set(tup))] += 1
    return [Fraction(c, total) for c in counts]


def state_law(p: Sequence[Fraction | int], t: int, start: int = 0) -> list[Fraction]:
    """Row ``start`` of the exact t-step matrix power."""
    return list(matrix_power_exact(birth_matrix(p), t).rows[start])
