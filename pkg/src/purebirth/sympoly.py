"""Complete homogeneous symmetric polynomials, Stirling numbers and finite differences."""

from __future__ import annotations

import math
from typing import Callable, Sequence

from .numerics import Scalar, common_backend, one, zero

SYLVESTER_GAP_TOL = 1e-9


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n or n < 0:
        return 0
    return math.comb(n, k)


def falling_factorial(n: int, k: int) -> int:
    """(n)_k = n (n-1) ... (n-k+1); 1 for k = 0."""
    if k < 0:
        raise ValueError("falling factorial needs k >= 0")
    out = 1
    for i in range(k):
        out *= n - i
    return out


def h_table(d: int, variables: Sequence[Scalar]) -> list[Scalar]:
    """[h_0, ..., h_d] of ``variables``.

    Variables are absorbed one at a time: adding X to the set updates
    h_j <- h_j + X * h_{j-1} in ascending j, which is the split of the
    monomials by whether they contain X.
    """
    if not variables:
        raise ValueError("need at least one variable")
    backend = common_backend(variables)
    if d < 0:
        return []
    h = [one(backend)] + [zero(backend)] * d
    for x in variables:
        for j in range(1, d + 1):
            h[j] = h[j] + x * h[j - 1]
    return h


def h_complete(d: int, variables: Sequence[Scalar]) -> Scalar:
    """h_d(variables); zero for negative d."""
    if not variables:
        raise ValueError("need at least one variable")
    if d < 0:
        return zero(common_backend(variables))
    return h_table(d, variables)[d]


def h_sylvester(d: int, variables: Sequence[Scalar], tol: float = SYLVESTER_GAP_TOL) -> Scalar:
    """h_d via the power-sum closed form over pairwise-distinct variables.

    With m = len(variables) - 1:  h_d = sum_j X_j^(d+m) / prod_{i != j} (X_j - X_i).
    """
    if d < 0:
        raise ValueError("Sylvester form needs d >= 0")
    if not variables:
        raise ValueError("need at least one variable")
    backend = common_backend(variables)
    if backend == "logfloat":
        raise TypeError("Sylvester form needs signed arithmetic; logfloat is unsupported")
    _require_distinct(variables, backend, tol)
    power = d + len(variables) - 1
    total = zero(backend)
    for j, xj in enumerate(variables):
        denom = one(backend)
        for i, xi in enumerate(variables):
            if i != j:
                denom = denom * (xj - xi)
        total = total + xj**power / denom
    return total


def _require_distinct(variables: Sequence[Scalar], backend: str, tol: float) -> None:
    ordered = sorted(variables)
    for a, b in zip(ordered, ordered[1:]):
        gap = b - a
        if gap == 0 or (backend == "float" and gap < tol):
            raise ValueError(f"variables must be pairwise distinct; found {a!r} and {b!r}")


def finite_difference(f: Callable[[Scalar], Scalar], order: int, base: Scalar) -> Scalar:
    """Forward difference: sum_j (-1)^(order-j) C(order, j) f(base + j), ascending j."""
    if order < 0:
        raise ValueError("order must be >= 0")
    total = None
    for j in range(order + 1):
        term = binomial(order, j) * f(base + j)
        if (order - j) % 2:
            term = -term
        total = term if total is None else total + term
    return total


def stirling2(t: int, k: int) -> int:
    """Stirling number of the second kind S(t, k) as (1/k!) times the k-th difference of x^t at 0."""
    if t < 0 or k < 0:
        raise ValueError("stirling2 needs t, k >= 0")
    if k > t:
        return 0
    diff = finite_difference(lambda x: x**t, k, 0)
    value, rem = divmod(diff, math.factorial(k))
    assert rem == 0
    return value


def r_stirling2(t: int, r: int, k: int) -> int:
    """r-Stirling number h_{t-k}(r, r+1, ..., k).

    Convention: (t, r, k) with degree t - k.  The shifted quantity written with
    upper index t + r elsewhere is ``r_stirling2(t + r, r, k)``.
    """
    if r < 0 or k < r:
        raise ValueError("r_stirling2 needs 0 <= r <= k")
    if t < k:
        return 0
    return int(h_complete(t - k, list(range(r, k + 1))))


def r_stirling2_fd(t: int, r: int, k: int) -> int:
    """Same number as :func:`r_stirling2`, from (1/(k-r)!) times the (k-r)-th difference of x^(t-r) at r."""
    if r < 0 or k < r:
        raise ValueError("r_stirling2_fd needs 0 <= r <= k")
    if t < k:
        return 0
    diff = finite_difference(lambda x: x ** (t - r), k - r, r)
    value, rem = divmod(diff, math.factorial(k - r))
    assert rem == 0
    return value

