"""The classical occupancy chain: X_t counts distinct values among t uniform draws from n.

It is the pure birth process with p_k = (n - k)/n.  Closed forms come in an
alternating-sum shape and a Stirling-number shape; the chain's transition matrix
diagonalises over integer Pascal matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import pbp
from .numerics import LogFloat, Scalar, check_backend, convert, one, zero
from .sympoly import binomial, falling_factorial, finite_difference, r_stirling2, stirling2

IntMatrix = list[list[int]]


@dataclass(frozen=True)
class OccupancyModel:
    n: int
    backend: str = "exact"

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("population size n must be >= 1")
        check_backend(self.backend)

    @property
    def process(self) -> pbp.PureBirthProcess:
        return pbp.make_process([Fraction(self.n - k, self.n) for k in range(self.n + 1)], self.backend)


def occupancy_model(n: int, backend: str = "exact") -> OccupancyModel:
    return OccupancyModel(n, backend)


@dataclass(frozen=True)
class EigenSystem:
    """P = U diag(eigenvalues) U_inv, plus the upper-triangular all-ones matrix and its inverse."""

    n: int
    eigenvalues: tuple[Fraction, ...]
    U: IntMatrix
    U_inv: IntMatrix
    sigma: IntMatrix
    sigma_inv: IntMatrix

    def power(self, t: int) -> list[list[Fraction]]:
        """U Λ^t U_inv as exact rationals."""
        size = self.n + 1
        lam_t = [lam**t for lam in self.eigenvalues]
        return [
            [
                sum((self.U[i][j] * lam_t[j] * self.U_inv[j][k] for j in range(i, k + 1)), Fraction(0))
                for k in range(size)
            ]
            for i in range(size)
        ]


def pascal_u(n: int) -> IntMatrix:
    """[U]_{i,k} = C(n-i, n-k): right eigenvectors of the occupancy chain."""
    return [[binomial(n - i, n - k) if k >= i else 0 for k in range(n + 1)] for i in range(n + 1)]


def pascal_u_inv(n: int) -> IntMatrix:
    return [[(-1) ** (k - i) * binomial(n - i, n - k) if k >= i else 0 for k in range(n + 1)] for i in range(n + 1)]


def sum_matrix(size: int) -> IntMatrix:
    return [[int(j >= i) for j in range(size)] for i in range(size)]


def sum_matrix_inv(size: int) -> IntMatrix:
    return [[1 if j == i else (-1 if j == i + 1 else 0) for j in range(size)] for i in range(size)]


def int_matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def eigen_system(n: int, check: bool = False) -> EigenSystem:
    if n < 1:
        raise ValueError("n must be >= 1")
    system = EigenSystem(
        n=n,
        eigenvalues=tuple(Fraction(j, n) for j in range(n + 1)),
        U=pascal_u(n),
        U_inv=pascal_u_inv(n),
        sigma=sum_matrix(n + 1),
        sigma_inv=sum_matrix_inv(n + 1),
    )
    if check:
        check_eigen_system(system)
    return system


def check_eigen_system(system: EigenSystem) -> None:
    n = system.n
    size = n + 1
    identity = [[int(i == j) for j in range(size)] for i in range(size)]
    if int_matmul(system.U, system.U_inv) != identity:
        raise AssertionError("U U_inv != I")
    if int_matmul(system.sigma, system.sigma_inv) != identity:
        raise AssertionError("sigma sigma_inv != I")
    dense_p = occupancy_model(n).process
    p_rows = pbp.transition_matrix(dense_p).to_dense()
    if system.power(1) != p_rows:
        raise AssertionError("U Λ U_inv != P")
    if int_matmul(system.U_inv, system.sigma) != u_inv_sigma_block(n):
        raise AssertionError("U_inv sigma is not the expected block matrix")


def u_inv_sigma_block(n: int) -> IntMatrix:
    """Block matrix [[U_inv for n-1, 0], [0, 1]]."""
    inner = pascal_u_inv(n - 1) if n >= 1 else []
    rows = [row + [0] for row in inner]
    rows.append([0] * n + [1])
    return rows


def ccdf_matrix_occupancy(n: int) -> pbp.BidiagonalMatrix:
    """n x n CCDF matrix: diagonal (n, 1, 2, ..., n-1)/n, superdiagonal (n-1, ..., 1)/n.

    Row 0 of its t-th power (t >= 0) holds Pr(X_{t+1} > j) for j = 0..n-1.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    diagonal = (Fraction(1),) + tuple(Fraction(j, n) for j in range(1, n))
    superdiagonal = tuple(Fraction(n - j, n) for j in range(1, n))
    return pbp.BidiagonalMatrix(diagonal, superdiagonal)


def c_eigenvectors(n: int) -> tuple[IntMatrix, IntMatrix]:
    """Integer eigenvector matrix V of the occupancy CCDF matrix and its inverse."""
    size = n
    V = [[0] * size for _ in range(size)]
    V_inv = [[0] * size for _ in range(size)]
    V[0][0] = 1
    for j in range(1, size):
        V[0][j] = -binomial(n - 1, n - j)
    for i in range(1, size):
        for j in range(i, size):
            V[i][j] = binomial(n - 1 - i, n - 1 - j)
            V_inv[i][j] = (-1) ** (j - i) * binomial(n - 1 - i, n - 1 - j)
    V_inv[0] = [1] * size
    return V, V_inv


# --- distribution formulas -------------------------------------------------


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError("population size n must be >= 1")


def _exact_to(value: Fraction, backend: str) -> Scalar:
    return convert(value, backend)


def pmf(n: int, k: int, t: int, backend: str = "exact") -> Scalar:
    """Pr(X_t = k) = (n)_k S(t, k) / n^t.

    Every backend evaluates the integers exactly first; logfloat keeps huge
    numerators and n^t representable by working with their logarithms.
    """
    _check_n(n)
    check_backend(backend)
    if t < 0:
        raise ValueError("t must be >= 0")
    if not 0 <= k <= min(n, t):
        return zero(backend)
    num = falling_factorial(n, k) * stirling2(t, k)
    if backend == "logfloat":
        return LogFloat(math.log(num) - t * math.log(n)) if num else zero(backend)
    return _exact_to(Fraction(num, n**t), backend)


def pmf_alternating(n: int, k: int, t: int, backend: str = "exact") -> Scalar:
    """Pr(X_t = k) = C(n, k) sum_j (-1)^(k-j) C(k, j) (j/n)^t."""
    return pmf_conditioned(n, 0, k, t, backend)


def pmf_conditioned(n: int, r: int, k: int, t: int, backend: str = "exact") -> Scalar:
    """Pr(X_t = k | X_0 = r) = C(n-r, n-k) sum_{j=0}^{k-r} (-1)^(k-r-j) C(k-r, j) ((j+r)/n)^t.

    The float backend evaluates the alternating sum in floating point and loses
    accuracy for large k - r.
    """
    _check_n(n)
    check_backend(backend)
    if not 0 <= r <= n:
        raise ValueError(f"initial state r={r} outside 0..{n}")
    if t < 0:
        raise ValueError("t must be >= 0")
    if not r <= k <= n or k - r > t:
        return zero(backend)
    m = k - r
    if backend == "exact":
        total = sum((-1) ** (m - j) * binomial(m, j) * (j + r) ** t for j in range(m + 1))
        return Fraction(binomial(n - r, n - k) * total, n**t)
    if backend == "logfloat":
        raise TypeError("alternating sums need signed arithmetic; use pmf_conditioned_stirling for logfloat")
    total = 0.0
    for j in range(m + 1):
        term = binomial(m, j) * ((j + r) / n) ** t
        total += -term if (m - j) % 2 else term
    return binomial(n - r, n - k) * total


def pmf_conditioned_stirling(n: int, r: int, k: int, t: int, backend: str = "exact") -> Scalar:
    """Pr(X_t = k | X_0 = r) = (n-r)_{k-r} h_{t+r-k}(r..k) / n^t."""
    _check_n(n)
    check_backend(backend)
    if not 0 <= r <= n:
        raise ValueError(f"initial state r={r} outside 0..{n}")
    if not r <= k <= n or k - r > t:
        return zero(backend)
    num = falling_factorial(n - r, k - r) * r_stirling2(t + r, r, k)
    if backend == "logfloat":
        return LogFloat(math.log(num) - t * math.log(n)) if num else zero(backend)
    return _exact_to(Fraction(num, n**t), backend)


def cdf_conditioned(n: int, r: int, k: int, t: int, backend: str = "exact") -> Scalar:
    """Pr(X_t <= k | X_0 = r) for 0 <= r <= k < n:

    (n-k)/n^t * C(n-r, n-k) * sum_j (-1)^(k-r-j) C(k-r, j) (r+j)^t / (n-r-j),
    and 1 for k = n.
    """
    _check_n(n)
    check_backend(backend)
    if not 0 <= r <= n:
        raise ValueError(f"initial state r={r} outside 0..{n}")
    if t < 0:
        raise ValueError("t must be >= 0")
    if k < r:
        return zero(backend)
    if k >= n:
        return one(backend)
    m = k - r
    if backend == "exact":
        total = sum(
            Fraction((-1) ** (m - j) * binomial(m, j) * (r + j) ** t, n - r - j) for j in range(m + 1)
        )
        return (n - k) * binomial(n - r, n - k) * total / n**t
    if backend == "logfloat":
        raise TypeError("alternating sums need signed arithmetic; use exact or float")
    total = 0.0
    for j in range(m + 1):
        term = binomial(m, j) * ((r + j) / n) ** t / (n - r - j)
        total += -term if (m - j) % 2 else term
    return (n - k) * binomial(n - r, n - k) * total


def cdf_conditioned_fd(n: int, r: int, k: int, t: int) -> Fraction:
    """Exact Pr(X_t <= k | X_0 = r) from the (k-r)-th difference of x^t/(n-x) at r."""
    _check_n(n)
    if not 0 <= r <= n or t < 0:
        raise ValueError("need 0 <= r <= n and t >= 0")
    if k < r:
        return Fraction(0)
    if k >= n:
        return Fraction(1)
    lead = falling_factorial(n - r, k - r + 1)  # (n-r)(n-r-1)...(n-k)
    diff = finite_difference(lambda x: Fraction(x**t, n - x), k - r, r)
    return Fraction(lead, n**t) * diff / math.factorial(k - r)


def cdf(n: int, k: int, t: int, backend: str = "exact") -> Scalar:
    return cdf_conditioned(n, 0, min(k, n), t, backend)


def ccdf_table(n: int, t_max: int, k_max: int | None = None, backend: str = "exact", times=None):
    """Pr(X_t > k) rows from the CCDF recurrence with coefficients (n-k)/n and k/n."""
    return pbp.ccdf_table(occupancy_model(n, backend).process, t_max, k_max, times)


def mean_variance(n: int, t: int, backend: str = "exact") -> tuple[Scalar, Scalar]:
    """E[X_t] = n - n(1-1/n)^t and Var[X_t] = n a + n(n-1) b - n^2 a^2 with a = (1-1/n)^t, b = (1-2/n)^t."""
    _check_n(n)
    if t < 0:
        raise ValueError("t must be >= 0")
    a = Fraction(n - 1, n) ** t
    b = Fraction(n - 2, n) ** t
    mean = n - n * a
    var = n * a + n * (n - 1) * b - n * n * a * a
    return convert(mean, backend), convert(var, backend)


@dataclass(frozen=True)
class LimitReport:
    n: int
    t: int
    transient_mass: Scalar
    max_transient_pmf: Scalar
    nonincreasing: bool


def limit_distribution_check(n: int, t: int, backend: str = "exact") -> LimitReport:
    """Mass left on the transient states 0..n-1 at time t, and whether it never grew on 0..t."""
    _check_n(n)
    masses = []
    peak = zero(backend)
    for s in range(t + 1):
        values = [pmf(n, k, s, backend) for k in range(n)]
        mass = zero(backend)
        for v in values:
            mass = mass + v
        masses.append(mass)
        if s == t:
            peak = max(values)
    ok = all(b <= a for a, b in zip(masses, masses[1:]))
    return LimitReport(n, t, masses[-1], peak, ok)


def rowsum_identity_check(n: int, r: int, t: int) -> bool:
    """sum_{j=r}^{n} (n)_j h_{t+r-j}(r..j) == (n)_r n^t, in integers.

    Row r of n^t P^t sums to n^t and its entries are (n-r)_{j-r} h_{t+r-j}(r..j);
    multiplying through by (n)_r gives the identity.
    """
    if not 0 <= r <= n or t < 0:
        raise ValueError("need 0 <= r <= n and t >= 0")
    lhs = sum(falling_factorial(n, j) * r_stirling2(t + r, r, j) for j in range(r, n + 1))
    return lhs == falling_factorial(n, r) * n**t


def smaller_population_identity_check(n: int, k: int, t: int) -> bool:
    """Pr(X_t <= k) over n equals (1-1/n)^t sum_{j=0}^{k} Pr(X_t = k | X_0 = j) over n-1."""
    if not (1 <= k <= n - 1 and t > 0):
        raise ValueError("need 1 <= k <= n-1 and t > 0")
    lhs = sum((pmf_conditioned(n, 0, j, t) for j in range(k + 1)), Fraction(0))
    rhs = Fraction(n - 1, n) ** t * sum((pmf_conditioned(n - 1, j, k, t) for j in range(k + 1)), Fraction(0))
    return lhs == rhs


def named_matrices(n: int) -> dict[str, tuple[int, IntMatrix]]:
    """Named integer matrices with their common denominators, in display form."""
    system = eigen_system(n)
    P = [[int(x * n) for x in row] for row in pbp.transition_matrix(occupancy_model(n).process).to_dense()]
    C = [[int(x * n) for x in row] for row in ccdf_matrix_occupancy(n).to_dense()]
    V, V_inv = c_eigenvectors(n)
    return {
        "P": (n, P),
        "U": (1, system.U),
        "U_inv": (1, system.U_inv),
        "U_inv_sigma": (1, int_matmul(system.U_inv, system.sigma)),
        "sigma": (1, system.sigma),
        "sigma_inv": (1, system.sigma_inv),
        "sigma_sq": (1, int_matmul(system.sigma, system.sigma)),
        "C": (n, C),
        "V": (1, V),
        "V_inv": (1, V_inv),
    }
