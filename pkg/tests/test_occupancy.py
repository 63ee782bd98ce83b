import math
from fractions import Fraction

import pytest

import reference_n9 as fx
from purebirth import oracle
from purebirth.occupancy import (
    named_matrices,
    c_eigenvectors,
    ccdf_matrix_occupancy,
    ccdf_table,
    cdf,
    cdf_conditioned,
    cdf_conditioned_fd,
    check_eigen_system,
    eigen_system,
    int_matmul,
    limit_distribution_check,
    mean_variance,
    occupancy_model,
    pascal_u_inv,
    pmf,
    pmf_alternating,
    pmf_conditioned,
    pmf_conditioned_stirling,
    rowsum_identity_check,
    smaller_population_identity_check,
    u_inv_sigma_block,
)
from purebirth.sympoly import falling_factorial, r_stirling2

FIXTURES = {
    "P": (9, fx.P),
    "U": (1, fx.U),
    "U_inv": (1, fx.U_INV),
    "U_inv_sigma": (1, fx.U_INV_SIGMA),
    "sigma": (1, fx.SIGMA),
    "sigma_inv": (1, fx.SIGMA_INV),
    "sigma_sq": (1, fx.SIGMA_SQ),
    "C": (9, fx.C),
    "V": (1, fx.V),
    "V_inv": (1, fx.V_INV),
}


def occupancy_vector(n):
    return [Fraction(n - k, n) for k in range(n + 1)]


def exact_power(n, t):
    return oracle.matrix_power_exact(oracle.birth_matrix(occupancy_vector(n)), t)


# --- model and eigen system -------------------------------------------------


def test_model_examples():
    assert occupancy_model(1).process.p == (1, 0)
    assert occupancy_model(3).process.p == (1, Fraction(2, 3), Fraction(1, 3), 0)
    with pytest.raises(ValueError):
        occupancy_model(0)
    q = occupancy_model(7).process.q
    assert all(a < b for a, b in zip(q, q[1:]))


def test_eigen_rows_n9():
    system = eigen_system(9)
    assert system.U[0] == [1, 9, 36, 84, 126, 126, 84, 36, 9, 1]
    assert system.U_inv[0] == [(-1) ** k * x for k, x in enumerate(system.U[0])]
    assert system.eigenvalues[-1] == 1


def test_eigen_invariants():
    for n in range(1, 13):
        check_eigen_system(eigen_system(n))


def test_eigen_power_matches_matrix_power():
    for n in range(1, 9):
        system = eigen_system(n)
        for t in range(11):
            assert system.power(t) == exact_power(n, t).tolist()


def test_u_inv_sigma_block():
    for n in range(1, 10):
        system = eigen_system(n)
        assert int_matmul(system.U_inv, system.sigma) == u_inv_sigma_block(n)
    assert u_inv_sigma_block(9)[0][:9] == pascal_u_inv(8)[0]


# --- reference displays -----------------------------------------------------


def test_reference_n9_match_except_one_cell():
    generated = named_matrices(9)
    assert set(generated) == set(FIXTURES)
    mismatches = []
    for name, (denom, printed) in FIXTURES.items():
        gen_denom, gen = generated[name]
        assert gen_denom == denom, name
        assert len(gen) == len(printed) and all(len(a) == len(b) for a, b in zip(gen, printed)), name
        for i, (a, b) in enumerate(zip(gen, printed)):
            mismatches += [(name, i, j, x, y) for j, (x, y) in enumerate(zip(a, b)) if x != y]
    # the printed U_inv Sigma carries +8 in row 0, column 7; the block structure forces -8
    assert mismatches == [("U_inv_sigma", 0, 7, -8, 8)]
    assert pascal_u_inv(8)[0][7] == -8


def test_ccdf_matrix_occupancy_n9():
    c = ccdf_matrix_occupancy(9)
    assert c.diagonal == tuple(Fraction(x, 9) for x in (9, 1, 2, 3, 4, 5, 6, 7, 8))
    assert c.superdiagonal == tuple(Fraction(x, 9) for x in (8, 7, 6, 5, 4, 3, 2, 1))


def test_ccdf_matrix_occupancy_top_row():
    for n in range(2, 8):
        table = ccdf_table(n, 11)
        c = ccdf_matrix_occupancy(n)
        # the first draw is deterministic, so the t-th power is one step ahead
        for t in range(11):
            assert c.top_row_power(t) == table[t + 1][:n]


def test_c_eigenvectors():
    for n in range(2, 10):
        v, v_inv = c_eigenvectors(n)
        identity = [[int(i == j) for j in range(n)] for i in range(n)]
        assert int_matmul(v, v_inv) == identity
        dense = ccdf_matrix_occupancy(n).to_dense()
        # C V = V diag(1, 1/n, ..., (n-1)/n) up to ordering of the first column
        cv = [[sum(dense[i][m] * v[m][j] for m in range(n)) for j in range(n)] for i in range(n)]
        eig = [Fraction(1)] + [Fraction(j, n) for j in range(1, n)]
        assert cv == [[v[i][j] * eig[j] for j in range(n)] for i in range(n)]


# --- PMF and CDF forms ------------------------------------------------------


def test_pmf_examples():
    assert pmf(3, 2, 3) == Fraction(2, 3)
    assert pmf(3, 1, 2) == Fraction(1, 3)
    assert all(pmf(n, 0, t) == 0 for n in range(1, 6) for t in range(1, 6))
    assert pmf(4, 0, 0) == 1


def test_pmf_forms_agree_with_oracles():
    for n in range(1, 6):
        for t in range(9):
            tuples = oracle.enumerate_tuples(n, t)
            assert [pmf(n, k, t) for k in range(n + 1)] == tuples
            assert [pmf_alternating(n, k, t) for k in range(n + 1)] == tuples


def test_conditioned_examples():
    assert all(pmf_conditioned(5, r, r, 0) == 1 for r in range(6))
    assert pmf_conditioned(3, 1, 2, 1) == Fraction(2, 3)
    for n in range(1, 7):
        for k in range(11):
            for t in range(11):
                assert pmf_conditioned(n, 0, k, t) == pmf(n, k, t)


def test_conditioned_pmf_matches_matrix_power():
    for n in range(1, 8):
        for t in range(11):
            power = exact_power(n, t)
            for r in range(n + 1):
                for k in range(n + 1):
                    assert pmf_conditioned(n, r, k, t) == power[r, k]
                    assert pmf_conditioned_stirling(n, r, k, t) == power[r, k]


def test_cdf_examples():
    assert cdf_conditioned(3, 0, 1, 2) == Fraction(1, 3)
    assert all(cdf_conditioned(n, r, n, t) == 1 for n in range(1, 5) for r in range(n + 1) for t in range(5))


def test_cdf_three_forms():
    for n in range(1, 8):
        for t in range(11):
            power = exact_power(n, t)
            for r in range(n + 1):
                for k in range(r, n + 1):
                    partial = sum((power[r, j] for j in range(r, k + 1)), Fraction(0))
                    assert cdf_conditioned(n, r, k, t) == partial
                    assert cdf_conditioned_fd(n, r, k, t) == partial


def test_ccdf_table_is_complement():
    for n in range(1, 8):
        table = ccdf_table(n, 12)
        for t in range(13):
            assert table[t] == [1 - cdf_conditioned(n, 0, k, t) for k in range(n + 1)]


def test_float_forms_close_for_small_differences():
    for t in range(20):
        for k in range(9):
            exact = pmf(8, k, t)
            assert math.isclose(pmf_conditioned(8, 0, k, t, "float"), float(exact), rel_tol=1e-9, abs_tol=1e-15)
            assert math.isclose(float(pmf(8, k, t, "logfloat")), float(exact), rel_tol=1e-12, abs_tol=1e-300)
            assert math.isclose(cdf(8, k, t, "float"), float(cdf(8, k, t)), rel_tol=1e-9, abs_tol=1e-15)


def test_logfloat_pmf_large_population():
    value = pmf(200, 150, 400, "logfloat")
    assert math.isclose(float(value), float(pmf(200, 150, 400)), rel_tol=1e-10)
    with pytest.raises(TypeError):
        pmf_conditioned(5, 0, 2, 3, "logfloat")


# --- moments and limits -----------------------------------------------------


def test_moment_examples():
    assert mean_variance(5, 0) == (0, 0)
    assert mean_variance(5, 1) == (1, 0)
    assert mean_variance(3, 2)[0] == Fraction(15, 9)


def test_moments_match_distribution():
    for n in range(1, 11):
        for t in range(21):
            law = [pmf(n, k, t) for k in range(n + 1)]
            mean = sum(k * w for k, w in enumerate(law))
            var = sum(k * k * w for k, w in enumerate(law)) - mean * mean
            assert mean_variance(n, t) == (mean, var)


def test_limit_report():
    report = limit_distribution_check(3, 50, "float")
    assert report.transient_mass < 1e-8
    assert limit_distribution_check(4, 0).transient_mass == 1
    for n in range(1, 7):
        assert limit_distribution_check(n, 30).nonincreasing


def test_limit_mass_bound():
    # mass off state n is at most n (1 - 1/n)^t, the union bound over missing values
    for t in range(0, 40, 5):
        report = limit_distribution_check(4, t)
        assert report.transient_mass <= 4 * Fraction(3, 4) ** t


# --- identities -------------------------------------------------------------


def test_rowsum_identity():
    assert rowsum_identity_check(4, 2, 5)
    for n in range(1, 9):
        for r in range(n + 1):
            for t in range(11):
                assert rowsum_identity_check(n, r, t)


def test_rowsum_identity_single_term():
    for n in range(1, 7):
        for t in range(9):
            assert falling_factorial(n, n) * r_stirling2(t + n, n, n) == falling_factorial(n, n) * n**t


def test_smaller_population_identity():
    assert smaller_population_identity_check(3, 1, 2)
    assert cdf(3, 1, 2) == Fraction(1, 3)
    assert Fraction(4, 9) * (pmf_conditioned(2, 0, 1, 2) + pmf_conditioned(2, 1, 1, 2)) == Fraction(1, 3)
    assert smaller_population_identity_check(2, 1, 1)
    for n in range(2, 7):
        for k in range(1, n):
            for t in range(1, 11):
                assert smaller_population_identity_check(n, k, t)
    with pytest.raises(ValueError):
        smaller_population_identity_check(3, 0, 2)
