import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from purebirth.sympoly import (
    binomial,
    falling_factorial,
    finite_difference,
    h_complete,
    h_sylvester,
    r_stirling2,
    r_stirling2_fd,
    stirling2,
)

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=7)
var_lists = st.lists(rationals, min_size=1, max_size=6)


def h_monomials(d, xs):
    """Reference: sum over all multisets of size d."""
    if d < 0:
        return 0
    return sum(
        (math.prod(c) for c in itertools.combinations_with_replacement(xs, d)),
        Fraction(0),
    )


def count_partitions(t, k):
    """Reference: count surjections onto k labelled blocks, then unlabel."""
    if k == 0:
        return int(t == 0)
    surj = sum(1 for f in itertools.product(range(k), repeat=t) if len(set(f)) == k)
    return surj // math.factorial(k)


def test_h_examples():
    assert h_complete(0, [0.3, 0.9]) == 1
    assert h_complete(-1, [Fraction(2), Fraction(5)]) == 0
    assert h_complete(2, [1, 2]) == 7 == h_monomials(2, [1, 2])


def test_sylvester_examples():
    assert h_sylvester(1, [Fraction(2), Fraction(5)]) == 7
    assert Fraction(4, 2 - 5) + Fraction(25, 5 - 2) == 7
    assert h_sylvester(0, [Fraction(2), Fraction(5)]) == 1
    xs = [Fraction(1), Fraction(2), Fraction(3)]
    assert h_sylvester(3, xs) == h_complete(3, xs)


def test_sylvester_rejects_duplicates():
    with pytest.raises(ValueError):
        h_sylvester(2, [Fraction(1, 2), Fraction(1, 2)])
    with pytest.raises(ValueError):
        h_sylvester(2, [0.5, 0.5 + 1e-12])
    h_sylvester(2, [0.5, 0.5 + 1e-6])


def test_stirling_examples():
    assert all(stirling2(t, t) == 1 for t in range(12))
    assert stirling2(3, 0) == 0
    assert stirling2(4, 2) == 7 == count_partitions(4, 2)


@pytest.mark.parametrize("t,k", [(t, k) for t in range(7) for k in range(t + 1)])
def test_stirling_matches_partition_count(t, k):
    assert stirling2(t, k) == count_partitions(t, k)
    assert stirling2(t, k) == h_complete(t - k, list(range(k + 1)))


def test_r_stirling_examples():
    for t in range(11):
        for k in range(11):
            assert r_stirling2(t, 0, k) == stirling2(t, k)
            if k >= 1:
                assert r_stirling2(t, 1, k) == stirling2(t, k)
    assert all(r_stirling2(k, r, k) == 1 for k in range(8) for r in range(k + 1))
    assert r_stirling2(3, 2, 2) == 2


def test_r_stirling_two_routes():
    for r in range(9):
        for k in range(r, 9):
            for t in range(15):
                assert r_stirling2(t, r, k) == r_stirling2_fd(t, r, k), (t, r, k)


def test_finite_difference_examples():
    f = lambda x: x * x
    assert finite_difference(f, 0, 5) == 25
    assert finite_difference(f, 2, 0) == 2 == 0 - 2 * 1 + 4
    assert finite_difference(f, 3, 0) == 0


def test_binomial():
    assert binomial(9, 2) == 36
    assert all(binomial(n, 0) == 1 for n in range(10))
    assert binomial(7, 3) == 35
    row = [1]
    for _ in range(7):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    assert row[3] == 35
    assert binomial(4, -1) == 0 == binomial(4, 5)


def test_stirling_power_identity():
    for n in range(13):
        for t in range(13):
            assert n**t == sum(falling_factorial(n, j) * stirling2(t, j) for j in range(t + 1))


@given(st.integers(-1, 8), var_lists, st.randoms())
def test_h_permutation_invariant(d, xs, rnd):
    ys = list(xs)
    rnd.shuffle(ys)
    assert h_complete(d, xs) == h_complete(d, ys) == h_monomials(d, xs)


@given(st.integers(0, 6), st.lists(rationals, min_size=2, max_size=6), st.data())
def test_splitting_identity(d, xs, data):
    j = data.draw(st.integers(0, len(xs) - 1))
    rest = xs[:j] + xs[j + 1 :]
    assert h_complete(d, xs) == xs[j] * h_complete(d - 1, xs) + h_complete(d, rest)


@given(st.integers(0, 6), st.lists(rationals, min_size=2, max_size=6), st.data())
def test_power_expansion_identity(t, xs, data):
    j = data.draw(st.integers(0, len(xs) - 1))
    rest = xs[:j] + xs[j + 1 :]
    assert h_complete(t, xs) == sum(xs[j] ** d * h_complete(t - d, rest) for d in range(t + 1))


@given(st.integers(0, 8), st.lists(rationals, min_size=1, max_size=6, unique=True))
def test_sylvester_equals_dp_exact(d, xs):
    assert h_sylvester(d, xs) == h_complete(d, xs)


@settings(max_examples=200)
@given(st.integers(0, 20), st.integers(1, 10), st.data())
def test_sylvester_float_accuracy(d, m, data):
    # spread points on a 0.05 grid so every pairwise gap is at least 0.05
    slots = data.draw(st.lists(st.integers(0, 20), min_size=m, max_size=m, unique=True))
    xs = [s * 0.05 for s in slots]
    exact = h_complete(d, [Fraction(s, 20) for s in slots])
    approx = h_sylvester(d, xs)
    assert abs(approx - float(exact)) <= 1e-9 * max(abs(float(exact)), 1e-300)
