from math import factorial

import pytest

from fatflats.asymptotic import lambda_poly
from fatflats.blowup import (
    alt_sum_one,
    alt_sum_zero,
    expand_self_intersection,
    identity_check,
    intersection_number,
)
from fatflats.polynomials import UniPoly, binom


def test_alt_sums_examples():
    assert alt_sum_zero(2, 3) == 0  # 10 - 30 + 30 - 10
    assert alt_sum_one(1, 2) == 1  # 3 - 3 + 1
    # j = 0 sits outside the vanishing claim: the single-term sum is 1
    assert alt_sum_zero(5, 0) == 1


def test_alt_sums_domains():
    with pytest.raises(ValueError):
        alt_sum_zero(-1, 2)
    with pytest.raises(ValueError):
        alt_sum_one(0, 2)


def test_alt_sums_grids():
    for t in range(13):
        for j in range(1, 13):
            assert alt_sum_zero(t, j) == 0
    for t in range(1, 13):
        for j in range(13):
            assert alt_sum_one(t, j) == 1


def test_intersection_numbers():
    assert intersection_number(3, 1, 1) == -1
    assert intersection_number(3, 1, 2) == 0
    assert intersection_number(6, 2, 6) == 1
    assert intersection_number(3, 1, 0) == -2  # E^3 for a line in P^3
    with pytest.raises(ValueError):
        intersection_number(3, 3, 1)


def test_expansion_examples():
    assert expand_self_intersection(3, 1, 6) == UniPoly([12, -18, 0, 1])
    for n, s in [(3, 4), (4, 9), (5, 2)]:
        assert expand_self_intersection(n, 0, s) == UniPoly([-s] + [0] * (n - 1) + [1])
    assert expand_self_intersection(5, 2, 2) == UniPoly([-12, 30, -20, 0, 0, 1])


def test_identity_with_scaling_limit():
    assert identity_check(3, 1, 6)
    assert identity_check(7, 3, 5)
    for n in range(1, 11):
        for r in range((n - 1) // 2 + 1):
            for s in (1, 2, 3, 10, 100):
                assert identity_check(n, r, s)


def test_unit_sum_consistency():
    # the value-at-one consistency inside the identity proof
    for n in range(2, 13):
        for r in range(n):
            total = sum(
                (-1) ** (r - j) * binom(n, j) * binom(n - j - 1, r - j)
                for j in range(r + 1)
            )
            assert total == 1


def test_expansion_equals_factorial_times_lambda():
    assert expand_self_intersection(5, 2, 2) == factorial(5) * lambda_poly(5, 2, 2)
