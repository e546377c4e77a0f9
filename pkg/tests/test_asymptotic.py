from fractions import Fraction as F
from math import factorial

import pytest

from fatflats.asymptotic import (
    g_specials,
    g_value,
    lambda_poly,
    lambda_poly_via_leading,
    sign_profile_check,
    tower_check,
)
from fatflats.polynomials import UniPoly


def test_lambda_closed_forms():
    assert lambda_poly(3, 1, 6) == UniPoly([12, -18, 0, 1]) * F(1, 6)
    for n, s in [(2, 5), (3, 4), (5, 9)]:
        assert lambda_poly(n, 0, s) == (UniPoly([0] * n + [1]) - UniPoly([s])) * F(
            1, factorial(n)
        )
    for n, s in [(3, 2), (4, 9), (6, 5)]:
        expected = UniPoly([(n - 1) * s, -n * s] + [0] * (n - 2) + [1]) * F(1, factorial(n))
        assert lambda_poly(n, 1, s) == expected


def test_lambda_domain():
    with pytest.raises(ValueError):
        lambda_poly(3, 2, 2)
    with pytest.raises(ValueError):
        lambda_poly(3, 1, 0)
    lambda_poly(3, 2, 1)  # single flat: no disjointness constraint


def test_leading_extraction_matches_closed_form():
    for n in range(1, 9):
        for r in range((n - 1) // 2 + 1):
            for s in (1, 2, 5, 10, 100):
                assert lambda_poly(n, r, s) == lambda_poly_via_leading(n, r, s)


def test_tower_examples():
    assert tower_check(3, 1, 6)
    assert lambda_poly(3, 1, 6).derivative() == lambda_poly(2, 0, 6)
    assert tower_check(5, 2, 2)
    assert lambda_poly(5, 2, 2)(1) == F(-1, 120)
    assert lambda_poly(4, 1, 1)(1) == 0  # s = 1 collapses the value at 1


def test_tower_on_grid():
    for n in range(3, 9):
        for r in range(1, (n - 1) // 2 + 1):
            for s in (1, 2, 5, 10, 100):
                assert tower_check(n, r, s)


def test_g_table_values():
    approx = {2: 2.0, 3: 2.5842, 4: 3.0642, 5: 3.4826}
    for s, value in approx.items():
        g = g_value(3, 1, s)
        assert abs(float(g.midpoint) - value) < 1e-3
    g6 = g_value(3, 1, 6)
    assert abs(float(g6.midpoint) - 3.8587837) < 1e-6


def test_g_exact_cases():
    three = g_value(2, 0, 9)
    assert three.is_exact and three.value == 3
    assert g_value(11, 2, 729).is_exact and g_value(11, 2, 729).value == 3
    for r in range(1, 11):
        g = g_value(2 * r + 1, r, 2)
        assert g.is_exact and g.value == 2
    one = g_value(5, 2, 1)
    assert one.is_exact and one.value == 1


def test_g_points_defining_polynomial():
    for n in range(2, 7):
        for s in (2, 3, 9, 100):
            g = g_value(n, 0, s)
            assert g.defining == UniPoly([-s] + [0] * (n - 1) + [1])
            if g.is_exact:
                assert g.value**n == s


def test_g_precision_request():
    g = g_value(3, 1, 6, F(1, 10**6))
    assert g.hi - g.lo <= F(1, 10**6)
    assert lambda_poly(3, 1, 6)(g.lo) < 0 < lambda_poly(3, 1, 6)(g.hi)


def test_g_monotone_in_tower():
    # strict growth along the differentiation tower needs s >= 2
    for n in range(3, 9):
        for r in range(1, (n - 1) // 2 + 1):
            for s in (2, 5, 10, 100):
                upper = g_value(n, r, s)
                lower = g_value(n - 1, r - 1, s)
                assert upper.lo > lower.hi


def test_sign_profile():
    assert sign_profile_check(3, 1, 6)
    assert sign_profile_check(4, 0, 7)
    lam = lambda_poly(3, 1, 6)
    assert lam(1) == F(-5, 6)
    assert lam(4) == F(4, 6)


def test_g_specials_rows():
    rows = g_specials()
    assert [row.n for row in rows] == [3, 4, 5, 6, 7, 8]
    assert all(row.ok for row in rows)
    assert rows[0].s == 2 and rows[0].root == 2
    assert rows[1].s == 9 and rows[1].root == 3
    # direct evaluations behind two of the rows
    assert lambda_poly(4, 1, 9)(3) == 0
    assert lambda_poly(5, 1, 64)(4) == 0
