"""Scaling-limit polynomials of fat-flat Hilbert polynomials and their roots.

Substituting t = m*tau into the Hilbert polynomial of s fat r-flats of
multiplicity m in P^n and collecting the leading power of m yields a
degree-n polynomial in tau, here ``lambda_poly(n, r, s)``.  It has the
closed form

    (1/n!) * (tau^n - s * sum_{j=0}^{r} C(n, j) (tau - 1)^j),

is linked to lower (n, r) by differentiation, and has a single real root
g >= 1 whose value bounds the Waldschmidt constant of the ideal from above.
The closed form and the leading-coefficient extraction are implemented
independently and cross-checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .hilbert import check_flat_domain, hilbert_poly_symbolic
from .polynomials import UniPoly, binom, expand_scaled
from .roots import (
    DEFAULT_PRECISION,
    AlgebraicNumber,
    count_roots_geq,
    isolate_largest_root,
)


def lambda_poly(n: int, r: int, s: int) -> UniPoly:
    """Closed form of the scaling-limit polynomial, 1/n! factor included."""
    check_flat_domain(n, r, s)
    shifted = UniPoly([-1, 1])  # tau - 1
    correction = UniPoly()
    for j in range(r + 1):
        correction = correction + binom(n, j) * shifted**j
    lead = UniPoly([0] * n + [1])
    return (lead - s * correction) * Fraction(1, factorial(n))


def lambda_poly_via_leading(n: int, r: int, s: int) -> UniPoly:
    """Independent construction: the m^n coefficient of the Hilbert polynomial
    at t = m*tau, computed with m fully symbolic."""
    check_flat_domain(n, r, s)
    expansion = expand_scaled(hilbert_poly_symbolic(n, r, s))
    if len(expansion.coeffs_in_m) != n + 1:
        raise ArithmeticError("unexpected degree in the multiplicity variable")
    return expansion.coeffs_in_m[n]


def tower_check(n: int, r: int, s: int) -> bool:
    """Both tower identities, exactly: the tau-derivative steps down (n, r)
    by one, and the value at tau = 1 is (1 - s)/n!."""
    if r < 1:
        raise ValueError("tower_check needs r >= 1")
    check_flat_domain(n, r, s)
    lam = lambda_poly(n, r, s)
    step = lam.derivative() == lambda_poly(n - 1, r - 1, s)
    at_one = lam(1) == Fraction(1 - s, factorial(n))
    return step and at_one


def g_value(
    n: int,
    r: int,
    s: int,
    precision: Fraction = DEFAULT_PRECISION,
) -> AlgebraicNumber:
    """The largest real root of lambda_poly(n, r, s), certified.

    Every call machine-checks that the polynomial has exactly one real root
    in [1, infinity); a different count would contradict the sign analysis
    this whole construction rests on, so it is treated as fatal.  For s = 1
    the root is exactly 1 and is returned as an exact rational.
    """
    lam = lambda_poly(n, r, s)
    above = count_roots_geq(lam, Fraction(1))
    if above != 1:
        raise ArithmeticError(
            f"expected exactly one root >= 1 for (n={n}, r={r}, s={s}), found {above}"
        )
    root = isolate_largest_root(lam, Fraction(1), precision)
    assert root is not None
    return root


def sign_profile_check(n: int, r: int, s: int, samples: int = 5) -> bool:
    """Negativity strictly below the largest root and positivity above it.

    Checks ``samples`` rational points in [1, g) and ``samples`` points in
    (g, g + 2], using the certified isolating interval for g.
    """
    if s < 2:
        raise ValueError("sign profile is only nontrivial for s >= 2")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    lam = lambda_poly(n, r, s)
    g = g_value(n, r, s)
    below_width = g.lo - 1
    if below_width <= 0:
        return False
    for k in range(samples):
        tau = 1 + below_width * Fraction(k, samples)  # in [1, g.lo)
        if lam(tau) >= 0:
            return False
    above_width = (g.lo + 2) - g.hi
    for k in range(1, samples + 1):
        tau = g.hi + above_width * Fraction(k, samples)  # in (g, g + 2]
        if lam(tau) <= 0:
            return False
    return True


@dataclass(frozen=True)
class SpecialRootRow:
    """One verified instance of the integer-root family for lines."""

    n: int
    s: int
    root: int
    value_is_zero: bool
    is_largest: bool

    @property
    def ok(self) -> bool:
        return self.value_is_zero and self.is_largest


def g_specials(n_range=range(3, 9)) -> list[SpecialRootRow]:
    """For each n, verify exactly that tau = n - 1 is the largest root of
    the scaling-limit polynomial of (n-1)^(n-2) lines in P^n."""
    rows = []
    for n in n_range:
        s = (n - 1) ** (n - 2)
        lam = lambda_poly(n, 1, s)
        root = n - 1
        value_is_zero = lam(root) == 0
        g = g_value(n, 1, s)
        is_largest = g.is_exact and g.value == root
        rows.append(SpecialRootRow(n, s, root, value_is_zero, is_largest))
    return rows
