"""Certified real-root counting and isolation for rational polynomials.

Root counts come from sign-variation chains (Sturm's method) computed on the
squarefree part, so repeated roots cannot confuse the count.  Isolation is
bisection driven by those exact counts, followed by a rational-candidate test
so that rational roots are reported exactly (a degenerate one-point interval)
instead of as a narrow interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .polynomials import (
    UniPoly,
    decimal_str,
    fraction_to_json,
    poly_divmod,
    squarefree_part,
)

DEFAULT_PRECISION = Fraction(1, 10**12)


@dataclass(frozen=True)
class AlgebraicNumber:
    """A real algebraic number certified by a defining polynomial and interval.

    ``defining`` is squarefree with integer-primitive coefficients and positive
    leading coefficient; it has exactly one real root in [lo, hi].  When the
    number is rational the interval degenerates to a point.  ``decimal`` is a
    rendering of the interval midpoint whose error is bounded by half the
    interval width plus one unit in the last rendered digit.
    """

    defining: UniPoly
    lo: Fraction
    hi: Fraction
    decimal: str

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> Fraction:
        if not self.is_exact:
            raise ValueError("not an exact rational; use the interval")
        return self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def to_json(self) -> dict:
        return {
            "defining": self.defining.to_json(),
            "interval": [fraction_to_json(self.lo), fraction_to_json(self.hi)],
            "decimal": self.decimal,
        }


def sturm_chain(p: UniPoly) -> list[UniPoly]:
    """Sign-variation chain of the squarefree part of p."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    f = squarefree_part(p)
    chain = [f, f.derivative()]
    while not chain[-1].is_zero:
        _, r = poly_divmod(chain[-2], chain[-1])
        chain.append(-r)
    chain.pop()
    return chain


def sign_variations(chain: list[UniPoly], x: Fraction) -> int:
    signs = []
    for f in chain:
        v = f(x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_in(p: UniPoly, lo: Fraction, hi: Fraction, chain: list[UniPoly] | None = None) -> int:
    """Exact number of distinct real roots of p in the half-open interval (lo, hi]."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError("count_roots_in requires lo < hi")
    if chain is None:
        chain = sturm_chain(p)
    return sign_variations(chain, lo) - sign_variations(chain, hi)


def cauchy_root_bound(p: UniPoly) -> Fraction:
    """All real roots of p lie in (-B, B) for this B."""
    if p.is_zero or p.degree == 0:
        return Fraction(1)
    lead = abs(p.leading)
    return 1 + max(abs(c) / lead for c in p.coeffs[:-1])


def count_roots_geq(p: UniPoly, x0: Fraction) -> int:
    """Number of distinct real roots of p in [x0, infinity)."""
    x0 = Fraction(x0)
    bound = max(cauchy_root_bound(p), x0 + 1)
    at_x0 = 1 if p(x0) == 0 else 0
    return at_x0 + count_roots_in(p, x0, bound)


def simplest_rational_in(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational with smallest denominator (then numerator) in [lo, hi]."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise ValueError("empty interval")
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_rational_in(-hi, -lo)
    # now 0 < lo <= hi; continued-fraction walk
    p0, q0, p1, q1 = 0, 1, 1, 0  # accumulated convergent transform
    a, b = lo, hi
    while True:
        f = a.numerator // a.denominator
        if f + 1 <= b:  # an integer strictly inside [a, b] after the shift
            n = f + 1 if a > f else f
            return Fraction(p1 * n + p0, q1 * n + q0)
        if a == f:  # a itself is the integer endpoint
            return Fraction(p1 * f + p0, q1 * f + q0)
        p0, p1 = p1, p1 * f + p0
        q0, q1 = q1, q1 * f + q0
        a, b = 1 / (b - f), 1 / (a - f)


def _exact(defining: UniPoly, value: Fraction) -> AlgebraicNumber:
    return AlgebraicNumber(defining, value, value, decimal_str(value))


def isolate_largest_root(
    p: UniPoly,
    lower: Fraction,
    precision: Fraction = DEFAULT_PRECISION,
) -> Optional[AlgebraicNumber]:
    """Largest real root of p that is >= lower, or None if there is none.

    Bisection is driven by exact root counts on the squarefree part; the
    returned interval has width at most ``precision``.  A rational root is
    detected by candidate testing and reported exactly.
    """
    if p.is_zero:
        raise ValueError("zero polynomial")
    lower = Fraction(lower)
    sf = squarefree_part(p)
    defining = sf.primitive()
    chain = sturm_chain(sf)
    hi = max(cauchy_root_bound(sf), lower + 1)
    above = count_roots_in(sf, lower, hi, chain)
    if above == 0:
        if p(lower) == 0:
            return _exact(defining, lower)
        return None
    lo = lower
    # narrow (lo, hi] until it contains exactly the largest root
    while count_roots_in(sf, lo, hi, chain) > 1:
        mid = (lo + hi) / 2
        if count_roots_in(sf, mid, hi, chain) >= 1:
            lo = mid
        else:
            hi = mid
    # refine to the requested width
    while hi - lo > precision:
        mid = (lo + hi) / 2
        if sf(mid) == 0:
            return _exact(defining, mid)
        if count_roots_in(sf, mid, hi, chain) == 1:
            lo = mid
        else:
            hi = mid
    cand = simplest_rational_in(lo, hi)
    if lo < cand <= hi and sf(cand) == 0:
        # the interval holds exactly one root of sf, so cand is that root
        return _exact(defining, cand)
    mid = (lo + hi) / 2
    return AlgebraicNumber(defining, lo, hi, decimal_str(mid))


def refine(alg: AlgebraicNumber, precision: Fraction) -> AlgebraicNumber:
    """Shrink the isolating interval to the requested width."""
    if alg.is_exact or alg.hi - alg.lo <= precision:
        return alg
    sf = alg.defining
    chain = sturm_chain(sf)
    lo, hi = alg.lo, alg.hi
    while hi - lo > precision:
        mid = (lo + hi) / 2
        if sf(mid) == 0:
            return _exact(alg.defining, mid)
        if count_roots_in(sf, mid, hi, chain) == 1:
            lo = mid
        else:
            hi = mid
    return AlgebraicNumber(alg.defining, lo, hi, decimal_str((lo + hi) / 2))


def _interval_eval(p: UniPoly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Interval Horner evaluation: encloses {p(x) : x in [lo, hi]}."""
    alo, ahi = Fraction(0), Fraction(0)
    for c in reversed(p.coeffs):
        prods = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(prods) + c, max(prods) + c
    return alo, ahi


def sign_at(alg: AlgebraicNumber, p: UniPoly) -> int:
    """Exact sign of p at the algebraic number (-1, 0, +1)."""
    if p.is_zero:
        return 0
    if alg.is_exact:
        v = p(alg.value)
        return 0 if v == 0 else (1 if v > 0 else -1)
    from .polynomials import poly_gcd

    g = poly_gcd(p, alg.defining)
    if g.degree > 0 and count_roots_in(g, alg.lo, alg.hi) > 0:
        # the defining polynomial has a single root there, so it is shared
        return 0
    current = alg
    for _ in range(8192):
        vlo, vhi = _interval_eval(p, current.lo, current.hi)
        if vlo > 0:
            return 1
        if vhi < 0:
            return -1
        current = refine(current, (current.hi - current.lo) / 4)
    raise ArithmeticError("sign_at failed to separate from zero")
