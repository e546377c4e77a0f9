"""Finite enumeration engine behind the no-better-reducible-example bound,
plus replay drivers for the worked examples.

For s >= 7 general lines in P^3, no integer vector v = (m_1,...,m_s) with
d >= max(m_j) can have a positive Hilbert polynomial value at d while the
averaged ratio d*s/sum(m_j) stays below the root bound g(3, 1, s).  The
claim reduces to a finite region for 7 <= s <= 12:

    d <= -g(11g - 5s)/(6g^2 - 3sg - 3s),
    d*s/g < sum(m_j) <= -s(11g - 5s)/(6g^2 - 3sg - 3s),

which this module enumerates exhaustively (multiplicity vectors as
nondecreasing sequences), checking P <= 0 throughout.  All comparisons
against the algebraic bound g are exact: ratio tests go through the sign of
the scaling-limit polynomial and cap tests through ``sign_at``.  For
s >= 13 the analytic branch rests on two polynomial positivity checks that
are verified directly.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .asymptotic import g_value, lambda_poly
from .hilbert import conditions_count
from .polynomials import UniPoly, binom, decimal_str
from .roots import AlgebraicNumber, refine, sign_at
from .waldschmidt import CertificationError, bounds_report, e_certify, e_empirical


def two_line_overlap_value(m1: int, m2: int, t: int) -> int:
    """Hilbert polynomial bound for two lines whose multiplicities overflow the degree.

    With d = m1 + m2 - t - 1 (so 0 <= t <= m1 - 1 keeps d >= max(m1, m2)),
    evaluates C(d+3, 3) - c(3,1,m1,d) - c(3,1,m2,d).  The value is always
    <= 0; the equivalent factored expression (see
    :func:`two_line_overlap_factored`) computes exactly six times it.
    """
    if not 1 <= m1 <= m2:
        raise ValueError("need 1 <= m1 <= m2")
    if not 0 <= t <= m1 - 1:
        raise ValueError("need 0 <= t <= m1 - 1")
    d = m1 + m2 - t - 1
    value = binom(d + 3, 3) - conditions_count(3, 1, m1, d) - conditions_count(3, 1, m2, d)
    factored = two_line_overlap_factored(m1, m2, t)
    if factored != 6 * value:
        raise ArithmeticError(
            f"erratum candidate: factored form {factored} != 6 * direct value {value} "
            f"at (m1={m1}, m2={m2}, t={t})"
        )
    return value


def two_line_overlap_factored(m1: int, m2: int, t: int) -> int:
    """The factored companion expression; equals six times the direct value."""
    return (
        -3 * t * (2 * m1 * m2 - (m1 + m2) * t)
        - 3 * m2 * t
        - 3 * m1 * t
        - t * (t - 1) * (t - 2)
    )


@dataclass(frozen=True)
class Violation:
    d: int
    mults: tuple[int, ...]
    value: int


@dataclass(frozen=True)
class NosymetryReport:
    """Outcome of the finite enumeration for one s in 7..12."""

    s: int
    g: AlgebraicNumber
    d_bound: Fraction
    sum_bound: Fraction
    d_cap: int
    sum_cap: int
    cases_checked: int  # nondecreasing multiplicity sequences scanned
    case_counts: tuple[tuple[int, int], ...]  # (d, admissible vectors at d)
    pairs_checked: int
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "g": self.g.to_json(),
            "d_bound": decimal_str(self.d_bound, 6),
            "sum_bound": decimal_str(self.sum_bound, 6),
            "d_cap": self.d_cap,
            "sum_cap": self.sum_cap,
            "cases": self.cases_checked,
            "case_counts": {str(d): c for d, c in self.case_counts},
            "pairs_checked": self.pairs_checked,
            "violations": [
                {"d": v.d, "mults": list(v.mults), "value": v.value} for v in self.violations
            ],
        }


def _bound_polys(s: int, value: int) -> tuple[UniPoly, UniPoly]:
    """Cap-test polynomials in g for the degree and multiplicity-sum bounds.

    With den(g) = 6g^2 - 3sg - 3s negative on 7 <= s <= 12, the conditions

        d  < -g(11g - 5s)/den   and   k <= -s(11g - 5s)/den

    become sign conditions: d admissible iff psi_d(g) > 0, k admissible iff
    phi_k(g) >= 0, where both polynomials are returned here.
    """
    den = UniPoly([-3 * s, -3 * s, 6])
    num = UniPoly([0, -5 * s, 11])  # g*(11g - 5s)
    psi = UniPoly([value]) * den + num  # d*den + g(11g-5s) > 0  <=>  d < -num/den
    phi = UniPoly([value]) * den + s * UniPoly([-5 * s, 11])
    return psi, phi


def nosymetry_bounds(s: int, precision: Fraction = Fraction(1, 10**18)) -> tuple[AlgebraicNumber, Fraction, Fraction]:
    """The root bound g(3,1,s) and the two enumeration bounds to high accuracy.

    The reported bounds are interval-midpoint rationals whose certified
    error is far below 1e-4; integer caps are decided exactly elsewhere.
    """
    if not 7 <= s <= 12:
        raise ValueError("the finite branch covers 7 <= s <= 12")
    g = refine(g_value(3, 1, s), precision)
    lo, hi = g.lo, g.hi
    # interval arithmetic through the two rational expressions
    num_lo, num_hi = 5 * s * lo - 11 * hi * hi, 5 * s * hi - 11 * lo * lo  # -g(11g-5s)
    den_lo, den_hi = 6 * lo * lo - 3 * s * hi - 3 * s, 6 * hi * hi - 3 * s * lo - 3 * s
    if den_hi >= 0:
        raise ArithmeticError("denominator interval must be negative for 7 <= s <= 12")
    quots = [n / d for n in (num_lo, num_hi) for d in (den_lo, den_hi)]
    d_lo, d_hi = min(quots), max(quots)
    sum_quots = [q * s for q in quots]
    # -g(...)/den versus -s(...)/den differ by the factor s/g
    sum_lo = min(q / g_mid for q in sum_quots for g_mid in (lo, hi))
    sum_hi = max(q / g_mid for q in sum_quots for g_mid in (lo, hi))
    if d_hi - d_lo > Fraction(1, 10**6) or sum_hi - sum_lo > Fraction(1, 10**6):
        raise ArithmeticError("bound intervals did not converge")
    return g, (d_lo + d_hi) / 2, (sum_lo + sum_hi) / 2


def _caps(s: int, g: AlgebraicNumber) -> tuple[int, int]:
    """Exact integer caps: largest admissible d and largest admissible sum."""
    d_cap = 0
    while True:
        psi, _ = _bound_polys(s, d_cap + 1)
        if sign_at(g, psi) > 0:
            d_cap += 1
        else:
            break
    sum_cap = 0
    while True:
        _, phi = _bound_polys(s, sum_cap + 1)
        if sign_at(g, phi) >= 0:
            sum_cap += 1
        else:
            break
    return d_cap, sum_cap


def _nondecreasing_vectors(s: int, total: int) -> Iterator[tuple[int, ...]]:
    """All nondecreasing s-tuples of nonnegative integers with the given sum."""

    def gen(slots: int, minimum: int, remaining: int) -> Iterator[tuple[int, ...]]:
        if slots == 0:
            if remaining == 0:
                yield ()
            return
        for value in range(minimum, remaining + 1):
            if value * slots > remaining:
                break
            for rest in gen(slots - 1, value, remaining - value):
                yield (value,) + rest

    yield from gen(s, 0, total)


def _ratio_below_g(lam: UniPoly, d: int, s: int, total: int) -> bool:
    """Exact test for d*s/total < g via the sign of the scaling-limit polynomial."""
    x = Fraction(d * s, total)
    return lam(x) < 0


def _scan_sum_block(args: tuple[int, int, int]) -> tuple[int, int, dict, int, list]:
    """Worker: scan all vectors with one fixed multiplicity sum."""
    s, total, d_cap = args
    lam = lambda_poly(3, 1, s)
    sequences = 0
    counts: dict[int, int] = {}
    pairs = 0
    violations: list[Violation] = []
    for vec in _nondecreasing_vectors(s, total):
        sequences += 1
        top = vec[-1]
        for d in range(max(2, top), d_cap + 1):
            if not _ratio_below_g(lam, d, s, total):
                continue
            counts[d] = counts.get(d, 0) + 1
            pairs += 1
            value = binom(d + 3, 3) - sum(
                conditions_count(3, 1, m, d) for m in vec if m > 0
            )
            if value > 0:
                violations.append(Violation(d, vec, value))
        # belt and braces: the d = 1 row, handled separately in the argument
        if top <= 1:
            d = 1
            if _ratio_below_g(lam, d, s, total):
                counts[d] = counts.get(d, 0) + 1
                pairs += 1
                value = binom(4, 3) - sum(
                    conditions_count(3, 1, m, d) for m in vec if m > 0
                )
                if value > 0:
                    violations.append(Violation(d, vec, value))
    return total, sequences, counts, pairs, violations


def nosymetry_enumerate(s: int, threads: int = 1) -> NosymetryReport:
    """Exhaustive scan of the finite region; zero violations expected.

    Multiplicity vectors run over nondecreasing sequences to quotient out
    the permutation symmetry; the per-degree case counts are deterministic
    and independent of the thread count (blocks are merged in sum order).
    """
    g, d_bound, sum_bound = nosymetry_bounds(s)
    d_cap, sum_cap = _caps(s, g)
    blocks = [(s, total, d_cap) for total in range(1, sum_cap + 1)]
    if threads > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_scan_sum_block, blocks))
    else:
        results = [_scan_sum_block(b) for b in blocks]
    results.sort(key=lambda item: item[0])
    sequences = 0
    counts: dict[int, int] = {}
    pairs = 0
    violations: list[Violation] = []
    for _total, seq, cnt, prs, viol in results:
        sequences += seq
        for d, c in cnt.items():
            counts[d] = counts.get(d, 0) + c
        pairs += prs
        violations.extend(viol)
    return NosymetryReport(
        s,
        g,
        d_bound,
        sum_bound,
        d_cap,
        sum_cap,
        sequences,
        tuple(sorted(counts.items())),
        pairs,
        tuple(violations),
    )


def analytic_branch_check(s: int) -> bool:
    """The two positivity facts behind the s >= 13 branch, checked exactly.

    Positivity of the scaling-limit polynomial at s/2 pins g below s/2
    (valid from s = 11), and at 5s/11 pins 11g below 5s (valid from s = 13).
    """
    lam = lambda_poly(3, 1, s)
    ok = True
    if s >= 11:
        ok = ok and lam(Fraction(s, 2)) > 0
    if s >= 13:
        ok = ok and lam(Fraction(5 * s, 11)) > 0
    return ok


@dataclass(frozen=True)
class ReplayAssertion:
    name: str
    expected: str
    got: str
    passed: bool


@dataclass(frozen=True)
class ReplayReport:
    example_id: str
    assertions: tuple[ReplayAssertion, ...]

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    def to_json(self) -> dict:
        return {
            "id": self.example_id,
            "passed": self.passed,
            "assertions": [
                {"name": a.name, "expected": a.expected, "got": a.got, "passed": a.passed}
                for a in self.assertions
            ],
        }


def _assert_eq(name: str, expected, got) -> ReplayAssertion:
    return ReplayAssertion(name, str(expected), str(got), expected == got)


def _assert_close(name: str, expected: str, value: Fraction, tol: Fraction) -> ReplayAssertion:
    target = Fraction(expected)
    return ReplayAssertion(name, expected, decimal_str(value, 8), abs(value - target) <= tol)


def _replay_e(n: int, r: int, s: int, expected: Fraction, m_max: int) -> ReplayReport:
    witness = e_empirical(n, r, s, m_max)
    rows = [_assert_eq("empirical ratio", expected, witness.ratio)]
    try:
        cert = e_certify(n, r, s, witness.ratio)
        rows.append(_assert_eq("certified", True, True))
        rows.append(
            ReplayAssertion(
                "m_threshold", "finite", str(cert.m_threshold), cert.m_threshold >= 1
            )
        )
    except CertificationError as err:
        rows.append(ReplayAssertion("certified", "True", f"failed at {err.step}", False))
    return ReplayReport(f"e-{n}-{r}-{s}", tuple(rows))


def _replay_g_table() -> ReplayReport:
    expected = {1: "1", 2: "2", 3: "2.584", 4: "3.064", 5: "3.482"}
    tol = Fraction(1, 1000)
    rows = []
    for s, text in expected.items():
        g = g_value(3, 1, s)
        rows.append(_assert_close(f"g(3,1,{s})", text, g.midpoint, tol))
    return ReplayReport("g-table-3-1", tuple(rows))


def _replay_points_3_0_4() -> ReplayReport:
    report = bounds_report(3, 0, 4)
    rows = [
        _assert_eq("gamma", Fraction(4, 3), report.gamma.value if report.gamma else None),
        _assert_eq("e", Fraction(3, 2), report.e),
        _assert_eq("e certified", True, report.e_certified),
        _assert_close("g", "1.5874010520", report.g.midpoint, Fraction(1, 10**6)),
        _assert_eq(
            "strict chain",
            True,
            report.gamma.value < report.e and lambda_poly(3, 0, 4)(report.e) < 0,
        ),
    ]
    return ReplayReport("points-3-0-4", tuple(rows))


def _replay_six_lines() -> ReplayReport:
    from .hilbert import hilbert_poly_mixed, hilbert_poly_uniform

    rows = [
        _assert_eq("P(3,1,6,7)(27)", 28, hilbert_poly_uniform(3, 1, 6, 7)(27)),
        _assert_eq(
            "P(3,1,(4,3,3,3,3,3))(12)", -5, hilbert_poly_mixed(3, 1, (4, 3, 3, 3, 3, 3))(12)
        ),
        _assert_eq(
            "upper bound 42/11 below e", True, Fraction(42, 11) < Fraction(27, 7)
        ),
        _assert_close("g(3,1,6)", "3.8587837", g_value(3, 1, 6).midpoint, Fraction(1, 10**6)),
    ]
    return ReplayReport("six-lines", tuple(rows))


def _replay_five_lines() -> ReplayReport:
    from .hilbert import alpha_lines_general, hilbert_poly_mixed
    from .waldschmidt import gamma_known_lookup

    expected = {1: Fraction(1), 2: Fraction(2), 3: Fraction(2), 4: Fraction(8, 3), 5: Fraction(10, 3)}
    rows = []
    for s, value in expected.items():
        known = gamma_known_lookup(3, 1, s)
        rows.append(_assert_eq(f"gamma(3,1,{s})", value, known.value if known else None))
    rows.append(_assert_eq("alpha of 3 lines", 2, alpha_lines_general(3, 3)))
    rows.append(
        _assert_eq("P(3,1,(1,1,1,0,0))(2) > 0", True, hilbert_poly_mixed(3, 1, (1, 1, 1, 0, 0))(2) > 0)
    )
    return ReplayReport("five-lines", tuple(rows))


_REPLAYS = {
    "e-3-0-4": lambda: _replay_e(3, 0, 4, Fraction(3, 2), 12),
    "e-3-1-6": lambda: _replay_e(3, 1, 6, Fraction(27, 7), 50),
    "g-table-3-1": _replay_g_table,
    "points-3-0-4": _replay_points_3_0_4,
    "six-lines": _replay_six_lines,
    "five-lines": _replay_five_lines,
}


def replay_ids() -> list[str]:
    return sorted(_REPLAYS)


def replay_appendix(example_id: str) -> ReplayReport:
    """Re-run one registered worked example end to end and diff the values."""
    if example_id not in _REPLAYS:
        raise KeyError(f"unknown example id {example_id!r}; known: {', '.join(replay_ids())}")
    return _REPLAYS[example_id]()
