"""Linear systems with assigned point multiplicities and their Cremona reduction.

A system L_n(d; m_1,...,m_s) is the space of degree-d forms on P^n vanishing
to order m_i at s general points.  The standard Cremona involution sends it
to an isomorphic system: with c = (n-1)d - (m_1 + ... + m_{n+1}) over any
n+1 chosen points, the degree and the chosen multiplicities all shift by c.
Degrees and multiplicities may go negative along a reduction chain; a
negative multiplicity imposes no condition.

Emptiness and nonemptiness certificates:

* empty: d < 0, or some multiplicity exceeds d (order of vanishing beyond
  the degree kills the form);
* nonempty by count: positive virtual dimension forces a section when the
  degree dominates every multiplicity;
* nonempty by witness: a product of hyperplanes through subsets of at most
  n of the general points.  Such a product realizing degree d and coverage
  m_i exists if and only if max(m_i) <= d and sum(m_i) <= n*d (clamping
  negatives to zero), and a round-robin assignment constructs one.

``reduce_system`` greedily transforms on the n+1 largest multiplicities
while that lowers the degree, stopping as soon as a certificate fires.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .polynomials import binom
from .waldschmidt import gamma_points_closed


@dataclass(frozen=True)
class LinearSystem:
    """Degree-d forms on P^n with assigned multiplicities at general points."""

    n: int
    d: int
    mults: tuple[int, ...]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("Cremona systems live in P^n with n >= 2")
        object.__setattr__(self, "mults", tuple(int(m) for m in self.mults))

    @classmethod
    def parse(cls, n: int, text: str) -> "LinearSystem":
        """Parse the "d;m1,m2,..." notation."""
        head, _, tail = text.partition(";")
        mults = tuple(int(p) for p in tail.split(",") if p.strip()) if tail else ()
        return cls(n, int(head), mults)

    def format(self) -> str:
        return f"{self.d};{','.join(str(m) for m in self.mults)}"

    def padded(self, size: int) -> "LinearSystem":
        if len(self.mults) >= size:
            return self
        return LinearSystem(self.n, self.d, self.mults + (0,) * (size - len(self.mults)))

    def clamped(self) -> "LinearSystem":
        return LinearSystem(self.n, self.d, tuple(max(m, 0) for m in self.mults))


def cremona_transform(sys: LinearSystem, idx: Iterable[int]) -> tuple[LinearSystem, int]:
    """Apply the standard involution over the n+1 points selected by ``idx``.

    Returns the transformed system and the shift c; the multiplicity list is
    padded with zeros if it has fewer than n+1 entries.
    """
    chosen = sorted(set(idx))
    if len(chosen) != sys.n + 1:
        raise ValueError(f"need exactly n+1 = {sys.n + 1} distinct indices, got {chosen}")
    sys = sys.padded(max(chosen) + 1)
    if chosen[0] < 0 or chosen[-1] >= len(sys.mults):
        raise IndexError(f"index out of range in {chosen}")
    c = (sys.n - 1) * sys.d - sum(sys.mults[j] for j in chosen)
    mults = list(sys.mults)
    for j in chosen:
        mults[j] += c
    return LinearSystem(sys.n, sys.d + c, tuple(mults)), c


def empty_certificate(sys: LinearSystem) -> bool:
    """True when the system is certainly empty: negative degree, or a point
    whose required order of vanishing exceeds the degree."""
    if sys.d < 0:
        return True
    return any(m > sys.d for m in sys.mults)


def virtual_dimension(sys: LinearSystem) -> int:
    """Form count minus conditions, negatives clamped: C(d+n, n) - sum C(m_i+n-1, n)."""
    return binom(sys.d + sys.n, sys.n) - sum(
        binom(max(m, 0) + sys.n - 1, sys.n) for m in sys.mults
    )


def nonempty_certificate(sys: LinearSystem) -> bool:
    """True when the virtual dimension count forces a section.

    Only claimed when d >= every multiplicity, where the conditions are
    known to be exactly the naive count.
    """
    if sys.d < max((m for m in sys.mults), default=0):
        raise ValueError("count certificate requires d >= max multiplicity")
    return virtual_dimension(sys) > 0


@dataclass(frozen=True)
class Witness:
    """A product of hyperplanes: (point subset, weight) factors summing to d."""

    factors: tuple[tuple[tuple[int, ...], int], ...]

    def verify(self, sys: LinearSystem) -> bool:
        total = sum(w for _, w in self.factors)
        if total != sys.d:
            return False
        coverage = [0] * len(sys.mults)
        for subset, w in self.factors:
            if w < 0 or len(subset) > sys.n:
                return False
            for i in subset:
                coverage[i] += w
        return all(cov >= m for cov, m in zip(coverage, sys.mults))

    def to_json(self) -> list:
        return [{"points": list(subset), "weight": w} for subset, w in self.factors]


def hyperplane_product_witness(
    sys: LinearSystem, num_points: Optional[int] = None
) -> Optional[Witness]:
    """Explicit nonemptiness witness by hyperplanes through <= n points each.

    Assigning each degree unit a hyperplane through at most n of the general
    points, the required coverages are achievable exactly when every clamped
    multiplicity is <= d and their sum is <= n*d; a round-robin placement
    then distributes each point's m_i units over m_i distinct degree units.
    Returns None when no such product exists (which proves nothing about
    emptiness).
    """
    if num_points is not None:
        sys = sys.padded(num_points)
    if sys.d < 0:
        return None
    needs = [max(m, 0) for m in sys.mults]
    if any(m > sys.d for m in needs) or sum(needs) > sys.n * sys.d:
        return None
    boxes: list[list[int]] = [[] for _ in range(sys.d)]
    cursor = 0
    for point, need in enumerate(needs):
        for _ in range(need):
            boxes[cursor % sys.d].append(point)
            cursor += 1
    grouped: dict[tuple[int, ...], int] = {}
    for box in boxes:
        key = tuple(sorted(box))
        grouped[key] = grouped.get(key, 0) + 1
    witness = Witness(tuple(sorted(grouped.items())))
    assert witness.verify(sys.clamped()), "round-robin construction must verify"
    return witness


@dataclass(frozen=True)
class ReductionStep:
    chosen: tuple[int, ...]
    c: int
    result: LinearSystem


@dataclass(frozen=True)
class ReductionTrace:
    start: LinearSystem
    steps: tuple[ReductionStep, ...]
    verdict: str  # "empty" | "nonempty" | "undecided"
    certificate: str
    witness: Optional[Witness] = None

    @property
    def final(self) -> LinearSystem:
        return self.steps[-1].result if self.steps else self.start

    def to_json(self) -> dict:
        return {
            "start": self.start.format(),
            "steps": [
                {"idx": list(st.chosen), "c": st.c, "system": st.result.format()}
                for st in self.steps
            ],
            "verdict": self.verdict,
            "certificate": self.certificate,
            "witness": self.witness.to_json() if self.witness else None,
        }


def _greedy_indices(sys: LinearSystem) -> tuple[int, ...]:
    """Indices of the n+1 largest multiplicities, ties broken by lowest index."""
    order = sorted(range(len(sys.mults)), key=lambda i: (-sys.mults[i], i))
    return tuple(sorted(order[: sys.n + 1]))


def _certificate_verdict(sys: LinearSystem) -> Optional[tuple[str, str, Optional[Witness]]]:
    if empty_certificate(sys):
        reason = "negative degree" if sys.d < 0 else "a multiplicity exceeds the degree"
        return "empty", f"{reason} in {sys.format()}", None
    witness = hyperplane_product_witness(sys)
    if witness is not None:
        assert not empty_certificate(sys), "witness and emptiness cannot both fire"
        return "nonempty", f"hyperplane product witness on {sys.clamped().format()}", witness
    if sys.d >= max((m for m in sys.mults), default=0) and virtual_dimension(sys) > 0:
        return "nonempty", f"virtual dimension {virtual_dimension(sys)} > 0", None
    return None


def reduce_system(sys: LinearSystem, strategy: str = "greedy", max_steps: int = 64) -> ReductionTrace:
    """Greedy Cremona reduction until a certificate fires or progress stops.

    Repeatedly transforms on the n+1 largest multiplicities while the shift
    c is negative; checks the certificates before every step.  A step with
    c >= 0 is refused (it cannot help) and the trace ends undecided.
    """
    if strategy != "greedy":
        raise ValueError(f"unknown strategy {strategy!r}")
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    start = sys.padded(sys.n + 1)
    current = start
    steps: list[ReductionStep] = []
    for _ in range(max_steps + 1):
        hit = _certificate_verdict(current)
        if hit is not None:
            verdict, certificate, witness = hit
            return ReductionTrace(start, tuple(steps), verdict, certificate, witness)
        if len(steps) >= max_steps:
            break
        idx = _greedy_indices(current)
        c = (current.n - 1) * current.d - sum(current.mults[j] for j in idx)
        if c >= 0:
            return ReductionTrace(start, tuple(steps), "undecided", "no degree-lowering step available")
        current, c = cremona_transform(current, idx)
        steps.append(ReductionStep(idx, c, current))
    return ReductionTrace(start, tuple(steps), "undecided", "step limit reached")


@dataclass(frozen=True)
class GammaCaseRow:
    """One h-instance of the alpha bookkeeping for s general points."""

    h: int
    upper_system: LinearSystem
    upper_nonempty: bool
    lower_system: Optional[LinearSystem]
    lower_empty: Optional[bool]
    alpha: int
    multiplicity: int
    ratio: Fraction
    consistent: bool

    @property
    def ok(self) -> bool:
        return self.upper_nonempty and self.lower_empty is not False and self.consistent


@dataclass(frozen=True)
class GammaCaseReport:
    n: int
    s: int
    gamma: Fraction
    rows: tuple[GammaCaseRow, ...]
    endpoint_note: str

    @property
    def ok(self) -> bool:
        return all(row.ok for row in self.rows)


def _case_systems(n: int, s: int, h: int) -> tuple[LinearSystem, Optional[LinearSystem], int, int]:
    """Witness system, emptiness system (or None), degree and multiplicity."""
    if s == n + 1:
        d, m = h * (n + 1), h * n
        return (
            LinearSystem(n, d, (m,) * s),
            LinearSystem(n, d - 1, (m,) * s),
            d,
            m,
        )
    if s == n + 2:
        d, m = h * (n + 2), h * n
        return (
            LinearSystem(n, d, (m,) * s),
            LinearSystem(n, d - 1, (m,) * s),
            d,
            m,
        )
    if s == n + 3:
        if n % 2 == 0:
            half = n // 2
            d, m = h * (half + 1), h * half
            return LinearSystem(n, d, (m,) * s), None, d, m
        half = (n - 1) // 2
        d, m = h * (half + 1) * (n + 3), h * (half * (n + 3) + 1)
        lower = LinearSystem(
            n,
            h * (n + 1) * (n + 3) - 1,
            (h * ((n - 1) * (n + 3) + 2),) * s,
        )
        return LinearSystem(n, d, (m,) * s), lower, d, m
    raise ValueError(f"alpha bookkeeping covers n+1 <= s <= n+3, got s={s}, n={n}")


def verify_gamma_points_case(n: int, s: int, h_range: Iterable[int] = range(1, 4)) -> GammaCaseReport:
    """Replay the alpha bookkeeping for s in {n+1, n+2, n+3} general points.

    For each h: the witness system must reduce to nonempty, the system one
    degree lower (where an emptiness chain is available) must reduce to
    empty, and the realized ratio degree/multiplicity must match the closed
    form for the Waldschmidt constant.
    """
    gamma = gamma_points_closed(n, s)
    rows = []
    endpoint_note = ""
    for h in h_range:
        upper, lower, d, m = _case_systems(n, s, h)
        up_trace = reduce_system(upper)
        upper_ok = up_trace.verdict == "nonempty"
        lower_ok: Optional[bool] = None
        if lower is not None:
            lower_ok = reduce_system(lower).verdict == "empty"
        ratio = Fraction(d, m)
        consistent = ratio == gamma
        rows.append(GammaCaseRow(h, upper, upper_ok, lower, lower_ok, d, m, ratio, consistent))
        if s == n + 3 and h == 1 and n % 2 == 1:
            final = up_trace.final
            expected = sorted((n,) * (n + 1) + (-1, -1))
            endpoint_note = (
                "endpoint multiset matches the expected reduced system"
                if sorted(final.mults) == expected and final.d == n + 1
                else f"endpoint {final.format()} differs from the expected reduced system"
            )
        if s == n + 3 and h == 1 and n % 2 == 0:
            final = up_trace.final
            expected = sorted((1,) * n + (0, 0, 0))
            endpoint_note = (
                "endpoint multiset matches the expected reduced system"
                if sorted(final.mults) == expected and final.d == 1
                else f"endpoint {final.format()} differs from the expected reduced system"
            )
    return GammaCaseReport(n, s, gamma, tuple(rows), endpoint_note)
