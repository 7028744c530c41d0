"""Degree bounds for the rational homology of a disentanglement.

For a germ profile (n, N, d) with d the dimension of the instability locus,
the first page of the image spectral sequence can only be nonzero at the
cells of :func:`first_page_mask`; totalizing the mask gives the degrees in
which reduced Betti numbers may be nonzero.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import InputError


@dataclass(frozen=True)
class GermProfile:
    n: int
    N: int
    d: int

    def __post_init__(self):
        if not 0 < self.n < self.N:
            raise InputError(f"need 0 < n < N, got n={self.n}, N={self.N}")
        if not 0 <= self.d <= self.n:
            raise InputError(f"need 0 <= d <= n, got d={self.d}")

    @property
    def top_multiplicity(self) -> int:
        """floor(N / (N - n)): the largest k with D^k possibly nonempty."""
        return self.N // (self.N - self.n)

    @property
    def connectivity_threshold(self) -> int:
        """ceil((N - d) / (N - n)): from here on D^k may be disconnected."""
        return -(-(self.N - self.d) // (self.N - self.n))

    def expected_dim(self, k: int) -> int:
        return k * self.n - (k - 1) * self.N


class Cell(str, enum.Enum):
    FORBIDDEN = "x"
    ALLOWED = "o"


@dataclass
class FirstPageMask:
    profile: GermProfile
    allowed: dict = field(default_factory=dict)   # k -> sorted list of q

    @property
    def columns(self) -> list[int]:
        return list(range(1, self.profile.top_multiplicity + 1))

    @property
    def height(self) -> int:
        return max(max(qs, default=0) for qs in self.allowed.values())

    def cell(self, k: int, q: int) -> Cell:
        return Cell.ALLOWED if q in self.allowed.get(k, ()) else Cell.FORBIDDEN

    def render(self, symbols=("×", "•")) -> str:
        """The mask as a table: rows q (top down), columns k; x zero, bullet possibly nonzero."""
        forbidden, allowed = symbols
        cols = self.columns
        width = max(len(str(c)) for c in cols)
        qw = len(str(self.height))
        lines = []
        for q in range(self.height + 1, -1, -1):
            cells = [(allowed if self.cell(k, q) is Cell.ALLOWED else forbidden).rjust(width)
                     for k in cols]
            lines.append(f"{str(q).rjust(qw)} | " + " ".join(cells))
        lines.append("-" * (qw + 1) + "+" + "-" * (len(cols) * (width + 1)))
        lines.append(" " * qw + " k " + " ".join(str(c).rjust(width) for c in cols))
        return "\n".join(lines)


def first_page_mask(p: GermProfile) -> FirstPageMask:
    allowed = {1: [0]}
    for k in range(2, p.top_multiplicity + 1):
        e = p.expected_dim(k)
        qs = set(range(max(1, e - p.d), e + 1))
        if k >= p.connectivity_threshold:
            qs.add(0)
        allowed[k] = sorted(qs)
    return FirstPageMask(p, allowed)


def admissible_total_degrees(p: GermProfile) -> set[int]:
    """Total degrees reachable from allowed first-page cells, column k sitting at p = k - 1."""
    mask = first_page_mask(p)
    out = {0}
    for k, qs in mask.allowed.items():
        out.update(k - 1 + q for q in qs)
    return out


def displayed_formula_degrees(p: GermProfile) -> set[int]:
    """{k(n+1) - (k-1)N - s  :  1 < k <= floor(N/(N-n)), 0 <= s <= d}.

    Reported alongside :func:`admissible_total_degrees`; for N = n + 1 the two
    differ by a shift of one, and only the totalized mask matches the range
    n - d <= q <= n.
    """
    return {k * (p.n + 1) - (k - 1) * p.N - s
            for k in range(2, p.top_multiplicity + 1)
            for s in range(p.d + 1)}


class BettiVerdict(str, enum.Enum):
    CONSISTENT = "Consistent"
    INCONSISTENT = "Inconsistent"


@dataclass
class BettiCheck:
    verdict: BettiVerdict
    admissible: list
    reasons: list

    @property
    def consistent(self) -> bool:
        return self.verdict is BettiVerdict.CONSISTENT

    def as_dict(self) -> dict:
        return {"verdict": self.verdict.value, "admissible": self.admissible, "reasons": self.reasons}


def check_betti(betti, p: GermProfile) -> BettiCheck:
    """Reduced Betti numbers must vanish outside the admissible degrees; b_0 = 1."""
    degrees = admissible_total_degrees(p)
    reasons = []
    if not betti or betti[0] != 1:
        reasons.append(f"b_0 = {betti[0] if betti else 0}, expected a connected image")
    for m, b in enumerate(betti):
        if m >= 1 and b and m not in degrees:
            reasons.append(f"b_{m} = {b} in a forbidden degree")
    verdict = BettiVerdict.INCONSISTENT if reasons else BettiVerdict.CONSISTENT
    return BettiCheck(verdict, sorted(degrees), reasons)
