"""Corank-one map germs, their multiple point ideals and dimension checks.

A germ in normal form is ``(x, u1..u_{n-1}) -> (f_n, ..., f_N, u)``.  Only the
``N - n + 1`` non-``u`` components are stored; the ``u`` coordinates are
implicit.  Optional *parameters* are extra ring variables treated like the
``u``'s (an unfolding), which is how families such as ``f_{a,b,c}`` are
handled symbolically.
"""

from __future__ import annotations

import enum
from collections.abc import Sequence
from dataclasses import dataclass, field

from .errors import InputError, NotCentered
from .groebner import (DEFAULT_BUDGET, GroebnerBasis, MonomialOrder, buchberger,
                       contains_one, ideal_dimension)
from .linalg import SparseMatrix, rank
from .poly import Polynomial, divided_difference_chain, point_names


@dataclass(frozen=True)
class MapGerm:
    n: int
    N: int
    components: tuple
    parameters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "parameters", tuple(self.parameters))
        if not 0 < self.n <= self.N:
            raise InputError(f"need 0 < n <= N, got n={self.n}, N={self.N}")
        expected = self.N - self.n + 1
        if len(self.components) != expected:
            raise InputError(f"a germ C^{self.n} -> C^{self.N} in normal form has "
                             f"{expected} explicit components, got {len(self.components)}")
        for c in self.components:
            if c.variables != self.source_variables:
                raise InputError(f"component ring {c.variables} != {self.source_variables}")

    @classmethod
    def from_strings(cls, n: int, N: int, components: Sequence[str], parameters: Sequence[str] = ()):
        ring = source_ring(n, parameters)
        return cls(n, N, tuple(Polynomial.parse(s, ring) for s in components), tuple(parameters))

    @property
    def u_names(self) -> tuple:
        return tuple(f"u{i}" for i in range(1, self.n))

    @property
    def source_variables(self) -> tuple:
        return ("x",) + self.u_names + self.parameters

    @property
    def unfolded_dims(self) -> tuple[int, int]:
        """(n, N) of the map with parameters counted as unfolding coordinates."""
        r = len(self.parameters)
        return self.n + r, self.N + r

    @property
    def is_immersive(self) -> bool:
        return corank_at_origin(self) == 0

    def __str__(self):
        comps = ", ".join(str(c) for c in self.components)
        us = ", ".join(self.u_names)
        return f"({comps}{', ' + us if us else ''})"


def source_ring(n: int, parameters: Sequence[str] = ()) -> tuple:
    return ("x",) + tuple(f"u{i}" for i in range(1, n)) + tuple(parameters)


def corank_at_origin(germ: MapGerm) -> int:
    """n minus the rank of the Jacobian of all N components at the origin."""
    ring = germ.source_variables
    for c in germ.components:
        if c.constant_term():
            raise NotCentered(f"component {c} does not vanish at the origin")
    rows = []
    src = ("x",) + germ.u_names
    for c in germ.components:
        rows.append([c.coefficient(tuple(int(w == v) for w in ring)) for v in src])
    for u in germ.u_names:
        rows.append([int(v == u) for v in src])
    return germ.n - rank(SparseMatrix.from_dense(rows))


@dataclass(frozen=True)
class MultiplePointIdeal:
    k: int
    variables: tuple
    generators: tuple

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


def ideal_ring(germ: MapGerm, k: int) -> tuple:
    return point_names(k) + germ.u_names + germ.parameters


def dk_ideal(germ: MapGerm, k: int) -> MultiplePointIdeal:
    """Generators f_j[x1..xm, u] for every explicit component and 2 <= m <= k."""
    if k < 2:
        raise ValueError("multiple point ideals start at k = 2")
    ring = ideal_ring(germ, k)
    gens = []
    for f in germ.components:
        for m in range(2, k + 1):
            gens.append(divided_difference_chain(f, m).embed(ring))
    return MultiplePointIdeal(k, ring, tuple(gens))


def expected_dim(n: int, N: int, k: int) -> int:
    return k * n - (k - 1) * N


def default_kmax(n: int, N: int) -> int:
    return N // (N - n) + 1 if N > n else 2


class Verdict(str, enum.Enum):
    DIMENSIONALLY_CORRECT = "DimensionallyCorrect"
    NOT_DIMENSIONALLY_CORRECT = "NotDimensionallyCorrect"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class DimRecord:
    k: int
    expected_dim: int
    is_empty: bool
    actual_dim: int | None
    basis: GroebnerBasis | None = field(default=None, repr=False)

    @property
    def ok(self) -> bool:
        return self.is_empty or self.actual_dim == self.expected_dim

    def as_dict(self) -> dict:
        return {"k": self.k, "expected_dim": self.expected_dim,
                "is_empty": self.is_empty, "actual_dim": self.actual_dim}


@dataclass
class DimCheckReport:
    records: list
    verdict: Verdict

    def as_dict(self) -> dict:
        return {"records": [r.as_dict() for r in self.records], "verdict": self.verdict.value}


def dim_check(germ: MapGerm, kmax: int | None = None, budget: int = DEFAULT_BUDGET) -> DimCheckReport:
    """Check D^2, D^3, ... against the expected dimension until one is empty.

    With parameters present, the check is for the family: the parameters count
    as both source and target unfolding coordinates.
    """
    n, N = germ.unfolded_dims
    if kmax is None:
        kmax = default_kmax(germ.n, germ.N)
    if kmax < 2:
        raise InputError("kmax must be at least 2")
    records = []
    for k in range(2, kmax + 1):
        ideal = dk_ideal(germ, k)
        gb = buchberger(ideal.generators, MonomialOrder("grevlex", ideal.variables), budget)
        empty = contains_one(gb)
        records.append(DimRecord(k, expected_dim(n, N, k), empty,
                                 None if empty else ideal_dimension(gb), gb))
        if empty:
            break
    if not all(r.ok for r in records):
        verdict = Verdict.NOT_DIMENSIONALLY_CORRECT
    elif not records[-1].is_empty:
        verdict = Verdict.INCONCLUSIVE
    else:
        verdict = Verdict.DIMENSIONALLY_CORRECT
    return DimCheckReport(records, verdict)
