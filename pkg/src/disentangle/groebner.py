"""A small Buchberger engine over Q.

Enough for the multiple point ideals met at desk scale: reduced Groebner
bases, normal forms, ideal membership, the unit-ideal test and the Krull
dimension read off the initial ideal.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import combinations

from .errors import GroebnerBudgetExceeded, VariableMismatch
from .poly import Polynomial, grevlex_key

DEFAULT_BUDGET = 10_000


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "grevlex"
    variables: tuple = ()

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"unsupported monomial order {self.kind!r}")
        object.__setattr__(self, "variables", tuple(self.variables))

    def key(self, exps: tuple):
        if self.kind == "grevlex":
            return grevlex_key(exps)
        return exps


@dataclass(frozen=True)
class GroebnerBasis:
    order: MonomialOrder
    elements: tuple
    reductions: int = 0

    @property
    def variables(self) -> tuple:
        return self.order.variables

    def leading_monomials(self) -> list[tuple]:
        return [lead(g, self.order)[0] for g in self.elements]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def lead(f: Polynomial, order: MonomialOrder):
    return f.leading(order.key)


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _mono(variables, exps, coeff=1) -> Polynomial:
    return Polynomial(variables, {exps: coeff})


def _reduce(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    """Full reduction of f by basis (every term, not just the leading one)."""
    leads = [lead(g, order) for g in basis]
    key = order.key
    rem = {}
    p = dict(f.terms)
    variables = f.variables
    while p:
        m = max(p, key=key)
        c = p[m]
        for g, (lm, lc) in zip(basis, leads):
            if _divides(lm, m):
                shift = tuple(a - b for a, b in zip(m, lm))
                factor = c / lc
                for e, gc in g.terms.items():
                    ne = tuple(a + b for a, b in zip(e, shift))
                    nv = p.get(ne, 0) - factor * gc
                    if nv:
                        p[ne] = nv
                    else:
                        p.pop(ne, None)
                break
        else:
            rem[m] = c
            del p[m]
    return Polynomial(variables, rem)


def normal_form(f: Polynomial, gb: GroebnerBasis | Sequence[Polynomial], order: MonomialOrder | None = None) -> Polynomial:
    if isinstance(gb, GroebnerBasis):
        order = gb.order
        elems = list(gb.elements)
    else:
        elems = list(gb)
        order = order or MonomialOrder("grevlex", f.variables)
    if order.variables and f.variables != order.variables:
        raise VariableMismatch(f"{f.variables} vs basis ring {order.variables}")
    return _reduce(f, elems, order)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    (mf, cf), (mg, cg) = lead(f, order), lead(g, order)
    l = _lcm(mf, mg)
    uf = _mono(f.variables, tuple(a - b for a, b in zip(l, mf)), 1 / cf)
    ug = _mono(f.variables, tuple(a - b for a, b in zip(l, mg)), 1 / cg)
    return uf * f - ug * g


def buchberger(gens: Iterable[Polynomial], order: MonomialOrder | None = None,
               budget: int = DEFAULT_BUDGET) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Pairs are processed by the normal strategy (smallest lcm first) and pairs
    with coprime leading monomials are skipped.  ``budget`` caps the number of
    S-polynomial reductions.
    """
    gens = [g for g in gens]
    if not gens:
        raise ValueError("need at least one generator")
    variables = gens[0].variables
    for g in gens:
        if g.variables != variables:
            raise VariableMismatch(f"{g.variables} vs {variables}")
    if order is None or not order.variables:
        order = MonomialOrder(order.kind if order else "grevlex", variables)
    elif order.variables != variables:
        raise VariableMismatch(f"order ring {order.variables} vs {variables}")

    basis: list[Polynomial] = []
    for g in gens:
        r = _reduce(g, basis, order)
        if r:
            basis.append(r.monic(order.key))
    if not basis:
        return GroebnerBasis(order, ())
    if any(b.is_constant() for b in basis):
        return GroebnerBasis(order, (Polynomial.constant(variables, 1),))

    pairs = set(combinations(range(len(basis)), 2))
    steps = 0

    def pair_key(pair):
        i, j = pair
        l = _lcm(lead(basis[i], order)[0], lead(basis[j], order)[0])
        return (order.key(l), pair)

    while pairs:
        pair = min(pairs, key=pair_key)
        pairs.discard(pair)
        i, j = pair
        mi, mj = lead(basis[i], order)[0], lead(basis[j], order)[0]
        if all(a == 0 or b == 0 for a, b in zip(mi, mj)):
            continue
        if steps >= budget:
            raise GroebnerBudgetExceeded(f"more than {budget} S-polynomial reductions")
        steps += 1
        r = _reduce(s_polynomial(basis[i], basis[j], order), basis, order)
        if not r:
            continue
        r = r.monic(order.key)
        if r.is_constant():
            return GroebnerBasis(order, (Polynomial.constant(variables, 1),), steps)
        basis.append(r)
        new = len(basis) - 1
        pairs.update((a, new) for a in range(new))

    return GroebnerBasis(order, tuple(_reduced(basis, order)), steps)


def _reduced(basis: list[Polynomial], order: MonomialOrder) -> list[Polynomial]:
    leads = [lead(g, order)[0] for g in basis]
    keep = []
    for i, m in enumerate(leads):
        redundant = False
        for j, other in enumerate(leads):
            if j == i or not _divides(other, m):
                continue
            if other != m or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(basis[i])
    out = []
    for i, g in enumerate(keep):
        rest = keep[:i] + keep[i + 1:]
        out.append(_reduce(g, rest, order).monic(order.key))
    out.sort(key=lambda g: order.key(lead(g, order)[0]))
    return out


def contains_one(gb: GroebnerBasis) -> bool:
    return any(g.is_constant() and g for g in gb.elements)


def ideal_contains(gb: GroebnerBasis, f: Polynomial) -> bool:
    return normal_form(f, gb).is_zero()


def ideals_equal(a: Sequence[Polynomial], b: Sequence[Polynomial], order: MonomialOrder | None = None) -> bool:
    ga, gbb = buchberger(a, order), buchberger(b, order)
    return all(ideal_contains(gbb, f) for f in a) and all(ideal_contains(ga, f) for f in b)


def monomial_dim(leading_monomials: Sequence[Sequence[int]], nvars: int) -> int:
    """Largest |S| such that no listed monomial has support inside S.

    This is the dimension of the affine variety of the monomial ideal.  Branches
    on the variables of a violated support, smallest support first.
    """
    supports = []
    for m in leading_monomials:
        s = frozenset(i for i, e in enumerate(m) if e)
        if not s:
            return -1
        supports.append(s)
    supports = sorted(set(supports), key=len)
    best = -1

    def search(allowed: frozenset):
        nonlocal best
        if len(allowed) <= best:
            return
        for s in supports:
            if s <= allowed:
                for v in sorted(s):
                    search(allowed - {v})
                return
        best = len(allowed)

    search(frozenset(range(nvars)))
    return best


def ideal_dimension(gb: GroebnerBasis) -> int:
    """Krull dimension of R/I, or -1 for the unit ideal."""
    if contains_one(gb):
        return -1
    nvars = len(gb.variables)
    return monomial_dim(gb.leading_monomials(), nvars)
