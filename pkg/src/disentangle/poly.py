"""Multivariate polynomials over Q and iterated divided differences.

A :class:`Polynomial` lives in an explicit ring given by an ordered tuple of
variable names.  Arithmetic between polynomials of different rings raises
:class:`VariableMismatch`; use :meth:`Polynomial.embed` to move between rings.

Text syntax::

    x^2 + u1^2*x - 3/2*x^3

Printing is canonical: graded-lex term order with variables compared in their
declared order.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction
from functools import lru_cache

from .errors import NotDivisible, ParseError, VariableMismatch
from .linalg import as_fraction


def grevlex_key(exps: tuple) -> tuple:
    return (sum(exps), tuple(-e for e in reversed(exps)))


def grlex_key(exps: tuple) -> tuple:
    return (sum(exps), exps)


class Polynomial:
    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping | Iterable = ()):
        self.variables = tuple(variables)
        n = len(self.variables)
        store: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exps, c in items:
            exps = tuple(exps)
            if len(exps) != n:
                raise VariableMismatch(f"monomial {exps} does not match {n} variables")
            c = as_fraction(c)
            if c:
                total = store.get(exps, 0) + c
                if total:
                    store[exps] = total
                else:
                    store.pop(exps, None)
        self.terms = store

    @classmethod
    def constant(cls, variables: Sequence[str], value) -> Polynomial:
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def zero(cls, variables: Sequence[str]) -> Polynomial:
        return cls(variables)

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> Polynomial:
        variables = tuple(variables)
        if name not in variables:
            raise VariableMismatch(f"{name!r} not in {variables}")
        exps = tuple(int(v == name) for v in variables)
        return cls(variables, {exps: 1})

    @classmethod
    def parse(cls, text: str, variables: Sequence[str]) -> Polynomial:
        return _Parser(text, tuple(variables)).parse()

    # basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.variables.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def leading(self, key=grevlex_key) -> tuple[tuple, Fraction]:
        exps = max(self.terms, key=key)
        return exps, self.terms[exps]

    # arithmetic

    def _check(self, other: Polynomial) -> None:
        if self.variables != other.variables:
            raise VariableMismatch(f"{self.variables} vs {other.variables}")

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.variables, other)
        return NotImplemented

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.variables, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def __mul__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> Polynomial:
        c = as_fraction(c)
        return Polynomial(self.variables, {e: v * c for e, v in self.terms.items()})

    def monic(self, key=grevlex_key) -> Polynomial:
        if not self.terms:
            return self
        _, lc = self.leading(key)
        return self.scale(1 / lc)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.variables, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.variables, frozenset(self.terms.items())))

    # ring changes

    def embed(self, variables: Sequence[str], rename: Mapping[str, str] | None = None) -> Polynomial:
        """Move into the ring ``variables``, optionally renaming first."""
        rename = rename or {}
        variables = tuple(variables)
        index = {}
        for i, v in enumerate(self.variables):
            target = rename.get(v, v)
            if target not in variables:
                if any(e[i] for e in self.terms):
                    raise VariableMismatch(f"variable {v!r} has no image in {variables}")
                continue
            index[i] = variables.index(target)
        out: dict = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for i, k in enumerate(e):
                if k:
                    ne[index[i]] += k
            ne = tuple(ne)
            out[ne] = out.get(ne, 0) + c
        return Polynomial(variables, out)

    def subs(self, values: Mapping[str, Polynomial | int | Fraction]) -> Polynomial:
        """Substitute polynomials (in this ring) or numbers for variables."""
        vals = {}
        for name, v in values.items():
            i = self.variables.index(name)
            if not isinstance(v, Polynomial):
                v = Polynomial.constant(self.variables, v)
            self._check(v)
            vals[i] = v
        result = Polynomial.zero(self.variables)
        powers: dict = {}
        for e, c in self.terms.items():
            kept = tuple(0 if i in vals else k for i, k in enumerate(e))
            term = Polynomial(self.variables, {kept: c})
            for i, k in enumerate(e):
                if i in vals and k:
                    if (i, k) not in powers:
                        powers[(i, k)] = vals[i] ** k
                    term = term * powers[(i, k)]
            result = result + term
        return result

    def evaluate(self, point: Mapping[str, Fraction | int]) -> Fraction:
        total = Fraction(0)
        vals = [as_fraction(point[v]) for v in self.variables]
        for e, c in self.terms.items():
            t = c
            for x, k in zip(vals, e):
                if k:
                    t *= x ** k
            total += t
        return total

    def diff(self, name: str) -> Polynomial:
        i = self.variables.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[ne] = c * e[i]
        return Polynomial(self.variables, out)

    # printing

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for idx, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(v if k == 1 else f"{v}^{k}"
                            for v, k in zip(self.variables, e) if k)
            mag = abs(c)
            if not mono:
                body = _fmt(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_fmt(mag)}*{mono}"
            if idx == 0:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append(("- " if c < 0 else "+ ") + body)
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r}, {self.variables})"


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class _Parser:
    """Recursive descent: expr := term (('+'|'-') term)*."""

    def __init__(self, text: str, variables: tuple):
        self.variables = variables
        self.tokens = []
        pos = 0
        text = text.rstrip()
        if not text.strip():
            raise ParseError("empty polynomial")
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} in {text!r}")
            num, name, op = m.groups()
            if num is not None:
                self.tokens.append(("num", int(num)))
            elif name is not None:
                self.tokens.append(("name", name))
            else:
                self.tokens.append(("op", "^" if op == "**" else op))
            pos = m.end()
        self.i = 0
        self.text = text

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        p = self.expr()
        if self.i != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        if self.peek() in (("op", "-"), ("op", "+")):
            _, op = self.take()
            p = self.term()
            return -p if op == "-" else p
        p = self.power()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.take()
            if op == "*":
                p = p * self.power()
            else:
                kind, val = self.take()
                if kind != "num":
                    raise ParseError(f"only numeric division is supported in {self.text!r}")
                if val == 0:
                    raise ParseError("division by zero")
                p = p.scale(Fraction(1, val))
        return p

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError(f"exponent must be a nonnegative integer in {self.text!r}")
            return base ** val
        return base

    def atom(self) -> Polynomial:
        kind, val = self.take()
        if kind == "num":
            return Polynomial.constant(self.variables, val)
        if kind == "name":
            if val not in self.variables:
                raise ParseError(f"unknown variable {val!r}; ring is {self.variables}")
            return Polynomial.var(self.variables, val)
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError(f"unbalanced parenthesis in {self.text!r}")
            return p
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def arith(p: Polynomial, q: Polynomial, op: str) -> Polynomial:
    p._check(q)
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def exact_divide(p: Polynomial, q: Polynomial) -> Polynomial:
    """Return r with p == q*r, raising NotDivisible when no such r exists."""
    p._check(q)
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lm_q, lc_q = q.leading()
    quotient: dict = {}
    rem = p
    while rem:
        lm_r, lc_r = rem.leading()
        if any(a < b for a, b in zip(lm_r, lm_q)):
            raise NotDivisible(f"({p}) is not divisible by ({q})")
        e = tuple(a - b for a, b in zip(lm_r, lm_q))
        c = lc_r / lc_q
        quotient[e] = c
        rem = rem - q * Polynomial(p.variables, {e: c})
    return Polynomial(p.variables, quotient)


def point_names(k: int, distinguished: str = "x") -> tuple[str, ...]:
    return tuple(f"{distinguished}{i}" for i in range(1, k + 1))


def divided_difference_chain(f: Polynomial, k: int, distinguished: str = "x") -> Polynomial:
    """f[x1,...,xk,u] by the recursion dividing by (x_k - x_{k-1}).

    The result lives in the ring ``(x1..xk, <other variables of f>)``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if distinguished not in f.variables:
        raise VariableMismatch(f"{distinguished!r} not among {f.variables}")
    others = tuple(v for v in f.variables if v != distinguished)
    ring = point_names(k, distinguished) + others

    @lru_cache(maxsize=None)
    def dd(points: tuple) -> Polynomial:
        if len(points) == 1:
            return f.embed(ring, {distinguished: points[0]})
        head, a, b = points[:-2], points[-2], points[-1]
        num = dd(head + (b,)) - dd(head + (a,))
        den = Polynomial.var(ring, b) - Polynomial.var(ring, a)
        return exact_divide(num, den)

    return dd(point_names(k, distinguished))
