import itertools
import random
from fractions import Fraction

import pytest

from disentangle.errors import NotDivisible, ParseError, VariableMismatch
from disentangle.poly import Polynomial, arith, divided_difference_chain, exact_divide

XU = ("x", "u1")


def P(text, variables=XU):
    return Polynomial.parse(text, variables)


def test_arith_examples():
    assert arith(P("x"), P("0"), "add") == P("x")
    assert arith(P("x+1"), P("x-1"), "mul") == P("x^2-1")
    assert arith(P("x^2"), P("x^2"), "sub").is_zero()


def test_ring_mismatch():
    with pytest.raises(VariableMismatch):
        P("x") + Polynomial.parse("y", ("y",))


def test_exact_divide_examples():
    assert exact_divide(P("x^2-1"), P("x-1")) == P("x+1")
    ring = ("x1", "x2")
    assert exact_divide(P("x2^2-x1^2", ring), P("x2-x1", ring)) == P("x1+x2", ring)
    with pytest.raises(NotDivisible):
        exact_divide(P("x", ("x", "y")), P("y", ("x", "y")))


@pytest.mark.parametrize("text, shown", [
    ("x^2 + u1^2*x - 3/2*x^3", "-3/2*x^3 + x*u1^2 + x^2"),
    ("(x+u1)^2", "x^2 + 2*x*u1 + u1^2"),
    ("-x", "-x"),
    ("0", "0"),
    ("2/4", "1/2"),
    ("x**2/3", "1/3*x^2"),
])
def test_parse_and_print(text, shown):
    p = P(text)
    assert str(p) == shown
    assert P(str(p)) == p


@pytest.mark.parametrize("bad", ["x^", "x + + ", "y", "x/x", "2x", "x^-1", "", "x)"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        P(bad)


def test_divided_difference_examples():
    ring2, ring3 = ("x1", "x2", "u1"), ("x1", "x2", "x3", "u1")
    assert divided_difference_chain(P("x^2"), 2) == P("x1 + x2", ring2)
    assert divided_difference_chain(P("x^2"), 3) == Polynomial.constant(ring3, 1)
    assert divided_difference_chain(P("x^3"), 2) == P("x1^2+x1*x2+x2^2", ring2)
    assert divided_difference_chain(P("u1^2*x"), 2) == P("u1^2", ring2)


def random_poly(rng, max_deg=6):
    terms = {}
    for _ in range(rng.randint(1, 6)):
        a = rng.randint(0, max_deg)
        b = rng.randint(0, max_deg - a)
        terms[(a, b)] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return Polynomial(XU, terms)


def test_reconstruction_and_symmetry():
    rng = random.Random(11)
    for trial in range(50):
        f = random_poly(rng)
        k = 2 + trial % 3  # 2, 3, 4
        ring = tuple(f"x{i}" for i in range(1, k + 1)) + ("u1",)
        dd = divided_difference_chain(f, k)
        assert dd.variables == ring
        if k == 2:
            f1 = f.embed(ring, {"x": "x1"})
            f2 = f.embed(ring, {"x": "x2"})
            assert P("x2 - x1", ring) * dd == f2 - f1
        else:
            # (x_k - x_{k-1}) f[x1..xk] = f[.., x_k] - f[.., x_{k-1}]
            lower = divided_difference_chain(f, k - 1)
            sub = ring[:k - 1] + ring[k:]
            drop_last = lower.embed(ring, dict(zip(lower.variables, ring[:k - 2] + (ring[k - 1],) + ring[k:])))
            keep = lower.embed(ring, dict(zip(lower.variables, sub)))
            assert P(f"x{k} - x{k - 1}", ring) * dd == drop_last - keep
        for perm in itertools.permutations(ring[:k]):
            swapped = dd.subs({a: Polynomial.var(ring, b) for a, b in zip(ring[:k], perm)})
            assert swapped == dd


def test_degree_rule():
    rng = random.Random(5)
    for _ in range(20):
        f = random_poly(rng)
        m = f.degree_in("x")
        lead = Polynomial(XU, {(0, b): c for (a, b), c in f.terms.items() if a == m})
        for k in range(2, m + 3):
            dd = divided_difference_chain(f, k)
            if k > m + 1:
                assert dd.is_zero()
            elif k == m + 1:
                ring = dd.variables
                assert dd == lead.embed(ring, {"u1": "u1"})


def test_diagonal_is_derivative():
    rng = random.Random(3)
    for _ in range(20):
        f = random_poly(rng)
        dd = divided_difference_chain(f, 2)
        diag = dd.subs({"x2": Polynomial.var(dd.variables, "x1")})
        assert diag == f.diff("x").embed(dd.variables, {"x": "x1"})


def test_evaluate_and_subs():
    f = P("x^2*u1 - 1/2")
    assert f.evaluate({"x": 2, "u1": 3}) == Fraction(23, 2)
    assert f.subs({"u1": 0}) == P("-1/2")
