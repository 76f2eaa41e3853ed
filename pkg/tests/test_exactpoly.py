import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from subfact.exactpoly import (
    MultiPoly, NotDivisible, ParseError, arith, det_fraction_free, divide_exact, divides,
    gcd_multi, parse_poly, squarefree_in_A,
)
from conftest import polys


def P(text, names=("x", "y")):
    return parse_poly(text, names)


# -- parsing and printing ----------------------------------------------------

def test_parse_basic():
    f = P("x^2*y + 3/2")
    assert f.terms == {(2, 1): 1, (0, 0): Fraction(3, 2)}
    assert P("(x+y)^2") == P("x^2 + 2*x*y + y^2")
    assert P("-x - -y") == P("y - x")


@pytest.mark.parametrize("bad", ["x^", "x +", "z", "1/0", "(x", "x y", "x^-1", ""])
def test_parse_errors(bad):
    with pytest.raises((ParseError, ZeroDivisionError, ValueError)):
        P(bad)


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as info:
        P("x + * y")
    assert info.value.pos == 4


@given(polys())
def test_print_parse_roundtrip(f):
    assert P(f.to_str(["x", "y"])) == f


# -- ring laws ------------------------------------------------------------------

@given(polys(), polys(), polys())
def test_ring_laws(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == MultiPoly({}, 2)
    assert arith("mul", f, g) == f * g


@given(polys(), polys(nonzero=True))
def test_divide_exact_inverts_mul(f, g):
    assert divide_exact(f * g, g) == f


def test_divide_exact_rejects(x_y):
    x, y = x_y
    with pytest.raises(NotDivisible):
        divide_exact(x * x + y, x)
    with pytest.raises(ZeroDivisionError):
        divide_exact(x, MultiPoly({}, 2))
    assert not divides(x + 1, x * y)


# -- gcd -----------------------------------------------------------------------

def test_gcd_pinned():
    assert gcd_multi(P("x^2 - y^2"), P("x^2 + 2*x*y + y^2")) == P("x + y")
    assert gcd_multi(P("-2"), P("4*x")) == P("1")
    assert gcd_multi(P("6*x*y"), P("-4*x^2")) == P("x")
    assert gcd_multi(P("x - 1"), P("0")) == P("x - 1")


@settings(max_examples=40)
@given(polys(max_terms=3), polys(max_terms=3), polys(max_terms=3, nonzero=True))
def test_gcd_divides_and_scales(f, g, h):
    if f.is_zero() and g.is_zero():
        return
    d = gcd_multi(f, g)
    assert divides(d, f) and divides(d, g)
    assert gcd_multi(f * h, g * h) == (d * h).normalized()


def test_gcd_zero_zero():
    with pytest.raises(ValueError):
        gcd_multi(MultiPoly({}, 1), MultiPoly({}, 1))


# -- square-freeness ----------------------------------------------------------

def _is_square(n):
    return n >= 0 and math.isqrt(n) ** 2 == n


def _irreducible_pool():
    """Monic irreducibles of degree <= 2 over Q, pairwise distinct hence coprime."""
    pool = [MultiPoly({(1,): 1, (0,): -a}, 1) for a in range(-4, 5)]
    for b in range(-3, 4):
        for c in range(-3, 4):
            if not _is_square(b * b - 4 * c):
                pool.append(MultiPoly({(2,): 1, (1,): b, (0,): c}, 1))
    return pool


POOL = _irreducible_pool()


def factored_case(rng):
    """(polynomial, oracle answer) from an explicit factorisation."""
    k = rng.randint(1, 4)
    facs = rng.sample(POOL, k)
    mults = [rng.choice((1, 1, 2, 3)) for _ in facs]
    f = MultiPoly.const(rng.choice((1, -2, 3)), 1)
    for p, m in zip(facs, mults):
        f = f * p ** m
    return f, all(m == 1 for m in mults)


def test_pool_is_irreducible():
    # quadratics in the pool have no rational root
    for p in POOL:
        if p.total_degree() == 2:
            assert not any(p.evaluate([Fraction(a, b)]) == 0 for a in range(-12, 13) for b in range(1, 5))


def test_squarefree_factored_oracle():
    rng = random.Random(7)
    cases = [factored_case(rng) for _ in range(200)]
    assert sum(ans for _, ans in cases) not in (0, 200)
    for f, ans in cases:
        assert squarefree_in_A(f) == ans, f


@settings(max_examples=40)
@given(polys(max_terms=3).filter(lambda f: not f.is_constant()), polys(max_terms=3, nonzero=True))
def test_square_times_anything_not_squarefree(f, g):
    assert not squarefree_in_A(f * f * g)


def test_squarefree_pinned():
    assert squarefree_in_A(P("x^2 + y^2"))
    assert squarefree_in_A(P("x*y"))
    assert not squarefree_in_A(P("x^2*y"))
    assert squarefree_in_A(P("-7"))
    with pytest.raises(ValueError):
        squarefree_in_A(P("0"))


# -- determinants ---------------------------------------------------------------

def cofactor_det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = MultiPoly({}, m[0][0].nvars)
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


@settings(max_examples=30)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(polys(max_terms=2, max_deg=1), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_cofactor(m):
    assert det_fraction_free(m) == cofactor_det(m)


def test_det_rejects_non_square():
    with pytest.raises(ValueError):
        det_fraction_free([[P("x"), P("y")]])
