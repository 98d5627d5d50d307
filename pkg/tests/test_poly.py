import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from singtrans.poly import (
    DEGREVLEX,
    LEX,
    LOCAL_DEGREVLEX,
    MultiPoly,
    ParseError,
    TermOrder,
    parse_poly,
    scan_variables,
    uni_gcd,
    uni_rational_roots,
)

RING3 = ("x", "y", "z")
RING4 = ("x", "y", "z", "t")


@st.composite
def polys(draw, ring=RING3, max_terms=5, max_degree=4):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        mono = tuple(draw(st.integers(0, max_degree)) for _ in ring)
        num = draw(st.integers(-9, 9))
        den = draw(st.integers(1, 4))
        terms[mono] = Fraction(num, den)
    return MultiPoly(ring, terms)


@st.composite
def monomials(draw, nvars=3, max_degree=6):
    return tuple(draw(st.integers(0, max_degree)) for _ in range(nvars))


# -- fractions as the coefficient field -------------------------------------


def test_fraction_invariants():
    from math import gcd

    q = Fraction(-6, -4)
    assert q.denominator > 0
    assert gcd(abs(q.numerator), q.denominator) == 1
    assert Fraction(1, 3) + Fraction(1, 6) == Fraction(1, 2)  # exact, no rounding


# -- parsing -----------------------------------------------------------------


def test_parse_node_polynomial():
    f = parse_poly("x^2+y^2+z^2+t^2", RING4)
    assert f.total_degree() == 2
    assert len(f.terms) == 4
    assert f.coefficient((2, 0, 0, 0)) == 1


def test_parse_zero():
    f = parse_poly("0", ("x",))
    assert f.is_zero()
    assert f.terms == {}


def test_parse_namikawa_germ():
    f = parse_poly("x^2 - z^2 - y^3 + w^3", ("x", "y", "z", "w"))
    assert len(f.terms) == 4
    assert f.coefficient((0, 0, 2, 0)) == -1
    assert f.coefficient((0, 0, 0, 3)) == 1


def test_parse_rational_coefficients_and_juxtaposition():
    f = parse_poly("3/2x^2 + 2*y", ("x", "y"))
    assert f.coefficient((2, 0)) == Fraction(3, 2)
    assert f.coefficient((0, 1)) == 2


def test_parse_parentheses_and_power():
    f = parse_poly("(x+y)^2", ("x", "y"))
    assert f == parse_poly("x^2+2*x*y+y^2", ("x", "y"))


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_poly("x^2 +", ("x",))
    with pytest.raises(ParseError):
        parse_poly("x^2 + q", ("x",))  # unknown variable
    with pytest.raises(ParseError):
        parse_poly("x^-2", ("x",))
    with pytest.raises(ParseError):
        parse_poly("1/0", ("x",))


def test_scan_variables_order_of_appearance():
    assert scan_variables("t^2 + x*y + z") == ("t", "x", "y", "z")


@settings(max_examples=150, deadline=None)
@given(polys())
def test_print_parse_roundtrip(f):
    assert parse_poly(str(f), f.ring) == f


# -- ring axioms -------------------------------------------------------------


@settings(max_examples=100, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == MultiPoly.zero(a.ring)
    assert a * MultiPoly.constant(a.ring, 1) == a


@settings(max_examples=80, deadline=None)
@given(polys(), polys())
def test_substitute_shift_roundtrip(f, p):
    # shift x by a polynomial in the other variables only
    p = MultiPoly(
        f.ring, {m: c for m, c in p.terms.items() if m[0] == 0}
    )
    x = MultiPoly.variable(f.ring, "x")
    shifted = f.substitute({"x": x + p})
    back = shifted.substitute({"x": x - p})
    assert back == f


def test_substitute_examples():
    f = parse_poly("z^2", ("z",))
    g = f.substitute({"z": MultiPoly.variable(("z",), "z") + 1})
    assert g == parse_poly("z^2+2*z+1", ("z",))

    # deformed z-shift of the A2 germ: constant and linear coefficients
    ring = ("x", "y", "z", "t", "zL")
    f = parse_poly("x^2+y^2+z^3+t^2", ring)
    zL = MultiPoly.variable(ring, "zL")
    g = f.substitute({"z": MultiPoly.variable(ring, "z") + zL})
    assert g.coefficient((0, 0, 0, 0, 3)) == 1  # zL^3 constant term
    assert g.coefficient((0, 0, 1, 0, 2)) == 3  # 3 zL^2 * z

    f = parse_poly("x^2+3*x*y+5", ("x", "y"))
    assert f.substitute({"x": 0, "y": 0}) == MultiPoly.constant(("x", "y"), 5)


def test_partial_derivative_examples():
    f = parse_poly("x^2+y^3+z^4+t^2", RING4)
    assert f.partial("y") == parse_poly("3*y^2", RING4)
    assert MultiPoly.constant(RING4, 7).partial("x").is_zero()
    g = parse_poly("y^2*z+z^4", ("y", "z"))  # z-partial for index 5
    assert g.partial("z") == parse_poly("y^2+4*z^3", ("y", "z"))
    with pytest.raises(ValueError):
        f.partial("w")


def test_ring_mismatch_errors():
    f = parse_poly("x", ("x",))
    g = parse_poly("x+y", ("x", "y"))
    with pytest.raises(ValueError):
        _ = f + g
    with pytest.raises(ValueError):
        f.substitute({"x": g})


# -- term orders -------------------------------------------------------------


def test_leading_term_examples():
    f = parse_poly("x^2+y^3", ("x", "y"))
    assert f.leading_term(DEGREVLEX) == ((0, 3), 1)
    assert f.leading_term(LEX) == ((2, 0), 1)
    assert f.leading_term(LOCAL_DEGREVLEX) == ((2, 0), 1)
    with pytest.raises(ValueError):
        MultiPoly.zero(("x",)).leading_term(LEX)


def _local_oracle_greater(a, b):
    # independent definition: lower total degree wins; on ties the last
    # nonzero entry of a - b must be negative
    if sum(a) != sum(b):
        return sum(a) < sum(b)
    diff = [x - y for x, y in zip(a, b)]
    last = next((d for d in reversed(diff) if d != 0), 0)
    return last < 0


def test_local_order_against_enumeration_oracle():
    from itertools import product

    monos = [m for m in product(range(7), repeat=2) if sum(m) <= 6]
    for a in monos:
        for b in monos:
            if a == b:
                continue
            assert LOCAL_DEGREVLEX.greater(a, b) == _local_oracle_greater(a, b)


@settings(max_examples=150, deadline=None)
@given(monomials(), monomials(), monomials())
def test_orders_total_and_multiplicative(a, b, w):
    for order in (LEX, DEGREVLEX, LOCAL_DEGREVLEX, TermOrder("weighted", [2, 3, 1])):
        if a != b:
            assert order.greater(a, b) != order.greater(b, a)
        else:
            assert not order.greater(a, b)
        if order.greater(a, b):
            ab = tuple(x + y for x, y in zip(a, w))
            bb = tuple(x + y for x, y in zip(b, w))
            assert order.greater(ab, bb)


@settings(max_examples=100, deadline=None)
@given(monomials())
def test_global_minimum_local_maximum(m):
    one = (0, 0, 0)
    if m != one:
        for order in (LEX, DEGREVLEX, TermOrder("weighted", [1, 5, 2])):
            assert order.greater(m, one)
        assert LOCAL_DEGREVLEX.greater(one, m)


# -- univariate helpers -------------------------------------------------------


def test_uni_rational_roots():
    # (2x - 1)(x + 3) = 2x^2 + 5x - 3
    roots = uni_rational_roots([Fraction(-3), Fraction(5), Fraction(2)])
    assert set(roots) == {Fraction(1, 2), Fraction(-3)}
    # x^2 - 2 has no rational roots
    assert uni_rational_roots([Fraction(-2), Fraction(0), Fraction(1)]) == []


def test_uni_gcd():
    # gcd((x-1)^2 (x+2), (x-1)(x+5)) = x - 1
    p = [Fraction(c) for c in [2, -3, 0, 1]]
    q = [Fraction(c) for c in [-5, 4, 1]]
    g = uni_gcd(p, q)
    assert g == [Fraction(-1), Fraction(1)]
