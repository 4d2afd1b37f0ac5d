from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from _support import sym
from prodform.poly import (
    RateAssignment,
    RatePoly,
    SignSummary,
    homogeneous_degree,
    joint_gcd,
    poly_gcd,
    primitive_part,
    sign_summary,
)

S = ("alpha", "beta", "gamma")
a, b, c = (RatePoly.symbol(S, s) for s in S)


def one(v):
    return RatePoly.constant(S, v)


polys = st.dictionaries(
    st.tuples(*[st.integers(0, 3)] * 3), st.integers(-9, 9), max_size=5
).map(lambda d: RatePoly.from_terms(S, d))


def test_mul_expands():
    assert (3 * a) * (2 * a + b) == RatePoly.parse(S, "6*alpha^2 + 3*alpha*beta")


def test_add_sub_identities():
    p = 2 * a * b - c + 1
    assert p + RatePoly.zero(S) == p
    assert (p - p).is_zero()


def test_parse_renders_back():
    p = RatePoly.parse(S, "6*alpha^2 + 3*alpha*beta - 1/2")
    assert RatePoly.parse(S, str(p)) == p


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_ring_ops_match_sympy(p, q):
    assert sympy.expand(sym(p * q) - sym(p) * sym(q)) == 0
    assert sympy.expand(sym(p + q) - sym(p) - sym(q)) == 0
    assert sympy.expand(sym(p - q) - sym(p) + sym(q)) == 0


def test_primitive_part_of_monomial():
    s = primitive_part(6 * a * b**2)
    assert s.primitive == one(1)
    assert s.content_poly() == 6 * a * b**2


def test_primitive_part_rational():
    p = RatePoly.from_terms(S, {(2, 0, 0): Fraction(4, 3), (1, 1, 0): Fraction(-2, 3)})
    s = primitive_part(p)
    assert s.coefficient == Fraction(2, 3)
    assert s.primitive == 2 * a - b
    assert s.reconstruct() == p


def test_primitive_part_negative_lead():
    p = -2 * a - 2 * b
    s = primitive_part(p)
    assert s.reconstruct() == p
    assert s.primitive.leading_coefficient() > 0


def test_gcd_examples():
    assert poly_gcd(6 * a * b, 4 * a**2) == a
    assert poly_gcd(a**2 - b**2, a + b) == a + b
    h3 = [4 * a**2, 6 * a**2 + 3 * a * b, 6 * a * b, b**2]
    assert joint_gcd(h3) == one(1)


@settings(max_examples=40, deadline=None)
@given(polys, polys, polys)
def test_gcd_matches_sympy(p, q, r):
    if (p * r).is_zero() or (q * r).is_zero():
        return
    g = poly_gcd(p * r, q * r)
    ref = sympy.gcd(sym(p * r), sym(q * r))
    ratio = sympy.cancel(sym(g) / ref)
    assert ratio.is_number and ratio != 0


def test_evaluate():
    assert (b**2).evaluate({"alpha": 1, "beta": 2, "gamma": 1}) == 4
    h3 = [4 * a**2, 3 * a * (2 * a + b), 6 * a * b, b**2]
    assert [e.evaluate({"alpha": 1, "beta": 1, "gamma": 1}) for e in h3] == [4, 9, 6, 1]
    assert RatePoly.zero(S).evaluate({"alpha": 5}) == 0


def test_homogeneous_degree():
    h4 = [3 * a**2 * (6 * a + b), 24 * a**3 + 28 * a**2 * b, 6 * a * b * (6 * a + b), 12 * a * b**2, b**3]
    assert {homogeneous_degree(e) for e in h4} == {3}
    assert homogeneous_degree(a + b**2) is None
    assert homogeneous_degree(one(5)) == 0


def test_sign_summary():
    nw2 = ("alpha", "beta", "l1")
    al, be, l1 = (RatePoly.symbol(nw2, s) for s in nw2)
    assert sign_summary(be**5 * l1**2 * (al + l1)) is SignSummary.ALL_POSITIVE
    w3 = ("alpha", "beta", "l1", "l2")
    al, be, l1, l2 = (RatePoly.symbol(w3, s) for s in w3)
    assert sign_summary(al**2 * l2 - be**2 * l1) is SignSummary.MIXED
    assert sign_summary(RatePoly.zero(S)) is SignSummary.ZERO
    assert sign_summary(-a - b) is SignSummary.ALL_NEGATIVE


def test_exact_div_and_divides():
    p = (a + b) * (a - c)
    assert p.exact_div(a + b) == a - c
    assert not (a + c).divides(p)
    with pytest.raises(ArithmeticError):
        p.exact_div(a + c)


def test_rate_assignment_parse():
    r = RateAssignment.parse("a=1,b=3/2")
    assert r["b"] == Fraction(3, 2)
    assert RateAssignment.parse(r.to_text()).to_text() == r.to_text()
    for bad in ("a=0", "a=-1", "a", "a=1,a=2", "a=x"):
        with pytest.raises(ValueError):
            RateAssignment.parse(bad)
    with pytest.raises(ValueError):
        r.require(["a", "c"])
