import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from _support import sym
from prodform.factor import core_factors, eliminate_linear, is_sign_definite, split_factors
from prodform.poly import RatePoly, primitive_part

S = ("l1", "l2", "l3")
l1, l2, l3 = (RatePoly.symbol(S, s) for s in S)


def _product(content, factors):
    out = content
    for f in factors:
        out = out * f
    return out


def test_split_recovers_known_factors():
    p = -12 * l1**2 * l3 * (l1 + l2) * (6 * l1 - 6 * l2 + 7 * l3) * (l3**2 + 2 * l1 * l3 - 6 * l2 * l3 + l1**2 - 5 * l1 * l2)
    content, factors = split_factors(p)
    assert _product(content, factors) == p
    assert 6 * l1 - 6 * l2 + 7 * l3 in factors
    assert l1 + l2 in factors
    assert core_factors(p) == [6 * l1 - 6 * l2 + 7 * l3, l3**2 + 2 * l1 * l3 - 6 * l2 * l3 + l1**2 - 5 * l1 * l2]


linear = st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4), st.integers(-3, 3)).map(
    lambda t: t[0] * l1 + t[1] * l2 + t[2] * l3 + t[3])


@settings(max_examples=40, deadline=None)
@given(st.lists(linear, min_size=1, max_size=3))
def test_split_is_a_factorization(fs):
    p = RatePoly.constant(S, 1)
    for f in fs:
        p = p * f
    if p.is_zero():
        return
    content, factors = split_factors(p)
    assert _product(content, factors) == p
    assert sympy.expand(sym(_product(content, factors)) - sym(p)) == 0
    for f in factors:
        assert not f.is_constant()
        assert primitive_part(f).primitive in (f, -f)


def test_sign_definite():
    assert is_sign_definite(l1 + 2 * l2)
    assert is_sign_definite(-l1 * l2)
    assert not is_sign_definite(l1 - l2)


def test_eliminate_linear():
    lin = 6 * l1 - 6 * l2 + 7 * l3
    quad = l3**2 + 2 * l1 * l3 - 6 * l2 * l3 + l1**2 - 5 * l1 * l2
    out = eliminate_linear(lin, S.index("l2"), quad)
    assert out is not None and 1 not in out.variables()
    expected = 36 * l3**2 + 59 * l1 * l3 + 24 * l1**2
    ratio = sympy.cancel(sym(out) / sym(expected))
    assert ratio.is_number and ratio > 0


def test_eliminate_linear_matches_sympy_resultant():
    lin = 2 * l1 - 3 * l2 + l3
    target = l2**2 - l1 * l3 + l2
    out = eliminate_linear(lin, 1, target)
    a, b, c = sympy.symbols("l1 l2 l3")
    res = sympy.resultant(sym(lin), sym(target), b)
    assert sympy.cancel(sym(out) / res).is_number


def test_eliminate_requires_definite_coefficient():
    assert eliminate_linear(l1 * l2 - l2 * l3 + 1, 1, l2**2 + l1) is None
    assert eliminate_linear(l2**2 + l1, 1, l2 + 1) is None


@pytest.mark.parametrize("p", [l1**2 * l2 - l1 * l3**2, (l1 - l2) ** 2 * (l1 + l3)])
def test_cores_are_divisors(p):
    for c in core_factors(p):
        assert c.divides(p) and not is_sign_definite(c)
