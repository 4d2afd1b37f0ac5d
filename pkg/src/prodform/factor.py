"""Partial factorization aimed at sign questions on the positive orthant.

A polynomial vanishes at a positive point only if one of its factors does, and
a factor whose coefficients all share one sign never does.  Splitting off
monomials, contents with respect to single variables and factors of degree one
in some variable exposes the sign-indefinite core of the relation polynomials
met in practice.  Factors that survive are not guaranteed irreducible.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import isqrt

from .poly import RatePoly, SignSummary, WorkBudgetExceeded, _content_in, _split, homogeneous_degree, primitive_part, sign_summary, work_limit

_MAX_CANDIDATES = 20000
FACTOR_WORK_LIMIT = 200_000
_MAX_DIVISOR_INPUT = 10**12
_PROBES = ((2, 3, 5, 7, 11, 13, 17, 19, 23, 29), (3, 7, 2, 11, 5, 17, 13, 23, 19, 31))


def _int_divisors(n: int) -> list[int]:
    n = abs(n)
    if n > _MAX_DIVISOR_INPUT:
        return [1]
    out = []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            out.append(d)
            if d * d != n:
                out.append(n // d)
    return sorted(out)


def _poly_divisors(factors: list[RatePoly], one: RatePoly) -> list[RatePoly]:
    """All products of sub-multisets of ``factors`` (primitive, positive lead)."""
    counts = Counter(factors)
    items = list(counts.items())
    total = 1
    for _, m in items:
        total *= m + 1
    if total > _MAX_CANDIDATES:
        return []
    out = []
    for exps in product(*(range(m + 1) for _, m in items)):
        d = one
        for (f, _), e in zip(items, exps):
            if e:
                d = d * f**e
        out.append(d)
    return out


def _probe_points(syms) -> list[dict]:
    return [{s: probe[i % len(probe)] for i, s in enumerate(syms)} for probe in _PROBES]


def _probe_ok(f_values: list, g_values: list) -> bool:
    """Necessary condition for g | f over the integers: g(P) | f(P) at probe points."""
    for fv, gv in zip(f_values, g_values):
        if gv != 0 and fv % gv != 0:
            return False
    return True


def _degree_one_factor(f: RatePoly, v: int, factorize) -> RatePoly | None:
    """A factor ``A*x_v + B`` of ``f`` with A, B free of ``x_v``."""
    parts = _split(f, v)
    top = max(parts)
    lc, tc = parts[top], parts.get(0)
    if tc is None:
        return None
    syms = f.symbols
    one = RatePoly.constant(syms, 1)
    lc_split, tc_split = primitive_part(lc), primitive_part(tc)
    lc_mono = [RatePoly.symbol(syms, syms[i]) for i, e in enumerate(lc_split.monomial) for _ in range(e)]
    tc_mono = [RatePoly.symbol(syms, syms[i]) for i, e in enumerate(tc_split.monomial) for _ in range(e)]
    a_polys = _poly_divisors(lc_mono + factorize(lc_split.primitive), one)
    b_polys = _poly_divisors(tc_mono + factorize(tc_split.primitive), one)
    a_ints = _int_divisors(lc_split.coefficient.numerator)
    b_ints = _int_divisors(tc_split.coefficient.numerator)
    if len(a_polys) * len(b_polys) * len(a_ints) * len(b_ints) * 2 > _MAX_CANDIDATES:
        return None
    homogeneous = homogeneous_degree(f) is not None
    xv = RatePoly.symbol(syms, syms[v])
    points = _probe_points(syms)
    f_values = [f.evaluate(pt) for pt in points]
    x_values = [pt[syms[v]] for pt in points]
    b_values = [[bp.evaluate(pt) for pt in points] for bp in b_polys]
    deg = f.total_degree()
    for ap in a_polys:
        a_values = [ap.evaluate(pt) * x for pt, x in zip(points, x_values)]
        adeg = ap.total_degree() + 1
        for bp, bv in zip(b_polys, b_values):
            if homogeneous and bp.total_degree() != adeg:
                continue
            if max(adeg, bp.total_degree()) >= deg:
                continue
            for ai in a_ints:
                for bi in b_ints:
                    for sign in (1, -1):
                        g_values = [ai * a + sign * bi * b for a, b in zip(a_values, bv)]
                        if not _probe_ok(f_values, g_values):
                            continue
                        g = ap * xv * ai + bp * (sign * bi)
                        if g.divides(f):
                            return g
    return None


@lru_cache(maxsize=4096)
def _factor_primitive(f: RatePoly) -> tuple[RatePoly, ...]:
    """Factors of a primitive polynomial without monomial factor, with repetition."""
    if f.is_constant():
        return ()
    if f.total_degree() <= 1:
        return (f,)
    for i in sorted(f.variables()):
        c = _content_in(f, i)
        if not c.is_constant():
            return _factor_any(c) + _factor_any(f.exact_div(c))
    order = sorted(f.variables(), key=lambda i: (f.degree_in(i), i))
    if f.degree_in(order[0]) == 1:
        return (f,)  # primitive in that variable and of degree one there
    for v in order:
        g = _degree_one_factor(f, v, lambda p: list(_factor_any(p)))
        if g is not None:
            return _factor_any(g) + _factor_any(f.exact_div(g))
    return (f,)


def _factor_any(p: RatePoly) -> tuple[RatePoly, ...]:
    s = primitive_part(p)
    syms = p.symbols
    monos = tuple(RatePoly.symbol(syms, syms[i]) for i, e in enumerate(s.monomial) for _ in range(e))
    return monos + _factor_primitive(s.primitive)


def split_factors(p: RatePoly) -> tuple[RatePoly, list[RatePoly]]:
    """``p == content * prod(factors)``, content a signed rational monomial.

    Every factor has integer coefficients with gcd 1 and positive leading
    coefficient; monomial factors are returned as content.
    """
    split = primitive_part(p)
    try:
        with work_limit(FACTOR_WORK_LIMIT):
            factors = list(_factor_primitive(split.primitive))
    except WorkBudgetExceeded:
        # splitting is an optimization for sign questions; unsplit is still correct
        factors = [split.primitive] if not split.primitive.is_constant() else []
    content = split.content_poly()
    rest = split.primitive
    for f in factors:
        rest = rest.exact_div(f)
    # each factor is normalized, so the remaining quotient is a unit
    content = content * rest
    factors.sort(key=lambda g: (g.total_degree(), len(g), str(g)))
    return content, factors


def is_sign_definite(p: RatePoly) -> bool:
    return sign_summary(p) in (SignSummary.ALL_POSITIVE, SignSummary.ALL_NEGATIVE)


def core_factors(p: RatePoly) -> list[RatePoly]:
    """Distinct factors of ``p`` that are not sign-definite."""
    out = []
    for f in split_factors(p)[1]:
        if not is_sign_definite(f) and f not in out:
            out.append(f)
    return out


def eliminate_linear(linear: RatePoly, index: int, target: RatePoly) -> RatePoly | None:
    """Clear denominators in ``target`` after solving ``linear = 0`` for symbol ``index``.

    With ``linear = a*v + b`` this is ``sum_d c_d (-b)^d a^(D-d)`` where
    ``target = sum_d c_d v^d``.  Returns None unless ``a`` is sign-definite,
    so that the substitution is legitimate on the whole positive orthant.
    """
    parts = _split(linear, index)
    if set(parts) - {0, 1} or 1 not in parts:
        return None
    a = parts[1]
    b = parts.get(0, RatePoly.zero(linear.symbols))
    if not is_sign_definite(a):
        return None
    tparts = _split(target, index)
    top = max(tparts)
    out = RatePoly.zero(target.symbols)
    for d, c in tparts.items():
        out = out + c * (-b) ** d * a ** (top - d)
    return out
