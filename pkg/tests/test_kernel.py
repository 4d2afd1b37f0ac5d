import random
from fractions import Fraction

import pytest
import sympy

from _support import CORPUS, corpus, sym
from prodform.kernel import (
    KernelBudgetExceeded,
    LevelNotIrreducible,
    check_kernel,
    kernel_vector,
    level_kernel,
    master_matrix,
    stationary_eval,
)
from prodform.oracle import exact_stationary, random_rates
from prodform.poly import RateAssignment, RatePoly, joint_gcd
from prodform.statespace import components_at_level, enumerate_component

NW1 = ("beta", "alpha")
be, al = (RatePoly.symbol(NW1, s) for s in NW1)
ZERO = RatePoly.zero(NW1)


def _matrix(net, level):
    return master_matrix(net, components_at_level(net, level).components[0])


def test_master_matrix_level_two():
    m = _matrix(corpus("nw1"), 2)
    assert m.states == ((2, 0), (1, 1), (0, 2))
    expected = [[-2 * be, ZERO, 2 * al], [2 * be, -be, ZERO], [ZERO, be, -2 * al]]
    assert [list(r) for r in m.entries] == expected


def test_master_matrix_level_three():
    m = _matrix(corpus("nw1"), 3)
    diag = [m.entries[i][i] for i in range(4)]
    assert diag == [-3 * be, -2 * be, -(2 * al + be), -6 * al]
    assert m.entries[0][2] == 2 * al and m.entries[1][3] == 6 * al


def test_master_matrix_level_four():
    m = _matrix(corpus("nw1"), 4)
    # the jump out of (0,4) runs at 4*3*alpha
    assert m.entries[4][4] == -12 * al
    assert m.entries[2][4] == 12 * al
    h = level_kernel(corpus("nw1"), 4)
    assert not any(m.apply(list(h.entries)))


def test_single_state_component():
    comp = enumerate_component(corpus("nw1"), (0, 1))
    m = master_matrix(corpus("nw1"), comp)
    assert m.size == 1 and m.entries[0][0].is_zero()


@pytest.mark.parametrize(
    "level, expected",
    [
        (2, [al, 2 * al, be]),
        (3, [4 * al**2, 3 * al * (2 * al + be), 6 * al * be, be**2]),
        (4, [3 * al**2 * (6 * al + be), 24 * al**3 + 28 * al**2 * be, 6 * al * be * (6 * al + be), 12 * al * be**2, be**3]),
    ],
)
def test_nw1_kernels(level, expected):
    assert list(level_kernel(corpus("nw1"), level).entries) == expected


def test_stationary_eval():
    h2 = level_kernel(corpus("nw1"), 2)
    assert stationary_eval(h2, RateAssignment({"alpha": 1, "beta": 2})) == (Fraction(1, 5), Fraction(2, 5), Fraction(2, 5))
    h3 = level_kernel(corpus("nw1"), 3)
    one = RateAssignment({"alpha": 1, "beta": 1})
    assert stationary_eval(h3, one) == tuple(Fraction(x, 20) for x in (4, 9, 6, 1))
    assert stationary_eval(h3, one.scaled(3)) == stationary_eval(h3, one)


def test_level_not_irreducible():
    with pytest.raises(LevelNotIrreducible):
        level_kernel(corpus("nw1"), 1)
    h = level_kernel(corpus("nw1"), 1, allow_transient=True)
    assert h.entries[0].is_zero()


def test_budget():
    with pytest.raises(KernelBudgetExceeded):
        level_kernel(corpus("w6"), 3)


SMALL_LEVELS = [(n, lv) for n in CORPUS if n != "mm" for lv in range(2, 5)
                if len(components_at_level(corpus(n), lv).all_states) <= 12
                and len(components_at_level(corpus(n), lv).components) == 1
                and not components_at_level(corpus(n), lv).transient]


@pytest.mark.parametrize("name, level", SMALL_LEVELS)
def test_kernel_properties(name, level):
    net = corpus(name)
    m = _matrix(net, level)
    assert m.column_sums_vanish()
    h = level_kernel(net, level)
    assert check_kernel(m, list(h.entries)) == h.degree
    assert joint_gcd(list(h.entries)) == 1


@pytest.mark.parametrize("name, level", [p for p in SMALL_LEVELS if len(components_at_level(corpus(p[0]), p[1]).all_states) <= 4 or p == ("nw1", 4)])
def test_kernel_matches_sympy_nullspace(name, level):
    net = corpus(name)
    m = _matrix(net, level)
    a = sympy.Matrix([[sym(e) for e in row] for row in m.entries])
    assert a.rank() == m.size - 1
    ns = a.nullspace()
    assert len(ns) == 1
    h = [sym(e) for e in level_kernel(net, level).entries]
    v = ns[0]
    k = next(i for i in range(len(h)) if v[i] != 0)
    for i in range(len(h)):
        assert sympy.cancel(v[i] * h[k] - v[k] * h[i]) == 0


@pytest.mark.parametrize("name, level", SMALL_LEVELS)
def test_kernel_agrees_with_exact_solve(name, level):
    net = corpus(name)
    rng = random.Random(level)
    h = level_kernel(net, level)
    for _ in range(5):
        r = random_rates(net.rate_symbols, rng)
        assert stationary_eval(h, r) == exact_stationary(net, r, level).probs


def test_kernel_vector_on_direct_matrix():
    h = kernel_vector(_matrix(corpus("w1"), 3))
    # birth-death chain: entries alpha^i beta^(3-i) up to binomial factors
    assert h.degree == 3 and all(len(e) == 1 for e in h.entries)
