import random
from fractions import Fraction

import pytest
import sympy

from _support import corpus
from prodform.oracle import (
    ComponentMissing,
    FitUnavailable,
    _shape_of,
    exact_stationary,
    product_form_fit,
    random_rates,
    rate_matrix,
    relation_residuals,
    relations_vanish,
    shape_classify,
    solve_stationary,
)
from prodform.poly import RateAssignment
from prodform.relations import RelationInstance

ONE = RateAssignment({"alpha": 1, "beta": 1})


def test_nw1_distributions():
    nw1 = corpus("nw1")
    d2 = exact_stationary(nw1, RateAssignment({"alpha": 1, "beta": 2}), 2)
    assert d2.probs == (Fraction(1, 5), Fraction(2, 5), Fraction(2, 5))
    d3 = exact_stationary(nw1, ONE, 3)
    assert d3.probs == (Fraction(1, 5), Fraction(9, 20), Fraction(3, 10), Fraction(1, 20))


def test_single_state():
    assert solve_stationary([[Fraction(0)]]) == [1]


def test_components():
    # level 1 of the two-reaction network: (1,0) is transient, (0,1) absorbing
    d = exact_stationary(corpus("nw1"), ONE, 1)
    assert d.states == ((0, 1),) and d.probs == (1,)
    # level 1 of nw4 has two absorbing states
    with pytest.raises(ComponentMissing):
        exact_stationary(corpus("nw4"), RateAssignment({"l1": 1, "l2": 1, "l3": 1}), 1)
    assert exact_stationary(corpus("nw4"), RateAssignment({"l1": 1, "l2": 1, "l3": 1}), 1, component=1).probs == (1,)


@pytest.mark.parametrize("name, level", [("w5", 4), ("nw11", 3), ("w6", 2), ("ex28", 5)])
def test_solver_matches_sympy(name, level):
    net = corpus(name)
    rates = random_rates(net.rate_symbols, random.Random(level))
    comp_states = exact_stationary(net, rates, level).states
    q = rate_matrix(net, rates, comp_states)
    m = len(q)
    rat = [[sympy.Rational(v.numerator, v.denominator) for v in row] for row in q]
    # global balance: inflow to j equals pi_j times the outflow of j; last row normalizes
    a = sympy.Matrix(m, m, lambda j, i: rat[i][j] - (sum(rat[j]) if i == j else 0))
    a[m - 1, :] = sympy.ones(1, m)
    rhs = sympy.zeros(m, 1)
    rhs[m - 1] = 1
    sol = a.LUsolve(rhs)
    got = exact_stationary(net, rates, level).probs
    assert [sympy.Rational(p.numerator, p.denominator) for p in got] == list(sol)


def test_residuals():
    w1 = corpus("w1")
    rates = random_rates(w1.rate_symbols, random.Random(3))
    rep = relation_residuals(w1, rates, 5)
    assert rep.all_zero and rep.residuals
    assert relations_vanish(w1, rates, 6)[0]
    j4 = RelationInstance("b", 2, ((0, 2), 0, (0, 3), (1, 1), 0, (1, 2)))
    ok, rel = relations_vanish(corpus("nw1"), ONE, 4)
    assert not ok and rel is not None
    w3 = corpus("w3")
    assert relations_vanish(w3, RateAssignment({"alpha": 1, "beta": 1, "l1": 1, "l2": 1}), 5)[0]
    ok, rel = relations_vanish(w3, RateAssignment({"alpha": 1, "beta": 1, "l1": 1, "l2": 2}), 4)
    assert not ok and max(rel.levels) <= 3
    assert j4.levels == (2, 3, 4)


def test_w1_fit_is_poisson():
    fit = product_form_fit(corpus("w1"), RateAssignment({"alpha": 1, "beta": 2}), 6)
    assert fit.succeeded
    f1, f2 = fit.f_tables
    r1 = {m * f1[m] / f1[m - 1] for m in range(1, 7)}
    r2 = {m * f2[m] / f2[m - 1] for m in range(1, 7)}
    assert len(r1) == len(r2) == 1
    assert r1.pop() / r2.pop() == 2  # c proportional to (beta, alpha)


def test_nw2_fit_fails_early():
    rng = random.Random(11)
    for _ in range(5):
        fit = product_form_fit(corpus("nw2"), random_rates(corpus("nw2").rate_symbols, rng), 6)
        assert not fit.succeeded and fit.first_failure[0] <= 3


def test_w2_fit_succeeds():
    rng = random.Random(12)
    for _ in range(5):
        fit = product_form_fit(corpus("w2"), random_rates(corpus("w2").rate_symbols, rng), 6)
        assert fit.consistent_through == 6


def test_fit_requires_index_set_from_one():
    with pytest.raises(FitUnavailable):
        product_form_fit(corpus("nw1"), ONE, 4)


def test_shape_labels():
    fit = product_form_fit(corpus("w1"), RateAssignment({"alpha": 3, "beta": 5}), 6)
    assert [s.label for s in shape_classify(fit)] == ["g1", "g1"]
    squares = [Fraction(1)]
    for m in range(1, 7):
        squares.append(squares[-1] * m * m / m)
    assert _shape_of(squares).label == "unknown"


@pytest.mark.parametrize("name", ["w2", "w5", "nw6", "nw7", "nw8", "nw10"])
def test_shapes_regenerate_tables(name):
    net = corpus(name)
    fit = product_form_fit(net, random_rates(net.rate_symbols, random.Random(5)), 6)
    assert fit.succeeded
    for shape, table in zip(shape_classify(fit), fit.f_tables):
        assert shape.label != "unknown"
        assert shape.regenerate(table[0], 6) == table
