from math import comb

import pytest

from _support import CORPUS, corpus
from prodform.statespace import (
    IrreducibleComponent,
    NonConservativeError,
    NotInComponent,
    components_at_level,
    enumerate_component,
    index_profile,
    propensity,
    simplex_states,
    transitions_from,
)


def _reaction(net, rate):
    return net.reaction_by_rate(rate)


def test_propensities():
    nw1 = corpus("nw1")
    assert propensity(nw1, _reaction(nw1, "alpha"), (0, 4)) == (12, "alpha")
    assert propensity(nw1, _reaction(nw1, "alpha"), (1, 1))[0] == 0
    assert propensity(nw1, _reaction(nw1, "beta"), (2, 2)) == (2, "beta")


def test_transitions_stay_on_level():
    net = corpus("w6")
    for x in simplex_states(4, 3):
        for t in transitions_from(net, x):
            assert sum(t.target) == 3 and t.coeff > 0


def test_enumerate_component_nw1():
    nw1 = corpus("nw1")
    comp = enumerate_component(nw1, (2, 0))
    assert isinstance(comp, IrreducibleComponent)
    assert set(comp.states) == {(2, 0), (1, 1), (0, 2)}
    assert comp.flags.is_full_simplex and comp.flags.is_positive
    out = enumerate_component(nw1, (1, 0))
    assert isinstance(out, NotInComponent)
    assert [c.states for c in out.absorbing] == [((0, 1),)]


def test_enumerate_component_w1():
    comp = enumerate_component(corpus("w1"), (3, 0))
    assert set(comp.states) == {(3, 0), (2, 1), (1, 2), (0, 3)}


def test_bad_seed():
    with pytest.raises(ValueError):
        enumerate_component(corpus("w1"), (1, -1))
    with pytest.raises(ValueError):
        enumerate_component(corpus("w1"), (1, 1, 1))


@pytest.mark.parametrize("name, q", [("nw1", 2), ("nw4", 3), ("nw5", 3), ("w3", 1), ("nw2", 1), ("nw3", 2), ("w1", 1)])
def test_index_profile(name, q):
    assert index_profile(corpus(name), 6).q == q


def test_index_profile_requires_unit_conservation():
    with pytest.raises(NonConservativeError):
        index_profile(corpus("mm"), 4)


def test_nw1_level_one_caveat():
    prof = index_profile(corpus("nw1"), 4)
    assert not prof.per_level[0].is_full_simplex
    assert any("level 1" in c for c in prof.essential_caveats)


@pytest.mark.parametrize("name", [n for n in CORPUS if n != "mm"])
def test_levels_partition_the_simplex(name):
    net = corpus(name)
    for level in range(1, 5):
        dec = components_at_level(net, level)
        states = [s for c in dec.components for s in c.states] + list(dec.transient)
        assert sorted(states) == sorted(simplex_states(net.n_species, level))
        assert len(states) == comb(level + net.n_species - 1, net.n_species - 1)
