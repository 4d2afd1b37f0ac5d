import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _support import CORPUS, corpus
from prodform.parser import ParseError, parse_network, render_network


def test_example_network():
    net = parse_network("S1 -> S2 [beta]; 2 S2 -> 2 S1 [alpha]")
    assert net.species == ("S1", "S2")
    assert len(net.complexes) == 4
    assert [(r.reactant, r.product, r.rate) for r in net.reactions] == [
        ((1, 0), (0, 1), "beta"),
        ((0, 2), (2, 0), "alpha"),
    ]


def test_reversible_arrow_expands():
    net = parse_network("S1 <-> S2 [a, b]")
    assert [(r.reactant, r.product, r.rate) for r in net.reactions] == [((1, 0), (0, 1), "a"), ((0, 1), (1, 0), "b")]


def test_render():
    net = parse_network("S1 -> S2 [beta]; 2 S2 -> 2 S1 [alpha]")
    assert render_network(net) == "S1 -> S2 [beta]\n2 S2 -> 2 S1 [alpha]"
    assert render_network(parse_network("")) == ""


@pytest.mark.parametrize("name", CORPUS)
def test_corpus_round_trip(name):
    text = render_network(corpus(name))
    again = parse_network(text)
    assert render_network(again) == text
    assert again.reactions == corpus(name).reactions


@pytest.mark.parametrize(
    "text, where, message",
    [
        ("S1 -> S1 [k]", (1, 4), "reactant equals product"),
        ("S1 -> S2", (1, 9), "expected '['"),
        ("S1 -> S2 [a]\nS2 -> S1 [a]", (2, 11), "already used"),
        ("S1 => S2 [a]", (1, 4), "unexpected character"),
        ("S1 <-> S2 [a]", (1, 4), "exactly 2 rate symbols"),
        ("2.5 S1 -> S2 [a]", (1, 2), "unexpected character"),
        ("S1 -> S2 [a]; S1 -> S2 [b]", (1, 18), "duplicate reaction"),
        ("S1 + -> S2 [a]", (1, 6), "expected species name"),
    ],
)
def test_malformed_inputs_are_located(text, where, message):
    with pytest.raises(ParseError) as info:
        parse_network(text, origin="bad.crn")
    d = info.value.diagnostics[0]
    assert (d.line, d.column) == where
    assert message in d.message
    assert str(info.value).startswith(f"bad.crn:{where[0]}:{where[1]}:")


def test_all_errors_reported_in_order():
    with pytest.raises(ParseError) as info:
        parse_network("S1 -> S1 [a]\nS2 -> S2 [b]")
    assert [d.line for d in info.value.diagnostics] == [1, 2]


species = st.sampled_from(["A", "B", "C"])
complexes = st.dictionaries(species, st.integers(1, 3), min_size=1, max_size=2)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(complexes, complexes), min_size=1, max_size=5, unique_by=lambda t: repr(t)))
def test_render_is_idempotent(pairs):
    lines = []
    for i, (u, v) in enumerate(pairs):
        if u == v:
            continue
        cu = " + ".join(k if n == 1 else f"{n} {k}" for k, n in sorted(u.items()))
        cv = " + ".join(k if n == 1 else f"{n} {k}" for k, n in sorted(v.items()))
        lines.append(f"{cu} -> {cv} [k{i}]")
    try:
        net = parse_network("\n".join(lines))
    except ParseError:
        return  # duplicates are legitimately rejected
    text = render_network(net)
    assert render_network(parse_network(text)) == text
