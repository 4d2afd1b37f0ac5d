import json
import random
from fractions import Fraction

import pytest
import sympy

from _support import corpus
from prodform.classify import (
    Certificate,
    CertificateKind,
    Verdict,
    classify,
    complex_balance,
    complex_balanced_rates,
    composite_certificate,
    no_positive_root_certificate,
    tree_constants,
    verify_certificate,
    verify_complex_balance,
    witness_check,
)
from prodform.oracle import random_rates
from prodform.poly import RateAssignment, RatePoly
from prodform.relations import RelationInstance

J4 = RelationInstance("b", 2, ((0, 2), 0, (0, 3), (1, 1), 0, (1, 2)))


def _syms(names):
    return [RatePoly.symbol(names, s) for s in names]


def test_positive_polynomial_has_certificate():
    al, be, l1 = _syms(("alpha", "beta", "l1"))
    cert = no_positive_root_certificate(be**5 * l1**2 * (al + l1))
    assert cert is not None and cert.kind is CertificateKind.NO_POSITIVE_ROOT
    assert verify_certificate(cert)


def test_factored_certificate():
    al, be, l1 = _syms(("alpha", "beta", "l1"))
    p = -(al + be) * (l1 + 2 * al) * l1
    cert = no_positive_root_certificate(p)
    assert cert is not None and verify_certificate(cert)


def test_mixed_polynomial_has_none():
    al, be, l1, l2 = _syms(("alpha", "beta", "l1", "l2"))
    assert no_positive_root_certificate(al**2 * l2 - be**2 * l1) is None
    with pytest.raises(ValueError):
        no_positive_root_certificate(RatePoly.zero(("alpha",)))


def test_composite_certificate():
    l1, l2, l3 = _syms(("l1", "l2", "l3"))
    lin = 6 * l1 - 6 * l2 + 7 * l3
    quad = l3**2 + (2 * l1 - 6 * l2) * l3 + l1 * (l1 - 5 * l2)
    cert = composite_certificate(lin, quad, 5)
    assert cert is not None and cert.payload["eliminated_symbol"] == "l2"
    assert verify_certificate(cert)


def test_tampered_certificates_fail():
    al, be, l1 = _syms(("alpha", "beta", "l1"))
    good = no_positive_root_certificate(be**5 * l1**2 * (al + l1))
    bad = Certificate(good.kind, good.level, dict(good.payload, generator=al - be, factors=[al - be]))
    assert not verify_certificate(bad)
    l1, l2, l3 = _syms(("l1", "l2", "l3"))
    comp = composite_certificate(6 * l1 - 6 * l2 + 7 * l3, l3**2 + 2 * l1 * l3 - 6 * l2 * l3 + l1**2 - 5 * l1 * l2)
    forged = Certificate(comp.kind, comp.level, dict(comp.payload, eliminated=l1 + l3))
    assert not verify_certificate(forged)


def test_tree_constants_span_laplacian_kernel():
    net = corpus("ex28")
    rates = RateAssignment({"alpha": 2, "beta": 3, "gamma": 5})
    k = tree_constants(net, rates)
    comps = list(k)
    idx = {c: i for i, c in enumerate(comps)}
    lap = sympy.zeros(len(comps), len(comps))
    for r in net.reactions:
        lap[idx[r.product], idx[r.reactant]] += rates[r.rate]
        lap[idx[r.reactant], idx[r.reactant]] -= rates[r.rate]
    v = sympy.Matrix([k[c] for c in comps])
    assert lap * v == sympy.zeros(len(comps), 1)
    assert all(x > 0 for x in k.values())


def test_example_triangle_balance():
    net = corpus("ex28")
    res = complex_balance(net, RateAssignment({"alpha": 1, "beta": 1, "gamma": 1}))
    assert res.balanced and res.point_c == (1, 1)
    assert not complex_balance(net, RateAssignment({"alpha": 1, "beta": 1, "gamma": 2})).balanced


def test_triangle_condition_is_sharp():
    net = corpus("ex28")
    rng = random.Random(4)
    for _ in range(10):
        a, b = Fraction(rng.randint(1, 9)), Fraction(rng.randint(1, 9))
        s = Fraction(rng.randint(1, 6))
        # gamma^2 = alpha*beta with alpha = a^2 s, beta = b^2 s
        on = RateAssignment({"alpha": a * a * s, "beta": b * b * s, "gamma": a * b * s})
        off = RateAssignment({"alpha": a * a * s, "beta": b * b * s, "gamma": a * b * s + 1})
        res = complex_balance(net, on)
        assert res.balanced
        if res.point_c is not None:
            assert verify_complex_balance(net, on, res.point_c)
        assert not complex_balance(net, off).balanced


def test_w1_always_balanced():
    rng = random.Random(1)
    for _ in range(10):
        assert complex_balance(corpus("w1"), random_rates(("alpha", "beta"), rng)).balanced


def test_not_weakly_reversible_is_unbalanced():
    res = complex_balance(corpus("nw1"), RateAssignment({"alpha": 1, "beta": 1}))
    assert not res.balanced and res.caveats


@pytest.mark.parametrize("name", ["w3", "w4", "ex28", "w5"])
def test_constructed_rates_are_balanced(name):
    net = corpus(name)
    rates, c = complex_balanced_rates(net, random.Random(2))
    assert verify_complex_balance(net, rates, c)
    assert complex_balance(net, rates).balanced
    assert witness_check(net, rates, 4).product_form_consistent


def test_w3_witnesses():
    w3 = corpus("w3")
    on = witness_check(w3, RateAssignment({"alpha": 1, "beta": 1, "l1": 1, "l2": 1}), 5)
    assert on.product_form_consistent and on.violations == []
    off = witness_check(w3, RateAssignment({"alpha": 1, "beta": 1, "l1": 1, "l2": 2}), 4)
    assert not off.product_form_consistent
    assert max(off.violated_relation.levels) <= 3


def test_nw1_worked_violation():
    rep = witness_check(corpus("nw1"), RateAssignment({"alpha": 1, "beta": 1}), 4)
    values = {r: v for r, v in rep.violations}
    swapped = RelationInstance("b", 2, J4.points[3:] + J4.points[:3])
    hit = values.get(J4, None)
    if hit is None:
        hit = -values[swapped]
    assert hit == -144
    assert rep.scale == {2: "kernel", 3: "kernel", 4: "kernel"}


def test_classify_examples():
    w1 = classify(corpus("w1"))
    assert (w1.verdict, w1.certainty) == (Verdict.I, "certified")
    nw2 = classify(corpus("nw2"), j_max=4)
    assert (nw2.verdict, nw2.certainty) == (Verdict.N, "certified")
    assert nw2.certificates[0].level == 3
    w3 = classify(corpus("w3"), j_max=4)
    assert (w3.verdict, w3.certainty) == (Verdict.E, "certified")
    kinds = {c.kind for c in w3.certificates}
    assert kinds == {CertificateKind.COMPLEX_BALANCE_WITNESS, CertificateKind.RELATION_VIOLATION_WITNESS}
    for c in w3.certificates:
        assert verify_certificate(c, corpus("w3"))


def test_classify_caveats_and_bounds():
    nw4 = classify(corpus("nw4"))
    assert nw4.verdict is Verdict.N
    assert any("necessary conditions only" in c for c in nw4.caveats)
    w2 = classify(corpus("w2"))
    assert (w2.verdict, w2.certainty) == (Verdict.I, "bounded(6)")
    mm = classify(corpus("mm"))
    assert mm.verdict is Verdict.I and mm.caveats


def test_user_witness_is_used():
    net = corpus("nw11")
    ones = RateAssignment({s: 1 for s in net.rate_symbols})
    rep = classify(net, j_max=4, witness_rates=[ones])
    assert rep.verdict is Verdict.E
    assert any(c.payload.get("source") == "user" for c in rep.certificates)


def test_classify_is_deterministic():
    a = json.dumps(classify(corpus("ex28"), seed=3).to_json(), sort_keys=True)
    b = json.dumps(classify(corpus("ex28"), seed=3).to_json(), sort_keys=True)
    assert a == b


def test_classify_rejects_low_levels():
    with pytest.raises(ValueError):
        classify(corpus("w1"), j_max=1)
