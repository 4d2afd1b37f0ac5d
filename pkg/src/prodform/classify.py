"""I / N / E classification with re-checkable certificates.

Verdict I is certified only by the deficiency-zero theorem; vanishing
relations up to a finite level give bounded evidence.  N needs a relation
polynomial (or a pair of them) that cannot vanish at positive rates.  E needs
a rate point with product form and one without.
"""

from __future__ import annotations

import enum
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

from .factor import core_factors, eliminate_linear, is_sign_definite, split_factors
from .graph import strongly_connected_components
from .kernel import DEFAULT_MAX_STATES, KernelBudgetExceeded, level_kernel
from .linalg import integer_scaled, nullspace
from .network import Complex, ReactionNetwork
from .oracle import StationaryLevels, random_rates, relations_vanish, residual_of
from .poly import RateAssignment, RatePoly, SignSummary, sign_summary
from .relations import (
    Generator,
    KernelTable,
    RelationInstance,
    collect_generators,
    relations_through,
    relations_topping_at,
)
from .statespace import components_at_level, index_profile
from .structure import analyze_structure, has_unit_conservation, linkage_classes

FULL_ENUMERATION_LIMIT = 20000
# larger generators only get the plain sign test; factoring them rarely pays off
FACTOR_MAX_TERMS = 400


class Verdict(str, enum.Enum):
    I = "I"  # noqa: E741
    N = "N"
    E = "E"
    INCONCLUSIVE = "inconclusive"


class CertificateKind(str, enum.Enum):
    DEFICIENCY_ZERO_WR = "deficiency_zero_wr"
    NO_POSITIVE_ROOT = "no_positive_root"
    COMPLEX_BALANCE_WITNESS = "complex_balance_witness"
    RELATION_VIOLATION_WITNESS = "relation_violation_witness"
    BOUNDED_EVIDENCE = "bounded_evidence"


def _jsonable(v):
    if isinstance(v, (RatePoly, Fraction)):
        return str(v)
    if isinstance(v, RateAssignment):
        return v.to_text()
    if isinstance(v, RelationInstance):
        return v.describe()
    if isinstance(v, enum.Enum):
        return v.value
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


@dataclass
class Certificate:
    kind: CertificateKind
    level: int | None
    payload: dict

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "level": self.level, "payload": _jsonable(self.payload)}


# -- positivity certificates ----------------------------------------------------------------


def no_positive_root_certificate(p: RatePoly, level: int | None = None, provenance=None) -> Certificate | None:
    """Certificate that ``p`` has no zero with all coordinates positive.

    Either p itself has coefficients of one sign, or it splits into factors
    that each do.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial vanishes everywhere")
    payload = {"generator": p}
    if provenance:
        payload["provenance"] = list(provenance)
    if is_sign_definite(p):
        payload["factors"] = [p]
        return Certificate(CertificateKind.NO_POSITIVE_ROOT, level, payload)
    content, factors = split_factors(p)
    if all(is_sign_definite(f) for f in factors):
        payload["content"] = content
        payload["factors"] = factors
        return Certificate(CertificateKind.NO_POSITIVE_ROOT, level, payload)
    return None


def composite_certificate(linear: RatePoly, target: RatePoly, level: int | None = None) -> Certificate | None:
    """Two polynomials with no common positive zero, via one linear elimination.

    ``linear`` must have degree one in some symbol v with a sign-definite
    coefficient; solving it for v and clearing denominators in ``target``
    leaves a polynomial free of v, and if that one has coefficients of one
    sign the pair cannot vanish together at positive rates.
    """
    for v in sorted(linear.variables()):
        if linear.degree_in(v) != 1 or target.degree_in(v) == 0:
            continue
        eliminated = eliminate_linear(linear, v, target)
        if eliminated is not None and eliminated and is_sign_definite(eliminated):
            return Certificate(CertificateKind.NO_POSITIVE_ROOT, level, {
                "composite": True,
                "linear": linear,
                "target": target,
                "eliminated_symbol": linear.symbols[v],
                "eliminated": eliminated,
            })
    return None


def _check_sign_by_sampling(p: RatePoly, rng: random.Random, count: int = 100) -> bool:
    signs = set()
    for _ in range(count):
        v = p.evaluate(random_rates(p.symbols, rng))
        if v == 0:
            return False
        signs.add(v > 0)
    return len(signs) == 1


# -- complex balance ------------------------------------------------------------------------


@dataclass(frozen=True)
class ComplexBalanceResult:
    balanced: bool
    point_c: tuple[Fraction, ...] | None
    tree_constants: dict[Complex, Fraction]
    caveats: tuple[str, ...] = ()

    def to_json(self, net: ReactionNetwork | None = None) -> dict:
        name = net.format_complex if net is not None else str
        return {
            "balanced": self.balanced,
            "point_c": None if self.point_c is None else [str(c) for c in self.point_c],
            "tree_constants": {name(k): str(v) for k, v in self.tree_constants.items()},
            "caveats": list(self.caveats),
        }


def _det(m: list[list[Fraction]]) -> Fraction:
    """Exact determinant by fraction elimination."""
    a = [row[:] for row in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            if a[r][c]:
                f = a[r][c] / a[c][c]
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return det


def tree_constants(net: ReactionNetwork, rates: RateAssignment) -> dict[Complex, Fraction]:
    """Positive kernel of the rate-weighted complex Laplacian, class by class.

    By the matrix-tree theorem the entry for complex c is the principal minor
    of minus the Laplacian with c's row and column removed, i.e. the total
    weight of spanning trees directed towards c.
    """
    rates = rates.require(net.rate_symbols)
    out: dict[Complex, Fraction] = {}
    for cls in linkage_classes(net):
        idx = {c: i for i, c in enumerate(cls)}
        m = len(cls)
        lap = [[Fraction(0)] * m for _ in range(m)]
        for r in net.reactions:
            if r.reactant in idx:
                i, j = idx[r.product], idx[r.reactant]
                lap[i][j] += rates[r.rate]
                lap[j][j] -= rates[r.rate]
        for c, i in idx.items():
            minor = [[-lap[a][b] for b in range(m) if b != i] for a in range(m) if a != i]
            out[c] = _det(minor) if minor else Fraction(1)
        for a in range(m):
            if sum(lap[a][b] * out[cls[b]] for b in range(m)) != 0:
                raise AssertionError("tree constants are not in the Laplacian kernel")
    return out


def _mono(c: tuple[Fraction, ...], y: Complex) -> Fraction:
    return prod((ci ** yi for ci, yi in zip(c, y)), start=Fraction(1))


def _prime_exponents(x: Fraction, limit: int = 10**6) -> dict[int, int] | None:
    out: dict[int, int] = {}
    for part, sign in ((x.numerator, 1), (x.denominator, -1)):
        n, p = part, 2
        while p * p <= n:
            while n % p == 0:
                out[p] = out.get(p, 0) + sign
                n //= p
            p += 1
            if p > limit:
                return None
        if n > 1:
            out[n] = out.get(n, 0) + sign
    return out


def _rational_point(net: ReactionNetwork, consts: dict[Complex, Fraction], classes) -> tuple[Fraction, ...] | None:
    """A rational c with c^y proportional to the tree constants on every class, if one exists easily."""
    exps = {c: _prime_exponents(k) for c, k in consts.items()}
    if any(e is None for e in exps.values()):
        return None
    primes = sorted({p for e in exps.values() for p in e})
    n, nc = net.n_species, len(classes)
    comps = [c for cls in classes for c in cls]
    cls_of = {c: i for i, cls in enumerate(classes) for c in cls}
    point = [Fraction(1)] * n
    for p in primes:
        # unknowns: log_p c_s (n of them) and log_p of the class scalars
        rows = []
        for c in comps:
            row = [Fraction(v) for v in c] + [Fraction(int(cls_of[c] == k)) for k in range(nc)]
            rows.append(row + [Fraction(exps[c].get(p, 0))])
        sol = _solve(rows, n + nc)
        if sol is None:
            return None
        for s in range(n):
            if sol[s].denominator != 1:
                return None
            point[s] *= Fraction(p) ** int(sol[s])
    return tuple(point)


def _solve(aug: list[list[Fraction]], nvars: int) -> list[Fraction] | None:
    """One solution of a consistent linear system (free variables set to 0)."""
    from .linalg import rref

    red, pivots = rref(aug)
    sol = [Fraction(0)] * nvars
    for row, pc in zip(red, pivots):
        if pc == nvars:
            return None
        sol[pc] = row[nvars]
    return sol


def complex_balance(net: ReactionNetwork, rates: RateAssignment) -> ComplexBalanceResult:
    """Exact complex-balance test at the given rates.

    Balanced iff ``prod K_c^{a_c} = 1`` for every integer relation a among the
    complexes that also sums to zero on each linkage class.
    """
    rates = rates.require(net.rate_symbols)
    classes = linkage_classes(net)
    succ: dict[Complex, list[Complex]] = {c: [] for c in net.complexes}
    for r in net.reactions:
        succ[r.reactant].append(r.product)
    sccs = strongly_connected_components(list(net.complexes), succ.__getitem__)
    if len(sccs) != len(classes):
        return ComplexBalanceResult(False, None, {}, ("network is not weakly reversible",))
    consts = tree_constants(net, rates)
    comps = [c for cls in classes for c in cls]
    cls_of = {c: i for i, cls in enumerate(classes) for c in cls}
    rows = [[Fraction(c[s]) for c in comps] for s in range(net.n_species)]
    rows += [[Fraction(int(cls_of[c] == k)) for c in comps] for k in range(len(classes))]
    for vec in nullspace(rows, len(comps)):
        a = integer_scaled(vec)
        if prod((consts[c] ** e for c, e in zip(comps, a)), start=Fraction(1)) != 1:
            return ComplexBalanceResult(False, None, consts)
    point = _rational_point(net, consts, classes)
    caveats = () if point is not None else ("balanced, but no rational balancing point was found",)
    if point is not None and not verify_complex_balance(net, rates, point):
        raise AssertionError("balancing point fails the complex-balance equations")
    return ComplexBalanceResult(True, point, consts, caveats)


def verify_complex_balance(net: ReactionNetwork, rates: RateAssignment, c) -> bool:
    """Inflow equals outflow at every complex for the mass-action flux at c."""
    rates = rates.require(net.rate_symbols)
    c = tuple(Fraction(x) for x in c)
    if any(x <= 0 for x in c):
        return False
    net_flow: dict[Complex, Fraction] = {y: Fraction(0) for y in net.complexes}
    for r in net.reactions:
        flux = rates[r.rate] * _mono(c, r.reactant)
        net_flow[r.product] += flux
        net_flow[r.reactant] -= flux
    return all(v == 0 for v in net_flow.values())


def complex_balanced_rates(net: ReactionNetwork, rng: random.Random) -> tuple[RateAssignment, tuple[Fraction, ...]] | None:
    """Rates that are complex balanced at a random rational point c.

    Every reaction is closed into a cycle through its linkage class; summing
    randomly weighted cycle fluxes gives a positive circulation J, and
    ``k_r = J_r / c^{y_r}`` balances every complex at c.  None if the network
    is not weakly reversible.
    """
    succ: dict[Complex, list] = {c: [] for c in net.complexes}
    for r in net.reactions:
        succ[r.reactant].append(r)
    flux: dict[str, Fraction] = {r.rate: Fraction(0) for r in net.reactions}
    for r in net.reactions:
        # shortest path from r.product back to r.reactant
        prev = {r.product: None}
        frontier = [r.product]
        while frontier and r.reactant not in prev:
            nxt = []
            for u in frontier:
                for e in succ[u]:
                    if e.product not in prev:
                        prev[e.product] = e
                        nxt.append(e.product)
            frontier = nxt
        if r.reactant not in prev:
            return None
        w = Fraction(rng.randint(1, 9))
        flux[r.rate] += w
        node = r.reactant
        while node != r.product:
            e = prev[node]
            flux[e.rate] += w
            node = e.reactant
    c = tuple(Fraction(rng.randint(1, 6), rng.randint(1, 6)) for _ in range(net.n_species))
    rates = RateAssignment({r.rate: flux[r.rate] / _mono(c, r.reactant) for r in net.reactions})
    return rates, c


# -- witness checks -------------------------------------------------------------------------


class _EvaluatedLevels:
    """Per-level values: evaluated symbolic kernels where affordable, else the exact solve."""

    def __init__(self, net: ReactionNetwork, rates: RateAssignment, max_states: int):
        self.net = net
        self.rates = rates.require(net.rate_symbols)
        self.max_states = max_states
        self.oracle = StationaryLevels(net, rates)
        self.scale: dict[int, str] = {}
        self._cache: dict[int, dict] = {}

    def __getitem__(self, level: int) -> dict:
        if level not in self._cache:
            try:
                h = level_kernel(self.net, level, self.max_states)
                self._cache[level] = {s: Fraction(e.evaluate(self.rates)) for s, e in zip(h.states, h.entries)}
                self.scale[level] = "kernel"
            except KernelBudgetExceeded:
                self._cache[level] = self.oracle[level]
                self.scale[level] = "normalized"
        return self._cache[level]

    def value(self, factor) -> Fraction:
        level, state = factor
        return self[level][state]


@dataclass
class WitnessReport:
    rates: RateAssignment
    l_max: int
    product_form_consistent: bool
    violated_relation: RelationInstance | None = None
    residual: Fraction | None = None
    violations: list[tuple[RelationInstance, Fraction]] = field(default_factory=list)
    scale: dict[int, str] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "rates": self.rates.to_text(),
            "l_max": self.l_max,
            "product_form_consistent": self.product_form_consistent,
            "violated_relation": None if self.violated_relation is None else self.violated_relation.to_json(),
            "residual": None if self.residual is None else str(self.residual),
            "violation_count": len(self.violations),
            "scale": {str(k): v for k, v in sorted(self.scale.items())},
        }


def witness_check(net: ReactionNetwork, rates: RateAssignment, l_max: int,
                  max_states: int = DEFAULT_MAX_STATES) -> WitnessReport:
    """Evaluate the relations through ``l_max`` exactly at one rate point.

    Residuals use the unnormalized kernels where they are affordable (so they
    match the evaluated relation polynomials) and the normalized exact solve
    elsewhere; both sides of a relation involve the same levels, so the scale
    never changes whether a residual is zero.
    """
    q = index_profile(net, max(l_max, 2)).q
    if q is None:
        raise ValueError(f"no index set start up to level {l_max}")
    rates = rates.require(net.rate_symbols)
    levels = _EvaluatedLevels(net, rates, max_states)
    rels = relations_through(net.n_species, l_max, q) if _relation_count(net.n_species, l_max, q) <= FULL_ENUMERATION_LIMIT else None
    report = WitnessReport(rates, l_max, True)
    if rels is not None:
        for rel in rels:
            v = residual_of(rel, levels.value)
            if v != 0:
                report.violations.append((rel, v))
        if report.violations:
            report.product_form_consistent = False
            report.violated_relation, report.residual = report.violations[0]
    else:
        ok, rel = relations_vanish(net, rates, l_max, levels)
        if not ok:
            report.product_form_consistent = False
            report.violated_relation = rel
            report.residual = residual_of(rel, levels.value)
            report.violations = [(rel, report.residual)]
    report.scale = dict(levels.scale)
    return report


def _relation_count(n: int, j: int, q: int) -> int:
    from math import comb

    total = 0
    for i in range(q, j - 1):
        triples = comb(i + n - 1, n - 1) * n * comb(i + n - 1, n - 2) if n > 1 else 0
        total += triples * triples // 2
    return total


# -- certificate re-verification ----------------------------------------------------------------


def verify_certificate(cert: Certificate, net: ReactionNetwork | None = None, seed: int = 0) -> bool:
    rng = random.Random(seed)
    p = cert.payload
    kind = cert.kind
    if kind is CertificateKind.DEFICIENCY_ZERO_WR:
        rep = analyze_structure(net)
        return rep.deficiency == 0 and rep.reversibility.value != "non_weakly_reversible"
    if kind is CertificateKind.NO_POSITIVE_ROOT:
        if p.get("composite"):
            v = p["linear"].symbols.index(p["eliminated_symbol"])
            again = eliminate_linear(p["linear"], v, p["target"])
            return again == p["eliminated"] and is_sign_definite(again) and _check_sign_by_sampling(again, rng)
        factors = p["factors"]
        rebuilt = p.get("content", RatePoly.constant(p["generator"].symbols, 1))
        for f in factors:
            rebuilt = rebuilt * f
        if rebuilt != p["generator"] or not all(is_sign_definite(f) for f in factors):
            return False
        return _check_sign_by_sampling(p["generator"], rng)
    if kind is CertificateKind.COMPLEX_BALANCE_WITNESS:
        return verify_complex_balance(net, p["rates"], p["point_c"])
    if kind is CertificateKind.RELATION_VIOLATION_WITNESS:
        levels = StationaryLevels(net, p["rates"])
        return residual_of(p["relation"], levels.value) != 0
    if kind is CertificateKind.BOUNDED_EVIDENCE:
        if "rates" in p:
            ok, _ = relations_vanish(net, p["rates"], p["through_level"])
            return ok
        return True
    return False


# -- classification ---------------------------------------------------------------------------


@dataclass
class ClassificationReport:
    network: str
    verdict: Verdict
    certainty: str
    certificates: list[Certificate] = field(default_factory=list)
    caveats: list[str] = field(default_factory=list)
    levels_computed: dict = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.certainty == "certified"

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "network": self.network,
            "verdict": self.verdict.value,
            "certainty": self.certainty,
            "certificates": [c.to_json() for c in self.certificates],
            "caveats": list(self.caveats),
            "levels_computed": self.levels_computed,
        }
        if timings:
            out["timings"] = {k: round(v, 4) for k, v in self.timings.items()}
        return out


def _symbolic_top(net: ReactionNetwork, q: int, j_max: int, max_states: int) -> int:
    top = q - 1
    for j in range(q, j_max + 1):
        if len(components_at_level(net, j).all_states) > max_states:
            break
        top = j
    return top


@dataclass
class _SymbolicScan:
    certificate: Certificate | None
    top: int
    all_zero: bool
    generator_count: int


def _symbolic_scan(net: ReactionNetwork, q: int, top: int, max_states: int,
                   lookahead: int = 1) -> _SymbolicScan:
    """Generators level by level until a certificate, or ``lookahead`` levels past the first nonzero one."""
    table = KernelTable(net, max_states)
    singles: list[tuple[RatePoly, int]] = []
    all_zero = True
    count = 0
    last = top
    for j in range(q + 1, top + 1):
        if j > last:
            break
        gens, _ = collect_generators(relations_topping_at(net.n_species, j, q), table)
        count += len(gens)
        if gens and all_zero:
            last = min(top, j + lookahead)
        new_singles = []
        for g in gens:
            all_zero = False
            if len(g.poly) > FACTOR_MAX_TERMS:
                if is_sign_definite(g.poly):
                    cert = no_positive_root_certificate(g.magnitude, j, g.provenance[:3])
                    return _SymbolicScan(cert, j, False, count)
                continue
            cert = no_positive_root_certificate(g.magnitude, j, g.provenance[:3])
            if cert is not None:
                return _SymbolicScan(cert, j, False, count)
            cores = core_factors(g.poly)
            if len(cores) == 1:
                new_singles.append((cores[0], j))
        known = [c for c, _ in singles]
        for core, lv in new_singles:
            if core not in known:
                singles.append((core, lv))
                known.append(core)
        for a, la in singles:
            for b, lb in singles:
                if a == b or (la < j and lb < j):
                    continue
                cert = composite_certificate(a, b, j)
                if cert is not None:
                    return _SymbolicScan(cert, j, False, count)
    return _SymbolicScan(None, last, all_zero, count)


def _structured_candidates(net: ReactionNetwork) -> list[RateAssignment]:
    return [RateAssignment({s: 1 for s in net.rate_symbols})]


def classify(net: ReactionNetwork, j_max: int = 6, witness_rates=None, seed: int = 0,
             max_states: int = DEFAULT_MAX_STATES, samples: int = 5) -> ClassificationReport:
    if j_max < 2:
        raise ValueError("j_max must be at least 2")
    t0 = time.perf_counter()
    rep = ClassificationReport(net.name, Verdict.INCONCLUSIVE, "none")
    struct = analyze_structure(net)
    unit = has_unit_conservation(net)
    if struct.conservation is None:
        raise ValueError("network is not conservative")
    if struct.deficiency == 0 and struct.reversibility.value != "non_weakly_reversible":
        rep.verdict, rep.certainty = Verdict.I, "certified"
        rep.certificates.append(Certificate(CertificateKind.DEFICIENCY_ZERO_WR, None, {
            "deficiency": 0, "reversibility": struct.reversibility.value}))
        if not unit:
            rep.caveats.append("total molecule count is not conserved; the certificate comes from the deficiency-zero theorem alone")
        rep.timings["total"] = time.perf_counter() - t0
        return rep
    if not unit:
        rep.caveats.append("total molecule count is not conserved; relations are only necessary and levels are undefined")
        rep.timings["total"] = time.perf_counter() - t0
        return rep
    prof = index_profile(net, max(j_max, 2))
    q = prof.q
    rep.caveats.extend(prof.essential_caveats)
    if q is None or q + 2 > j_max:
        rep.caveats.append(f"no usable index set below level {j_max}")
        rep.timings["total"] = time.perf_counter() - t0
        return rep
    if q > 1:
        rep.caveats.append(f"index set starts at level {q}; the relations give necessary conditions only")

    # symbolic phase
    t1 = time.perf_counter()
    top = _symbolic_top(net, q, j_max, max_states)
    scan = _symbolic_scan(net, q, top, max_states)
    rep.timings["symbolic"] = time.perf_counter() - t1
    rep.levels_computed = {"q": q, "symbolic_through": scan.top, "numeric_through": j_max,
                           "generators": scan.generator_count}
    if top < j_max:
        rep.caveats.append(f"symbolic kernels stop at level {top} (state budget {max_states}); higher levels use exact numeric solves")
    if scan.certificate is not None:
        rep.verdict, rep.certainty = Verdict.N, "certified"
        rep.certificates.append(scan.certificate)
        rep.timings["total"] = time.perf_counter() - t0
        return rep

    # numeric phase: look for a rate point violating some relation
    t2 = time.perf_counter()
    rng = random.Random(seed)
    violation = None
    for _ in range(samples):
        r = random_rates(net.rate_symbols, rng)
        ok, rel = relations_vanish(net, r, j_max)
        if not ok:
            violation = Certificate(CertificateKind.RELATION_VIOLATION_WITNESS, max(rel.levels), {
                "rates": r, "relation": rel, "residual": residual_of(rel, StationaryLevels(net, r).value)})
            break
    rep.timings["violation_search"] = time.perf_counter() - t2

    if violation is None:
        if not scan.all_zero:
            rep.caveats.append("nonzero relation polynomials but no violating sample was found")
            rep.timings["total"] = time.perf_counter() - t0
            return rep
        if q == 1:
            rep.verdict, rep.certainty = Verdict.I, f"bounded({j_max})"
            rep.certificates.append(Certificate(CertificateKind.BOUNDED_EVIDENCE, j_max, {
                "symbolic_zero_through": scan.top, "random_points_zero": samples, "through_level": j_max}))
            rep.caveats.append("relations vanish through the computed levels; stabilization of the ideal chain is not proven")
        else:
            rep.caveats.append("relations vanish, but sufficiency needs the index set to start at level 1")
        rep.timings["total"] = time.perf_counter() - t0
        return rep

    # product-form witness search
    t3 = time.perf_counter()
    witness = None
    for r in witness_rates or ():
        wr = witness_check(net, r, j_max, max_states)
        if wr.product_form_consistent:
            witness = Certificate(CertificateKind.BOUNDED_EVIDENCE, j_max, {
                "rates": r, "through_level": j_max, "source": "user"})
            break
    if witness is None and struct.reversibility.value != "non_weakly_reversible":
        built = complex_balanced_rates(net, rng)
        if built is not None:
            rates, c = built
            witness = Certificate(CertificateKind.COMPLEX_BALANCE_WITNESS, None, {"rates": rates, "point_c": list(c)})
    if witness is None:
        for r in _structured_candidates(net):
            ok, _ = relations_vanish(net, r, j_max)
            if ok:
                witness = Certificate(CertificateKind.BOUNDED_EVIDENCE, j_max, {
                    "rates": r, "through_level": j_max, "source": "search"})
                break
    rep.timings["witness_search"] = time.perf_counter() - t3
    rep.certificates.append(violation)
    if witness is None:
        rep.caveats.append("no product-form witness found; supply one with witness rates")
    else:
        rep.certificates.append(witness)
        rep.verdict = Verdict.E
        if witness.kind is CertificateKind.COMPLEX_BALANCE_WITNESS:
            rep.certainty = "certified"
        else:
            rep.certainty = f"bounded({j_max})"
            rep.caveats.append(f"product-form witness checked through level {j_max} only")
    rep.timings["total"] = time.perf_counter() - t0
    return rep
