"""Product-form compatibility relations and the rate-space ideals they generate.

If the stationary distribution is ``pi_l(x) = prod_i f_i(x_i) / Z_l`` on every
level, two families of identities among the ``pi`` values must hold:

(a) for x, x+e_j-e_k on level i and y, y+e_j-e_k on level i+1 with x_j = y_j
    and x_k = y_k::

        pi_i(x+e_j-e_k) pi_{i+1}(y) = pi_{i+1}(y+e_j-e_k) pi_i(x)

(b) for triples t = (x, j, y) with x on level i, y on level i+1 and x_j = y_j,
    the ratio ``pi_{i+1}(x+e_j) pi_{i+1}(y) / (pi_i(x) pi_{i+2}(y+e_j))`` does
    not depend on t; cross-multiplying two triples (x, j, y) and (z, k, w)::

        pi_{i+1}(x+e_j) pi_{i+1}(y) pi_{i+2}(w+e_k) pi_i(z)
          = pi_{i+1}(z+e_k) pi_{i+1}(w) pi_{i+2}(y+e_j) pi_i(x)

Substituting the symbolic kernels for the ``pi`` values turns each identity
into a polynomial in the rates.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from .kernel import DEFAULT_MAX_STATES, KernelVector, level_kernel
from .network import ReactionNetwork
from .poly import PrimitiveSplit, RatePoly, SignSummary, primitive_part, sign_summary
from .statespace import State, index_profile, simplex_states

Factor = tuple[int, State]  # (level, state)


class LevelBelowIndexSet(ValueError):
    pass


def _unit(n: int, j: int) -> tuple[int, ...]:
    return tuple(int(i == j) for i in range(n))


def _add(x: State, *vs) -> State:
    out = list(x)
    for sign, v in vs:
        for i, c in enumerate(v):
            out[i] += sign * c
    return tuple(out)


def _fmt(s: State) -> str:
    return "(" + ",".join(map(str, s)) + ")"


@dataclass(frozen=True, order=True)
class RelationInstance:
    """One identity; species indices ``j``/``k`` are 0-based."""

    kind: str
    base_level: int
    points: tuple

    def _factors(self) -> tuple[tuple[Factor, ...], tuple[Factor, ...]]:
        i = self.base_level
        if self.kind == "a":
            x, j, k, y = self.points
            n = len(x)
            d = _add(_unit(n, j), (-1, _unit(n, k)))
            return ((i, _add(x, (1, d))), (i + 1, y)), ((i + 1, _add(y, (1, d))), (i, x))
        x, j, y, z, k, w = self.points
        n = len(x)
        ej, ek = _unit(n, j), _unit(n, k)
        left = ((i + 1, _add(x, (1, ej))), (i + 1, y), (i + 2, _add(w, (1, ek))), (i, z))
        right = ((i + 1, _add(z, (1, ek))), (i + 1, w), (i + 2, _add(y, (1, ej))), (i, x))
        return left, right

    @property
    def left(self) -> tuple[Factor, ...]:
        return self._factors()[0]

    @property
    def right(self) -> tuple[Factor, ...]:
        return self._factors()[1]

    def reduced(self) -> tuple[tuple[Factor, ...], tuple[Factor, ...]]:
        """Both sides with formally common factors cancelled."""
        left, right = Counter(self.left), Counter(self.right)
        common = left & right
        return tuple(sorted((left - common).elements())), tuple(sorted((right - common).elements()))

    @property
    def degenerate(self) -> bool:
        return Counter(self.left) == Counter(self.right)

    @property
    def levels(self) -> tuple[int, ...]:
        return tuple(sorted({lv for lv, _ in self.left + self.right}))

    def describe(self) -> str:
        i = self.base_level
        if self.kind == "a":
            x, j, k, y = self.points
            return f"a[i={i}] x={_fmt(x)} j={j + 1} k={k + 1} y={_fmt(y)}"
        x, j, y, z, k, w = self.points
        return f"b[i={i}] x={_fmt(x)} j={j + 1} y={_fmt(y)} z={_fmt(z)} k={k + 1} w={_fmt(w)}"

    def side_text(self, side) -> str:
        return "*".join(f"pi{lv}{_fmt(s)}" for lv, s in side)

    def to_json(self) -> dict:
        i = self.base_level
        if self.kind == "a":
            x, j, k, y = self.points
            pts = {"x": list(x), "j": j + 1, "k": k + 1, "y": list(y)}
        else:
            x, j, y, z, k, w = self.points
            pts = {"x": list(x), "j": j + 1, "y": list(y), "z": list(z), "k": k + 1, "w": list(w)}
        return {
            "kind": self.kind,
            "base_level": i,
            "points": pts,
            "left": self.side_text(self.left),
            "right": self.side_text(self.right),
        }


def _check_base(i: int, q: int):
    if i < q:
        raise LevelBelowIndexSet(f"base level {i} is below the index set start {q}")


@lru_cache(maxsize=256)
def enumerate_relations_a(n: int, i: int, q: int = 1) -> tuple[RelationInstance, ...]:
    _check_base(i, q)
    out = set()
    for x in simplex_states(n, i):
        for j in range(n):
            for k in range(n):
                if j == k or x[k] == 0:
                    continue
                for y in simplex_states(n, i + 1):
                    if y[j] != x[j] or y[k] != x[k]:
                        continue
                    d = _add(_unit(n, j), (-1, _unit(n, k)))
                    mirror = (_add(x, (1, d)), k, j, _add(y, (1, d)))
                    pts = min((x, j, k, y), mirror)
                    rel = RelationInstance("a", i, pts)
                    if not rel.degenerate:
                        out.add(rel)
    return tuple(sorted(out))


def _triples(n: int, i: int) -> list[tuple[State, int, State]]:
    out = []
    upper = simplex_states(n, i + 1)
    for x in simplex_states(n, i):
        for j in range(n):
            for y in upper:
                if y[j] == x[j]:
                    out.append((x, j, y))
    return out


@lru_cache(maxsize=256)
def enumerate_relations_b(n: int, i: int, q: int = 1) -> tuple[RelationInstance, ...]:
    _check_base(i, q)
    triples = _triples(n, i)
    out = []
    for a in range(len(triples)):
        for b in range(a + 1, len(triples)):
            x, j, y = triples[a]
            z, k, w = triples[b]
            rel = RelationInstance("b", i, (x, j, y, z, k, w))
            if not rel.degenerate:
                out.append(rel)
    return tuple(out)


def relations_through(n: int, j: int, q: int) -> list[RelationInstance]:
    """Every relation whose levels lie in q..j."""
    out: list[RelationInstance] = []
    for top in range(q + 1, j + 1):
        out.extend(relations_topping_at(n, top, q))
    return out


def relations_topping_at(n: int, j: int, q: int) -> list[RelationInstance]:
    """Relations with levels in q..j that reach level j."""
    out: list[RelationInstance] = []
    if j - 1 >= q:
        out.extend(enumerate_relations_a(n, j - 1, q))
    if j - 2 >= q:
        out.extend(enumerate_relations_b(n, j - 2, q))
    return out


# -- substitution ---------------------------------------------------------------


class KernelTable:
    """Kernels by level for one network, computed on demand."""

    def __init__(self, net: ReactionNetwork, max_states: int = DEFAULT_MAX_STATES,
                 allow_transient: bool = False):
        self.net = net
        self.max_states = max_states
        self.allow_transient = allow_transient

    def __getitem__(self, level: int) -> KernelVector:
        return level_kernel(self.net, level, self.max_states, self.allow_transient)

    def value(self, factor: Factor) -> RatePoly:
        level, state = factor
        return self[level].entry(state)

    def product(self, factors) -> RatePoly:
        out = RatePoly.constant(self.net.rate_symbols, 1)
        for f in sorted(factors, key=lambda f: len(self.value(f))):
            out = out * self.value(f)
            if not out:
                break
        return out


@dataclass(frozen=True)
class RelationValue:
    raw: RatePoly
    reduced: RatePoly
    split: PrimitiveSplit | None  # of ``raw``


def relation_to_rate_poly(rel: RelationInstance, kernels: KernelTable | dict) -> RelationValue:
    """Substitute kernel entries into both sides.

    ``raw`` is the plain difference of the two products; ``reduced`` drops
    formally common factors first.  Those factors are positive on positive
    rates, so both have the same zeros there; computing ``reduced`` first lets
    identically vanishing relations skip the full products.
    """
    table = kernels if isinstance(kernels, KernelTable) else _DictTable(kernels)
    left, right = rel.reduced()
    reduced = table.product(left) - table.product(right)
    common = tuple((Counter(rel.left) & Counter(rel.right)).elements())
    raw = reduced * table.product(common) if common and reduced else reduced
    split = primitive_part(raw) if raw else None
    return RelationValue(raw, reduced, split)


class _DictTable(KernelTable):
    def __init__(self, kernels: dict):
        self._k = kernels
        first = next(iter(kernels.values()))
        self.symbols = first.entries[0].symbols

    def __getitem__(self, level: int) -> KernelVector:
        if level not in self._k:
            raise KeyError(f"no kernel for level {level}")
        return self._k[level]

    def product(self, factors) -> RatePoly:
        out = RatePoly.constant(self.symbols, 1)
        for f in factors:
            out = out * self.value(f)
        return out


# -- generator sets ----------------------------------------------------------------


@dataclass
class Generator:
    poly: RatePoly
    content: RatePoly
    provenance: list[RelationInstance] = field(default_factory=list)

    @property
    def full(self) -> RatePoly:
        """The first originating relation value, content included."""
        return self.content * self.poly

    @property
    def magnitude(self) -> RatePoly:
        """``full`` with the orientation sign dropped (relations have no preferred side)."""
        c = self.content
        return -self.full if c.leading_coefficient() < 0 else self.full

    @property
    def sign(self) -> SignSummary:
        return sign_summary(self.poly)

    def to_json(self) -> dict:
        return {
            "poly": str(self.poly),
            "content": str(self.content),
            "sign_summary": self.sign.value,
            "provenance": [r.describe() for r in self.provenance],
        }


@dataclass
class GeneratorSet:
    level: int
    q: int | None
    generators: list[Generator]
    zero_relation_count: int
    relation_count: int
    transient_levels: tuple[int, ...] = ()

    def polys(self) -> list[RatePoly]:
        return [g.poly for g in self.generators]

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "q": self.q,
            "relation_count": self.relation_count,
            "zero_relation_count": self.zero_relation_count,
            "transient_levels": list(self.transient_levels),
            "generators": [g.to_json() for g in self.generators],
        }


def _start_level(net: ReactionNetwork, j: int, include_transient: bool) -> tuple[int | None, tuple[int, ...]]:
    prof = index_profile(net, max(j, 2))
    q = prof.q
    if not include_transient or q is None:
        return q, ()
    # extend downwards while each level has exactly one closed class
    from .statespace import components_at_level

    start = q
    while start > 1 and len(components_at_level(net, start - 1).components) == 1:
        start -= 1
    return start, tuple(range(start, q))


def ideal_level(net: ReactionNetwork, j: int, max_states: int = DEFAULT_MAX_STATES,
                include_transient: bool = False) -> GeneratorSet:
    """Canonical generators from every relation whose levels lie in q..j.

    With ``include_transient`` the range also covers lower levels that have
    a single closed class plus transient states; kernels there vanish on the
    transient states.  Those extra relations are not implied by product form
    on the closed classes alone, so they are reported separately.
    """
    q, extra = _start_level(net, j, include_transient)
    if q is None or q > j:
        return GeneratorSet(j, q, [], 0, 0, extra)
    table = KernelTable(net, max_states, allow_transient=bool(extra))
    rels = relations_through(net.n_species, j, q)
    gens, zeros = collect_generators(rels, table)
    return GeneratorSet(j, q, gens, zeros, len(rels), extra)


def collect_generators(rels, table: KernelTable) -> tuple[list[Generator], int]:
    """Substitute, drop zeros and merge relations with equal primitive parts."""
    gens: dict[RatePoly, Generator] = {}
    zeros = 0
    for rel in rels:
        val = relation_to_rate_poly(rel, table)
        if val.split is None:
            zeros += 1
            continue
        key = val.split.primitive
        if key not in gens:
            gens[key] = Generator(key, val.split.content_poly(), [rel])
        else:
            gens[key].provenance.append(rel)
    ordered = sorted(gens.values(), key=lambda g: (g.poly.total_degree(), len(g.poly), str(g.poly)))
    return ordered, zeros


@dataclass(frozen=True)
class StabilizationScan:
    first_nonzero_level: int | None
    new_generator_counts: dict[int, int]
    stable_suffix_length: int
    q: int | None

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "first_nonzero_level": self.first_nonzero_level,
            "new_generator_counts": {str(k): v for k, v in self.new_generator_counts.items()},
            "stable_suffix_length": self.stable_suffix_length,
        }


def stabilization_scan(net: ReactionNetwork, j_max: int, max_states: int = DEFAULT_MAX_STATES) -> StabilizationScan:
    """New canonical generators per level (set novelty, not ideal membership)."""
    q = index_profile(net, max(j_max, 2)).q
    if q is None:
        return StabilizationScan(None, {}, 0, None)
    if j_max < q + 2:
        raise ValueError(f"j_max must be at least q + 2 = {q + 2}")
    seen: set[RatePoly] = set()
    counts: dict[int, int] = {}
    first = None
    for j in range(q, j_max + 1):
        current = {g.poly for g in ideal_level(net, j, max_states).generators}
        new = current - seen
        counts[j] = len(new)
        if new and first is None:
            first = j
        seen |= current
    suffix = 0
    for j in range(j_max, q - 1, -1):
        if counts[j]:
            break
        suffix += 1
    return StabilizationScan(first, counts, suffix, q)
