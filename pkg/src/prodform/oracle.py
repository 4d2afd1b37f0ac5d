"""Exact numeric ground truth at concrete rates.

Nothing here touches the symbolic kernels: stationary distributions come from
an exact state-reduction solve of the numeric generator, so agreement with the
evaluated kernels is an independent end-to-end check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

from .linalg import nullspace
from .network import ReactionNetwork
from .poly import RateAssignment
from .relations import RelationInstance, enumerate_relations_a, enumerate_relations_b
from .statespace import State, components_at_level, index_profile, transitions_from


class ComponentMissing(ValueError):
    pass


class FitUnavailable(ValueError):
    pass


@dataclass(frozen=True)
class StationaryDistribution:
    level: int
    states: tuple[State, ...]
    probs: tuple[Fraction, ...]

    def prob(self, state: State) -> Fraction:
        try:
            return self.probs[self.states.index(tuple(state))]
        except ValueError:
            raise KeyError(f"state {state} is not in the component at level {self.level}") from None

    def as_dict(self) -> dict[State, Fraction]:
        return dict(zip(self.states, self.probs))

    def to_json(self) -> dict:
        return {"level": self.level, "states": [list(s) for s in self.states], "probs": [str(p) for p in self.probs]}


def random_rates(symbols, rng: random.Random, height: int = 20) -> RateAssignment:
    """Positive rationals p/q with 1 <= p, q <= height."""
    return RateAssignment({s: Fraction(rng.randint(1, height), rng.randint(1, height)) for s in symbols})


def rate_matrix(net: ReactionNetwork, rates: RateAssignment, states) -> list[list[Fraction]]:
    """``Q[i][j]`` is the jump intensity from state i to state j (i != j)."""
    index = {s: i for i, s in enumerate(states)}
    m = len(states)
    q = [[Fraction(0)] * m for _ in range(m)]
    for i, x in enumerate(states):
        for t in transitions_from(net, x):
            j = index.get(t.target)
            if j is None:
                raise ValueError(f"jump from {x} leaves the state set")
            q[i][j] += t.coeff * rates[t.rate]
    return q


def solve_stationary(q: list[list[Fraction]]) -> list[Fraction]:
    """Grassmann-Taksar-Heyman state reduction; exact for an irreducible generator."""
    m = len(q)
    a = [row[:] for row in q]
    for k in range(m - 1, 0, -1):
        s = sum(a[k][:k])
        if s == 0:
            raise ValueError("generator is not irreducible")
        for i in range(k):
            if a[i][k]:
                f = a[i][k] / s
                for j in range(k):
                    if a[k][j]:
                        a[i][j] += f * a[k][j]
    pi = [Fraction(1)]
    for k in range(1, m):
        pi.append(sum(pi[i] * a[i][k] for i in range(k)) / sum(a[k][:k]))
    z = sum(pi)
    return [p / z for p in pi]


def exact_stationary(net: ReactionNetwork, rates: RateAssignment, level: int,
                     component: int | None = None) -> StationaryDistribution:
    """Stationary distribution on a closed class of level ``level``.

    ``component`` selects among several closed classes (in the order of
    ``components_at_level``); it may be omitted when there is only one.
    """
    rates = rates.require(net.rate_symbols)
    dec = components_at_level(net, level)
    if not dec.components:
        raise ComponentMissing(f"level {level} has no closed class")
    if component is None:
        if len(dec.components) > 1:
            raise ComponentMissing(f"level {level} has {len(dec.components)} closed classes; pick one")
        component = 0
    states = dec.components[component].states
    pi = solve_stationary(rate_matrix(net, rates, states))
    return StationaryDistribution(level, states, tuple(pi))


class StationaryLevels:
    """Lazily solved distributions on single-class levels."""

    def __init__(self, net: ReactionNetwork, rates: RateAssignment):
        self.net = net
        self.rates = rates.require(net.rate_symbols)
        self._cache: dict[int, dict[State, Fraction]] = {}

    def __getitem__(self, level: int) -> dict[State, Fraction]:
        if level not in self._cache:
            self._cache[level] = exact_stationary(self.net, self.rates, level).as_dict()
        return self._cache[level]

    def value(self, factor) -> Fraction:
        level, state = factor
        return self[level][state]


# -- relation residuals ------------------------------------------------------------


@dataclass(frozen=True)
class ResidualReport:
    level: int
    rates: RateAssignment
    residuals: tuple[tuple[RelationInstance, Fraction], ...]

    @property
    def all_zero(self) -> bool:
        return all(v == 0 for _, v in self.residuals)

    def first_nonzero(self) -> tuple[RelationInstance, Fraction] | None:
        return next(((r, v) for r, v in self.residuals if v != 0), None)

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "rates": self.rates.to_text(),
            "relation_count": len(self.residuals),
            "nonzero_count": sum(1 for _, v in self.residuals if v != 0),
            "residuals": [{"relation": r.describe(), "value": str(v), "zero": v == 0} for r, v in self.residuals],
        }


def residual_of(rel: RelationInstance, values) -> Fraction:
    return prod(values(f) for f in rel.left) - prod(values(f) for f in rel.right)


def _start(net: ReactionNetwork, j: int) -> int:
    q = index_profile(net, max(j, 2)).q
    if q is None:
        raise ComponentMissing(f"some level up to {j} is not a single full component")
    return q


def relation_residuals(net: ReactionNetwork, rates: RateAssignment, j: int) -> ResidualReport:
    """Every relation with levels in q..j evaluated on normalized distributions."""
    q = _start(net, j)
    levels = StationaryLevels(net, rates)
    out = []
    for i in range(q, j):
        rels = list(enumerate_relations_a(net.n_species, i, q))
        if i + 2 <= j:
            rels += enumerate_relations_b(net.n_species, i, q)
        for rel in rels:
            out.append((rel, residual_of(rel, levels.value)))
    return ResidualReport(j, levels.rates, tuple(out))


def relations_vanish(net: ReactionNetwork, rates: RateAssignment, j: int,
                     levels=None) -> tuple[bool, RelationInstance | None]:
    """Whether every relation through level j vanishes, without listing them all.

    Kind (b) relations all vanish exactly when the triple ratio
    ``pi_{i+1}(x+e_j) pi_{i+1}(y) / (pi_i(x) pi_{i+2}(y+e_j))`` is the same for
    every triple; kind (a) relations compare the ratio
    ``pi(x+e_j-e_k)/pi(x)`` between consecutive levels among states that share
    the j and k coordinates.  Distributions are positive, so ratios are safe.
    ``levels`` maps a level to ``{state: value}``; any positive rescaling of a
    level leaves the answer unchanged.
    """
    q = _start(net, j)
    if levels is None:
        levels = StationaryLevels(net, rates)
    n = net.n_species
    unit = [tuple(int(a == b) for a in range(n)) for b in range(n)]

    def plus(x, *vs):
        return tuple(a + sum(s * v[i] for s, v in vs) for i, a in enumerate(x))

    for i in range(q, j):
        lo, hi = levels[i], levels[i + 1]
        groups: dict[tuple, tuple[dict, dict]] = {}
        for j_ in range(n):
            for k in range(n):
                if j_ == k:
                    continue
                for level_map, side in ((lo, 0), (hi, 1)):
                    for x, px in level_map.items():
                        if x[k] == 0:
                            continue
                        key = (j_, k, x[j_], x[k])
                        ratio = level_map[plus(x, (1, unit[j_]), (-1, unit[k]))] / px
                        groups.setdefault(key, ({}, {}))[side].setdefault(ratio, x)
        for (j_, k, _, _), (a_side, b_side) in groups.items():
            if a_side and b_side and len(set(a_side) | set(b_side)) > 1:
                ra = next(iter(a_side))
                rb = next((r for r in b_side if r != ra), None)
                if rb is None:
                    ra = next(r for r in a_side if r != next(iter(b_side)))
                    rb = next(iter(b_side))
                x, y = a_side[ra], b_side[rb]
                d = plus(unit[j_], (-1, unit[k]))
                mirror = (plus(x, (1, d)), k, j_, plus(y, (1, d)))
                return False, RelationInstance("a", i, min((x, j_, k, y), mirror))
        if i + 2 > j:
            continue
        top = levels[i + 2]
        first = None
        for x, px in lo.items():
            for j_ in range(n):
                xe = plus(x, (1, unit[j_]))
                for y, py in hi.items():
                    if y[j_] != x[j_]:
                        continue
                    ratio = hi[xe] * py / (px * top[plus(y, (1, unit[j_]))])
                    if first is None:
                        first = (ratio, (x, j_, y))
                    elif ratio != first[0]:
                        a, b = sorted([first[1], (x, j_, y)])
                        return False, RelationInstance("b", i, a + b)
    return True, None


# -- constructive product-form fit ---------------------------------------------------


@dataclass
class FitResult:
    species: tuple[str, ...]
    rates: RateAssignment
    l_max: int
    f_tables: list[list[Fraction]]
    z_values: list[Fraction]
    consistent_through: int
    first_failure: tuple | None = None
    shapes: list | None = field(default=None)

    @property
    def succeeded(self) -> bool:
        return self.consistent_through == self.l_max

    def to_json(self) -> dict:
        failure = None
        if self.first_failure is not None:
            level, states, residual = self.first_failure
            failure = {"level": level, "states": [list(s) for s in states], "residual": str(residual)}
        return {
            "rates": self.rates.to_text(),
            "f_tables": {s: [str(v) for v in t] for s, t in zip(self.species, self.f_tables)},
            "z_values": [str(z) for z in self.z_values],
            "consistent_through": self.consistent_through,
            "first_failure": failure,
            "shapes": None if self.shapes is None else [s.to_json() for s in self.shapes],
        }


def product_form_fit(net: ReactionNetwork, rates: RateAssignment, l_max: int) -> FitResult:
    """Build f_i level by level and check that the normalizer is well defined.

    Anchored at level 1 with ``f_i(0) = 1``, ``f_i(1) = pi_1(e_i)`` and
    ``Z_1 = 1``.  At level l every admissible (x, k) with x on level l-1 must
    give the same ``Z_l = Z_{l-1} pi_{l-1}(x) f_k(x_k+1) / (pi_l(x+e_k) f_k(x_k))``;
    then ``f_i(l) = Z_l pi_l(l e_i)`` and the whole level is reconstructed.
    """
    if l_max < 1:
        raise ValueError("l_max must be positive")
    q = index_profile(net, max(l_max, 2)).q
    if q != 1:
        raise FitUnavailable(f"the fit needs every level from 1 to be one full component (q={q}); use relation residuals")
    n = net.n_species
    levels = StationaryLevels(net, rates)
    unit = [tuple(int(a == b) for a in range(n)) for b in range(n)]
    pi1 = levels[1]
    f = [[Fraction(1), pi1[unit[i]]] for i in range(n)]
    z = [Fraction(1), Fraction(1)]  # z[0] unused
    result = FitResult(net.species, levels.rates, l_max, f, z, 0)

    def reconstruct(level: int) -> tuple | None:
        for x, p in levels[level].items():
            guess = prod(f[i][x[i]] for i in range(n)) / z[level]
            if guess != p:
                return (level, (x,), guess - p)
        return None

    bad = reconstruct(1)
    if bad:
        result.first_failure = bad
        return result
    result.consistent_through = 1
    for level in range(2, l_max + 1):
        prev, cur = levels[level - 1], levels[level]
        zl = None
        anchor = None
        for x, px in prev.items():
            for k in range(n):
                if x[k] + 1 > level - 1:
                    continue
                xe = tuple(a + b for a, b in zip(x, unit[k]))
                cand = z[level - 1] * px / cur[xe] * f[k][x[k] + 1] / f[k][x[k]]
                if zl is None:
                    zl, anchor = cand, xe
                elif cand != zl:
                    result.first_failure = (level, (anchor, xe), cand - zl)
                    return result
        z.append(zl)
        for i in range(n):
            f[i].append(zl * cur[tuple(level * u for u in unit[i])])
        bad = reconstruct(level)
        if bad:
            result.first_failure = bad
            return result
        result.consistent_through = level
    return result


# -- shapes -----------------------------------------------------------------------------


@dataclass(frozen=True)
class ShapeLabel:
    """``rho(m) = m f(m)/f(m-1) = (a + b(m-1)) / (c + d(m-1))``."""

    label: str
    params: tuple[Fraction, ...] = ()

    def rho(self, m: int) -> Fraction:
        a, b, c, d = self.params
        return (a + b * (m - 1)) / (c + d * (m - 1))

    def regenerate(self, f0: Fraction, upto: int) -> list[Fraction]:
        out = [Fraction(f0)]
        for m in range(1, upto + 1):
            out.append(out[-1] * self.rho(m) / m)
        return out

    def to_json(self) -> dict:
        return {"label": self.label, "params": [str(p) for p in self.params]}


def _shape_of(table: list[Fraction]) -> ShapeLabel:
    rho = [m * table[m] / table[m - 1] for m in range(1, len(table))]
    if len(set(rho)) == 1:
        return ShapeLabel("g1", (rho[0], Fraction(0), Fraction(1), Fraction(0)))
    rows = [[Fraction(1), Fraction(t), -r, -r * t] for t, r in enumerate(rho[:3])]
    basis = nullspace(rows, 4)
    if len(basis) != 1:
        return ShapeLabel("unknown")
    a, b, c, d = basis[0]
    if all(c + d * t != 0 for t in range(len(rho))):
        shape = ShapeLabel("?", (a, b, c, d))
        if all(shape.rho(m) == rho[m - 1] for m in range(1, len(rho) + 1)):
            lead = c if c != 0 else d
            a, b, c, d = (v / lead for v in (a, b, c, d))
            if b == 0 and d == 0:
                return ShapeLabel("g1", (a / c, Fraction(0), Fraction(1), Fraction(0)))
            label = "g2" if b != 0 and d != 0 else ("g3" if b == 0 else "g4")
            return ShapeLabel(label, (a, b, c, d))
    return ShapeLabel("unknown")


def shape_classify(fit: FitResult) -> list[ShapeLabel]:
    if fit.consistent_through < 4:
        raise ValueError("shape detection needs a fit consistent through level 4 or more")
    return [_shape_of(t[: fit.consistent_through + 1]) for t in fit.f_tables]
