"""Finite irreducible components of the mass-action Markov chain."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

from .graph import strongly_connected_components
from .network import Reaction, ReactionNetwork
from .structure import conservation_vector, has_unit_conservation

State = tuple[int, ...]


class NonConservativeError(ValueError):
    """The network has no strictly positive conservation vector."""


def propensity(net: ReactionNetwork, r: Reaction, x: State) -> tuple[int, str]:
    """Falling-factorial coefficient of the mass-action intensity and its rate symbol."""
    if len(x) != net.n_species:
        raise ValueError("state dimension does not match species count")
    coef = 1
    for xi, vi in zip(x, r.reactant):
        if xi < vi:
            return 0, r.rate
        for t in range(vi):
            coef *= xi - t
    return coef, r.rate


@dataclass(frozen=True)
class TransitionEvent:
    source: State
    target: State
    rate: str
    coeff: int

    def to_json(self) -> dict:
        return {"from": list(self.source), "to": list(self.target), "rate": self.rate, "coeff": self.coeff}


def transitions_from(net: ReactionNetwork, x: State) -> list[TransitionEvent]:
    out = []
    for r in net.reactions:
        coef, rate = propensity(net, r, x)
        if coef:
            y = tuple(a + d for a, d in zip(x, r.change))
            out.append(TransitionEvent(x, y, rate, coef))
    return out


@dataclass(frozen=True)
class ComponentStructureFlags:
    is_full_simplex: bool
    is_positive: bool
    theorem_hypothesis_met: bool

    def to_json(self) -> dict:
        return {
            "is_full_simplex": self.is_full_simplex,
            "is_positive": self.is_positive,
            "theorem_hypothesis_met": self.theorem_hypothesis_met,
        }


@dataclass(frozen=True)
class IrreducibleComponent:
    """A closed communicating class; states in descending lexicographic order."""

    level: int
    states: tuple[State, ...]
    transitions: tuple[TransitionEvent, ...]
    flags: ComponentStructureFlags

    @property
    def size(self) -> int:
        return len(self.states)

    def index(self) -> dict[State, int]:
        return {s: i for i, s in enumerate(self.states)}

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "states": [list(s) for s in self.states],
            "transitions": [t.to_json() for t in self.transitions],
            "flags": self.flags.to_json(),
        }


@dataclass(frozen=True)
class NotInComponent:
    """The seed is transient; ``absorbing`` lists the closed classes it can reach."""

    seed: State
    absorbing: tuple[IrreducibleComponent, ...]


@dataclass(frozen=True)
class LevelDecomposition:
    level: int
    components: tuple[IrreducibleComponent, ...]
    transient: tuple[State, ...]
    all_states: tuple[State, ...]

    @property
    def is_full_simplex_component(self) -> bool:
        return len(self.components) == 1 and self.components[0].flags.is_full_simplex


def _weights(net: ReactionNetwork) -> tuple[int, ...]:
    w = conservation_vector(net)
    if w is None:
        raise NonConservativeError("network is not conservative; components may be infinite")
    return tuple(int(x) for x in w)


def weighted_states(w: tuple[int, ...], level: int) -> list[State]:
    """All x >= 0 with w · x == level, in descending lexicographic order."""
    out: list[State] = []
    n = len(w)

    def rec(i: int, left: int, prefix: list[int]):
        if i == n - 1:
            if left % w[i] == 0:
                out.append(tuple(prefix + [left // w[i]]))
            return
        for v in range(left // w[i], -1, -1):
            rec(i + 1, left - v * w[i], prefix + [v])

    if n:
        rec(0, level, [])
    return out


def simplex_states(n: int, level: int) -> list[State]:
    return weighted_states((1,) * n, level)


def _build_component(net: ReactionNetwork, states, level: int, full: set | None) -> IrreducibleComponent:
    ordered = tuple(sorted(states, reverse=True))
    members = set(ordered)
    events = []
    active = set()
    for x in ordered:
        for t in transitions_from(net, x):
            if t.target in members:
                events.append(t)
                active.add(t.rate)
    is_full = full is not None and members == full
    flags = ComponentStructureFlags(
        is_full_simplex=is_full,
        is_positive=active == set(net.rate_symbols),
        theorem_hypothesis_met=is_full,
    )
    return IrreducibleComponent(level, ordered, tuple(events), flags)


def _closed_classes(net: ReactionNetwork, states: list[State]):
    succ = {x: [t.target for t in transitions_from(net, x)] for x in states}
    comps = strongly_connected_components(states, lambda v: succ.setdefault(v, [t.target for t in transitions_from(net, v)]))
    where = {}
    for i, comp in enumerate(comps):
        for v in comp:
            where[v] = i
    closed = []
    for i, comp in enumerate(comps):
        if all(where[y] == i for v in comp for y in succ[v]):
            closed.append(comp)
    return comps, closed, succ


@lru_cache(maxsize=512)
def components_at_level(net: ReactionNetwork, level: int) -> LevelDecomposition:
    """Split the conservation class ``w · x = level`` into closed classes and transient states."""
    w = _weights(net)
    states = weighted_states(w, level)
    full = set(states) if all(x == 1 for x in w) else None
    _, closed, _ = _closed_classes(net, states)
    comps = [_build_component(net, c, level, full) for c in closed]
    comps.sort(key=lambda c: c.states[0], reverse=True)
    in_comp = {s for c in comps for s in c.states}
    transient = tuple(s for s in states if s not in in_comp)
    return LevelDecomposition(level, tuple(comps), transient, tuple(states))


def enumerate_component(net: ReactionNetwork, seed: State) -> IrreducibleComponent | NotInComponent:
    """Forward closure from ``seed``; the component if the seed lies in a closed class."""
    seed = tuple(seed)
    if len(seed) != net.n_species or any(v < 0 for v in seed):
        raise ValueError("seed state has the wrong dimension or a negative entry")
    w = _weights(net)
    level = sum(a * b for a, b in zip(w, seed))
    seen = {seed}
    queue = deque([seed])
    while queue:
        x = queue.popleft()
        for t in transitions_from(net, x):
            if t.target not in seen:
                seen.add(t.target)
                queue.append(t.target)
    reach = sorted(seen, reverse=True)
    full = set(weighted_states(w, level)) if all(x == 1 for x in w) else None
    _, closed, _ = _closed_classes(net, reach)
    built = [_build_component(net, c, level, full) for c in closed]
    for comp in built:
        if seed in comp.states:
            return comp
    built.sort(key=lambda c: c.states[0], reverse=True)
    return NotInComponent(seed, tuple(built))


@dataclass(frozen=True)
class IndexProfile:
    q: int | None
    l_max: int
    per_level: tuple[ComponentStructureFlags, ...]
    essential_caveats: tuple[str, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "l_max": self.l_max,
            "per_level": [dict(level=i + 1, **f.to_json()) for i, f in enumerate(self.per_level)],
            "essential_caveats": list(self.essential_caveats),
        }


@lru_cache(maxsize=128)
def index_profile(net: ReactionNetwork, l_max: int = 6) -> IndexProfile:
    """Least q such that every level q..l_max is one full-simplex component."""
    if l_max < 2:
        raise ValueError("l_max must be at least 2")
    if not has_unit_conservation(net):
        raise NonConservativeError("total molecule count is not conserved; index set is undefined")
    flags = []
    caveats = []
    good = []
    for level in range(1, l_max + 1):
        dec = components_at_level(net, level)
        ok = dec.is_full_simplex_component
        good.append(ok)
        flags.append(ComponentStructureFlags(
            is_full_simplex=ok,
            is_positive=ok and dec.components[0].flags.is_positive,
            theorem_hypothesis_met=ok,
        ))
        if not ok:
            parts = [f"{{{', '.join(_fmt_state(s) for s in c.states)}}}" for c in dec.components]
            msg = f"level {level}: closed classes {' '.join(parts) or 'none'}"
            if dec.transient:
                msg += f"; transient states {', '.join(_fmt_state(s) for s in dec.transient)}"
            caveats.append(msg)
    q = None
    for level in range(l_max, 0, -1):
        if not good[level - 1]:
            break
        q = level
    return IndexProfile(q, l_max, tuple(flags), tuple(caveats))


def _fmt_state(s: State) -> str:
    return "(" + ",".join(map(str, s)) + ")"
