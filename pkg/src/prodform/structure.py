"""Structural invariants of a reaction network."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .graph import strongly_connected_components
from .linalg import integer_scaled, nullspace, rank
from .network import Complex, ReactionNetwork


class Reversibility(str, enum.Enum):
    REVERSIBLE = "reversible"
    WEAKLY_REVERSIBLE = "weakly_reversible"
    NON_WEAKLY_REVERSIBLE = "non_weakly_reversible"


def stoich_subspace_dim(net: ReactionNetwork) -> int:
    rows = [list(r.change) for r in net.reactions]
    return rank(rows) if rows else 0


def linkage_classes(net: ReactionNetwork) -> list[list[Complex]]:
    """Connected components of the undirected reaction graph, in complex order."""
    parent = {c: c for c in net.complexes}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    for r in net.reactions:
        a, b = find(r.reactant), find(r.product)
        if a != b:
            parent[b] = a
    groups: dict[Complex, list[Complex]] = {}
    for c in net.complexes:
        groups.setdefault(find(c), []).append(c)
    return list(groups.values())


def deficiency(net: ReactionNetwork) -> int:
    return len(net.complexes) - len(linkage_classes(net)) - stoich_subspace_dim(net)


def reversibility_class(net: ReactionNetwork) -> Reversibility:
    pairs = {(r.reactant, r.product) for r in net.reactions}
    if all((b, a) in pairs for a, b in pairs):
        return Reversibility.REVERSIBLE
    succ: dict[Complex, list[Complex]] = {c: [] for c in net.complexes}
    for r in net.reactions:
        succ[r.reactant].append(r.product)
    comps = strongly_connected_components(net.complexes, succ.__getitem__)
    where = {c: i for i, comp in enumerate(comps) for c in comp}
    if all(where[r.reactant] == where[r.product] for r in net.reactions):
        return Reversibility.WEAKLY_REVERSIBLE
    return Reversibility.NON_WEAKLY_REVERSIBLE


def is_weakly_reversible(net: ReactionNetwork) -> bool:
    return reversibility_class(net) is not Reversibility.NON_WEAKLY_REVERSIBLE


# -- conservation ------------------------------------------------------------

# A linear constraint sum(coeffs[v] * x_v) >= bound over named variables.
_Constraint = tuple[dict[int, Fraction], Fraction]


def _eliminate(cons: list[_Constraint], var: int) -> list[_Constraint]:
    lower, upper, rest = [], [], []
    for coeffs, b in cons:
        a = coeffs.get(var, 0)
        if a > 0:
            lower.append((coeffs, b))
        elif a < 0:
            upper.append((coeffs, b))
        else:
            rest.append((coeffs, b))
    out = list(rest)
    for lc, lb in lower:
        for uc, ub in upper:
            fl, fu = -uc[var], lc[var]
            keys = (set(lc) | set(uc)) - {var}
            merged = {k: fl * lc.get(k, 0) + fu * uc.get(k, 0) for k in keys}
            merged = {k: v for k, v in merged.items() if v}
            out.append((merged, fl * lb + fu * ub))
    seen = set()
    unique = []
    for coeffs, b in out:
        key = (tuple(sorted(coeffs.items())), b)
        if key not in seen:
            seen.add(key)
            unique.append((coeffs, b))
    return unique


def _pick(cons: list[_Constraint], var: int, values: dict[int, Fraction]) -> Fraction | None:
    """Smallest value of ``var`` satisfying ``cons`` given the other variables."""
    lo, hi = None, None
    for coeffs, b in cons:
        a = coeffs.get(var, 0)
        rest = sum((c * values[k] for k, c in coeffs.items() if k != var), Fraction(0))
        if a == 0:
            if rest < b:
                return None
            continue
        bound = (b - rest) / a
        if a > 0:
            lo = bound if lo is None else max(lo, bound)
        else:
            hi = bound if hi is None else min(hi, bound)
    if lo is not None and hi is not None and lo > hi:
        return None
    if lo is not None:
        return lo
    return hi if hi is not None else Fraction(0)


def conservation_vector(net: ReactionNetwork) -> tuple[Fraction, ...] | None:
    """A strictly positive w with (v' - v) · w = 0 for every reaction, or None.

    Among all w with every entry at least 1 this returns one minimizing the
    entry sum, found exactly by Fourier-Motzkin elimination over a nullspace
    basis, then scaled to coprime integers.
    """
    n = net.n_species
    if n == 0:
        return None
    rows = [list(r.change) for r in net.reactions]
    basis = nullspace(rows, n) if rows else [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    if not basis:
        return None
    d = len(basis)
    s = d  # objective variable index
    cons: list[_Constraint] = []
    for i in range(n):
        coeffs = {k: basis[k][i] for k in range(d) if basis[k][i]}
        cons.append((coeffs, Fraction(1)))
    total = {k: -sum(basis[k]) for k in range(d)}
    total[s] = Fraction(1)
    cons.append(({k: v for k, v in total.items() if v}, Fraction(0)))

    stages = [cons]
    for var in range(d):
        stages.append(_eliminate(stages[-1], var))
    values: dict[int, Fraction] = {}
    best = _pick(stages[-1], s, values)
    if best is None:
        return None
    values[s] = best
    for var in reversed(range(d)):
        v = _pick(stages[var], var, values)
        if v is None:
            return None
        values[var] = v
    w = [sum((values[k] * basis[k][i] for k in range(d)), Fraction(0)) for i in range(n)]
    if any(x <= 0 for x in w):
        return None
    return tuple(Fraction(x) for x in integer_scaled(w))


def verify_conservation(net: ReactionNetwork, w) -> bool:
    return all(x > 0 for x in w) and all(
        sum(c * x for c, x in zip(r.change, w)) == 0 for r in net.reactions
    )


def has_unit_conservation(net: ReactionNetwork) -> bool:
    return net.n_species > 0 and all(sum(r.change) == 0 for r in net.reactions)


def _fraction_text(x: Fraction) -> str:
    return str(Fraction(x))


@dataclass(frozen=True)
class StructureReport:
    species: tuple[str, ...]
    complex_count: int
    stoich_dim: int
    linkage_count: int
    deficiency: int
    conservation: tuple[Fraction, ...] | None
    reversibility: Reversibility

    def to_json(self) -> dict:
        return {
            "species": list(self.species),
            "complex_count": self.complex_count,
            "stoich_dim": self.stoich_dim,
            "linkage_count": self.linkage_count,
            "deficiency": self.deficiency,
            "conservation": None if self.conservation is None else [_fraction_text(x) for x in self.conservation],
            "reversibility": self.reversibility.value,
        }


def analyze_structure(net: ReactionNetwork) -> StructureReport:
    dim = stoich_subspace_dim(net)
    classes = linkage_classes(net)
    delta = len(net.complexes) - len(classes) - dim
    assert delta >= 0, "negative deficiency"
    return StructureReport(
        species=net.species,
        complex_count=len(net.complexes),
        stoich_dim=dim,
        linkage_count=len(classes),
        deficiency=delta,
        conservation=conservation_vector(net),
        reversibility=reversibility_class(net),
    )
