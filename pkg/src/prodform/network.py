"""The parsed reaction network model."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

Complex = tuple[int, ...]


@dataclass(frozen=True)
class Reaction:
    reactant: Complex
    product: Complex
    rate: str

    def __post_init__(self):
        if len(self.reactant) != len(self.product):
            raise ValueError("reactant and product have different dimensions")
        if self.reactant == self.product:
            raise ValueError("reactant equals product")

    @property
    def change(self) -> tuple[int, ...]:
        return tuple(b - a for a, b in zip(self.reactant, self.product))


@dataclass(frozen=True)
class ReactionNetwork:
    """Species, complexes and reactions with one rate symbol per reaction.

    Species and complexes are ordered by first appearance in the source.
    """

    species: tuple[str, ...]
    reactions: tuple[Reaction, ...]
    name: str = ""

    def __post_init__(self):
        n = len(self.species)
        if len(set(self.species)) != n:
            raise ValueError("duplicate species name")
        rates = [r.rate for r in self.reactions]
        if len(set(rates)) != len(rates):
            raise ValueError("rate symbols must be distinct")
        pairs = [(r.reactant, r.product) for r in self.reactions]
        if len(set(pairs)) != len(pairs):
            raise ValueError("duplicate reaction")
        for r in self.reactions:
            if len(r.reactant) != n:
                raise ValueError("complex dimension does not match species count")

    @property
    def n_species(self) -> int:
        return len(self.species)

    @cached_property
    def complexes(self) -> tuple[Complex, ...]:
        seen: dict[Complex, None] = {}
        for r in self.reactions:
            seen.setdefault(r.reactant)
            seen.setdefault(r.product)
        return tuple(seen)

    @cached_property
    def rate_symbols(self) -> tuple[str, ...]:
        return tuple(r.rate for r in self.reactions)

    def reaction_by_rate(self, rate: str) -> Reaction:
        for r in self.reactions:
            if r.rate == rate:
                return r
        raise KeyError(rate)

    def format_complex(self, c: Complex) -> str:
        terms = []
        for name, k in zip(self.species, c):
            if k == 1:
                terms.append(name)
            elif k:
                terms.append(f"{k} {name}")
        return " + ".join(terms) if terms else "0"

    def __hash__(self) -> int:
        return hash((self.species, self.reactions))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ReactionNetwork):
            return NotImplemented
        return self.species == other.species and self.reactions == other.reactions
