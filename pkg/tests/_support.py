"""Shared helpers: corpus access and conversion to sympy for cross-checks."""

from functools import lru_cache

import sympy
from sympy.parsing.sympy_parser import parse_expr

from prodform.cli import load_network

CORPUS = ["w1", "w2", "w3", "w4", "w5", "w6"] + [f"nw{i}" for i in range(1, 13)] + ["ex28", "mm"]


@lru_cache(maxsize=None)
def corpus(name):
    return load_network(f"corpus:{name}")


def sym(p):
    """RatePoly -> sympy expression over Symbols named like the rate symbols."""
    names = {s: sympy.Symbol(s) for s in p.symbols}
    return parse_expr(str(p).replace("^", "**"), local_dict=names) if str(p) != "0" else sympy.Integer(0)


def sym_symbols(symbols):
    return [sympy.Symbol(s) for s in symbols]


# acceptance criterion -> (passed, detail); filled by test_acceptance, printed by conftest
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


class criterion:
    """Record the outcome of one acceptance criterion; failures still propagate."""

    def __init__(self, number: int, title: str):
        self.number, self.title = number, title
        self.notes: list[str] = []

    def note(self, text: str) -> None:
        self.notes.append(text)

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        detail = self.title if not self.notes else f"{self.title} ({'; '.join(self.notes)})"
        if exc_type is not None:
            first = str(exc).split("\n")[0] or exc_type.__name__
            detail += f" -- {first}"
        ACCEPTANCE[self.number] = (exc_type is None, detail)
        return False
