"""Symbolic master-equation matrix on a component and its polynomial kernel."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .network import ReactionNetwork
from .poly import RateAssignment, RatePoly, homogeneous_degree, joint_gcd, numeric_content, poly_gcd
from .statespace import (
    IrreducibleComponent,
    State,
    components_at_level,
    transitions_from,
)

DEFAULT_MAX_STATES = 12


class KernelInvariantError(AssertionError):
    """A kernel failed one of its structural checks (rank, sign, degree, gcd)."""


class KernelBudgetExceeded(RuntimeError):
    """The component is larger than the symbolic elimination budget."""


class LevelNotIrreducible(ValueError):
    """The requested level is not a single closed class."""


@dataclass(frozen=True)
class MasterMatrix:
    """``entries[k][j]`` is the total intensity of jumps from state j to state k.

    The diagonal holds minus the total outflow, so every column sums to zero.
    """

    level: int
    states: tuple[State, ...]
    entries: tuple[tuple[RatePoly, ...], ...]

    @property
    def size(self) -> int:
        return len(self.states)

    def column_sums_vanish(self) -> bool:
        m = self.size
        return all(sum((self.entries[k][j] for k in range(m)), RatePoly(self.symbols)).is_zero() for j in range(m))

    @property
    def symbols(self) -> tuple[str, ...]:
        return self.entries[0][0].symbols

    def apply(self, vec) -> list[RatePoly]:
        m = self.size
        out = []
        for k in range(m):
            acc = RatePoly(self.symbols)
            for j in range(m):
                a = self.entries[k][j]
                if a and vec[j]:
                    acc = acc + a * vec[j]
            out.append(acc)
        return out

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "states": [list(s) for s in self.states],
            "entries": [[str(e) for e in row] for row in self.entries],
        }


def _matrix_on(net: ReactionNetwork, states, level: int) -> MasterMatrix:
    syms = net.rate_symbols
    index = {s: i for i, s in enumerate(states)}
    m = len(states)
    rows = [[RatePoly(syms) for _ in range(m)] for _ in range(m)]
    for j, x in enumerate(states):
        for t in transitions_from(net, x):
            k = index.get(t.target)
            if k is None:
                raise ValueError(f"transition from {x} leaves the state set")
            term = RatePoly.symbol(syms, t.rate) * t.coeff
            rows[k][j] = rows[k][j] + term
            rows[j][j] = rows[j][j] - term
    return MasterMatrix(level, tuple(states), tuple(tuple(r) for r in rows))


def master_matrix(net: ReactionNetwork, comp: IrreducibleComponent) -> MasterMatrix:
    return _matrix_on(net, comp.states, comp.level)


@dataclass(frozen=True)
class KernelVector:
    level: int
    states: tuple[State, ...]
    entries: tuple[RatePoly, ...]
    degree: int

    def entry(self, state: State) -> RatePoly:
        try:
            return self.entries[self.states.index(tuple(state))]
        except ValueError:
            raise KeyError(f"state {state} is not in level {self.level}") from None

    def to_json(self) -> dict:
        return {"level": self.level, "degree": self.degree, "entries": [str(e) for e in self.entries]}

    def text(self) -> str:
        return "(" + ", ".join(str(e) for e in self.entries) + ")"


def _primitive_row(row: dict[int, RatePoly]) -> dict[int, RatePoly]:
    """Divide a sparse row by the gcd of its entries, rational content included."""
    g = joint_gcd(sorted(row.values(), key=len))
    if g != 1:
        row = {j: e.exact_div(g) for j, e in row.items()}
    c = numeric_content(x for e in row.values() for x in e.coefficients())
    if c != 1:
        row = {j: e * (1 / c) for j, e in row.items()}
    return row


def _lcm(a: RatePoly, b: RatePoly) -> RatePoly:
    return (a * b).exact_div(poly_gcd(a, b))


def _sparse_kernel(mat: MasterMatrix, max_states: int) -> list[RatePoly]:
    """Kernel of a rank m-1 polynomial matrix by sparse fraction-free elimination.

    Pivots follow the Markowitz rule (least fill-in, then fewest terms), and
    every updated row is divided by its content to hold expression swell down.
    The kernel is unique up to a scalar, so the pivot order does not show in
    the normalized result.
    """
    m = mat.size
    syms = mat.symbols
    if m > max_states:
        raise KernelBudgetExceeded(f"level {mat.level} has {m} states, budget is {max_states}")
    one = RatePoly.constant(syms, 1)
    if m == 1:
        return [one]
    rows = {i: {j: e for j, e in enumerate(mat.entries[i]) if e} for i in range(m)}
    rows = {i: r for i, r in rows.items() if r}
    pivots: list[tuple[dict[int, RatePoly], int]] = []
    while rows:
        col_count: dict[int, int] = {}
        for r in rows.values():
            for j in r:
                col_count[j] = col_count.get(j, 0) + 1
        best = None
        for i, r in rows.items():
            for j, e in r.items():
                key = ((len(r) - 1) * (col_count[j] - 1), len(e), j, i)
                if best is None or key < best:
                    best = key
        _, _, c, p = best
        prow = rows.pop(p)
        piv = prow[c]
        for i, r in list(rows.items()):
            f = r.get(c)
            if not f:
                continue
            g = poly_gcd(piv, f)
            pv, fv = piv.exact_div(g), f.exact_div(g)
            new = {}
            for j in set(r) | set(prow):
                if j == c:
                    continue
                v = pv * r[j] if j in r else RatePoly(syms)
                if j in prow:
                    v = v - fv * prow[j]
                if v:
                    new[j] = v
            if new:
                rows[i] = _primitive_row(new)
            else:
                del rows[i]
        pivots.append((prow, c))
    pivot_cols = {c for _, c in pivots}
    free = [j for j in range(m) if j not in pivot_cols]
    if len(pivots) != m - 1 or len(free) != 1:
        raise KernelInvariantError(f"level {mat.level}: rank {len(pivots)} but expected {m - 1}")
    # back substitution with reduced fractions num[j] / den[j]
    num = {free[0]: one}
    den = {free[0]: one}
    for prow, c in reversed(pivots):
        others = [j for j in prow if j != c]
        common = one
        for j in others:
            common = _lcm(common, den[j])
        acc = RatePoly(syms)
        for j in others:
            acc = acc + prow[j] * num[j] * common.exact_div(den[j])
        n_c, d_c = -acc, prow[c] * common
        g = poly_gcd(n_c, d_c)
        num[c], den[c] = n_c.exact_div(g), d_c.exact_div(g)
    common = one
    for d in den.values():
        common = _lcm(common, d)
    return [num[j] * common.exact_div(den[j]) for j in range(m)]


def _normalize_kernel(h: list[RatePoly]) -> list[RatePoly]:
    nonzero = sorted((e for e in h if e), key=len)
    if not nonzero:
        raise KernelInvariantError("kernel vector is zero")
    g = joint_gcd(nonzero)
    lead_sign = 1 if nonzero[0].leading_coefficient() > 0 else -1
    out = []
    for e in h:
        q = e.exact_div(g) if e else e
        out.append(q * lead_sign)
    c = numeric_content(coef for e in out for coef in e.coefficients())
    return [e * (1 / c) if c != 1 else e for e in out]


def check_kernel(mat: MasterMatrix, h: list[RatePoly], allow_zero: bool = False) -> int:
    """Validate the kernel invariants and return the common degree."""
    degrees = set()
    for state, e in zip(mat.states, h):
        if not e:
            if allow_zero:
                continue
            raise KernelInvariantError(f"kernel entry for {state} is zero")
        if any(c <= 0 for c in e.coefficients()):
            raise KernelInvariantError(f"kernel entry for {state} has a non-positive coefficient: {e}")
        d = homogeneous_degree(e)
        if d is None:
            raise KernelInvariantError(f"kernel entry for {state} is not homogeneous")
        degrees.add(d)
    if len(degrees) != 1:
        raise KernelInvariantError(f"kernel entries have different degrees {sorted(degrees)}")
    if joint_gcd(h) != 1:
        raise KernelInvariantError("kernel entries share a common factor")
    if any(v for v in mat.apply(h)):
        raise KernelInvariantError("A(k) h is not identically zero")
    return degrees.pop()


def kernel_vector(mat: MasterMatrix, max_states: int = DEFAULT_MAX_STATES, allow_zero: bool = False) -> KernelVector:
    raw = _sparse_kernel(mat, max_states)
    h = _normalize_kernel(raw)
    degree = check_kernel(mat, h, allow_zero=allow_zero)
    return KernelVector(mat.level, mat.states, tuple(h), degree)


@lru_cache(maxsize=256)
def level_kernel(net: ReactionNetwork, level: int, max_states: int = DEFAULT_MAX_STATES,
                 allow_transient: bool = False) -> KernelVector:
    """Kernel on the unit-weight level ``level``.

    By default the level must be a single closed class.  With
    ``allow_transient`` a level with one closed class plus transient states is
    accepted; the kernel then vanishes on the transient states.
    """
    dec = components_at_level(net, level)
    if len(dec.components) == 1 and not dec.transient:
        comp = dec.components[0]
        return kernel_vector(master_matrix(net, comp), max_states)
    if allow_transient and len(dec.components) == 1:
        mat = _matrix_on(net, dec.all_states, level)
        return kernel_vector(mat, max_states, allow_zero=True)
    raise LevelNotIrreducible(
        f"level {level} has {len(dec.components)} closed classes and {len(dec.transient)} transient states"
    )


def stationary_eval(h: KernelVector, rates: RateAssignment) -> tuple[Fraction, ...]:
    vals = [Fraction(e.evaluate(rates)) for e in h.entries]
    z = sum(vals)
    return tuple(v / z for v in vals)
