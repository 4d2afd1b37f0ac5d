"""Exact multivariate polynomials over the rationals in the rate symbols.

Monomials are packed into one integer: the total degree sits in the top field,
followed by one 16-bit exponent field per symbol in declaration order.  Integer
comparison of packed keys is then graded lexicographic order and monomial
multiplication is plain key addition.
"""

from __future__ import annotations

import enum
import heapq
import re
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational

_BITS = 16
_MASK = (1 << _BITS) - 1

ANY_DEGREE = "any"


class SignSummary(str, enum.Enum):
    ZERO = "zero"
    ALL_POSITIVE = "all_positive"
    ALL_NEGATIVE = "all_negative"
    MIXED = "mixed"


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _as_rational(c) -> int | Fraction:
    if isinstance(c, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return _norm(c)
    if isinstance(c, Rational):
        return _norm(Fraction(c.numerator, c.denominator))
    raise TypeError(f"exact rational coefficient required, got {type(c).__name__}")


class RatePoly:
    """A polynomial with exact rational coefficients in a fixed symbol tuple.

    Instances are immutable.  Two polynomials can only be combined when they
    share the same ``symbols`` tuple.
    """

    __slots__ = ("symbols", "_terms", "_hash")

    def __init__(self, symbols: tuple[str, ...], terms: dict[int, int | Fraction] | None = None):
        self.symbols = tuple(symbols)
        self._terms = terms if terms is not None else {}
        self._hash = None

    # -- construction -------------------------------------------------
    @classmethod
    def zero(cls, symbols: Iterable[str]) -> RatePoly:
        return cls(tuple(symbols))

    @classmethod
    def constant(cls, symbols: Iterable[str], value) -> RatePoly:
        symbols = tuple(symbols)
        value = _as_rational(value)
        return cls(symbols, {0: value} if value else {})

    @classmethod
    def symbol(cls, symbols: Iterable[str], name: str) -> RatePoly:
        symbols = tuple(symbols)
        exps = [0] * len(symbols)
        exps[symbols.index(name)] = 1
        return cls(symbols, {_pack(exps): 1})

    @classmethod
    def monomial(cls, symbols: Iterable[str], exps: Iterable[int], coefficient=1) -> RatePoly:
        symbols = tuple(symbols)
        exps = tuple(exps)
        if len(exps) != len(symbols):
            raise ValueError("exponent vector length does not match symbol count")
        coefficient = _as_rational(coefficient)
        return cls(symbols, {_pack(exps): coefficient} if coefficient else {})

    @classmethod
    def from_terms(cls, symbols: Iterable[str], terms: Mapping[tuple[int, ...], object]) -> RatePoly:
        symbols = tuple(symbols)
        out: dict[int, int | Fraction] = {}
        for exps, c in terms.items():
            if len(exps) != len(symbols) or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps!r}")
            k = _pack(exps)
            v = _norm(out.get(k, 0) + _as_rational(c))
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return cls(symbols, out)

    @classmethod
    def parse(cls, symbols: Iterable[str], text: str) -> RatePoly:
        """Parse the canonical text form, e.g. ``"6*a^2 + 3*a*b - 1/2"``."""
        symbols = tuple(symbols)
        src = text.replace(" ", "")
        if not src:
            raise ValueError("empty polynomial text")
        if src[0] not in "+-":
            src = "+" + src
        terms: dict[tuple[int, ...], Fraction] = {}
        for sign, body in re.findall(r"([+-])([^+-]+)", src):
            coef = Fraction(1)
            exps = [0] * len(symbols)
            for factor in body.split("*"):
                if re.fullmatch(r"\d+(/\d+)?", factor):
                    coef *= Fraction(factor)
                    continue
                name, _, power = factor.partition("^")
                if name not in symbols:
                    raise ValueError(f"unknown symbol {name!r} in {text!r}")
                exps[symbols.index(name)] += int(power) if power else 1
            key = tuple(exps)
            terms[key] = terms.get(key, Fraction(0)) + (coef if sign == "+" else -coef)
        return cls.from_terms(symbols, terms)

    # -- inspection ---------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.symbols)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def constant_value(self) -> int | Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get(0, 0)

    def terms(self) -> list[tuple[tuple[int, ...], int | Fraction]]:
        """(exponents, coefficient) pairs, leading term first."""
        n = self.nvars
        return [(_unpack(k, n), self._terms[k]) for k in sorted(self._terms, reverse=True)]

    def coefficients(self) -> list[int | Fraction]:
        return [self._terms[k] for k in sorted(self._terms, reverse=True)]

    def leading_term(self) -> tuple[tuple[int, ...], int | Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        k = max(self._terms)
        return _unpack(k, self.nvars), self._terms[k]

    def leading_coefficient(self) -> int | Fraction:
        return self._terms[max(self._terms)] if self._terms else 0

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(self._terms) >> (_BITS * self.nvars)

    def degree_in(self, index: int) -> int:
        sh = _BITS * (self.nvars - 1 - index)
        return max(((k >> sh) & _MASK for k in self._terms), default=-1)

    def variables(self) -> set[int]:
        n = self.nvars
        present = 0
        for k in self._terms:
            present |= k
        return {i for i in range(n) if (present >> (_BITS * (n - 1 - i))) & _MASK}

    # -- ring operations ----------------------------------------------
    def _coerce(self, other) -> RatePoly:
        if isinstance(other, RatePoly):
            if other.symbols != self.symbols:
                raise ValueError("polynomials over different symbol sets")
            return other
        return RatePoly.constant(self.symbols, other)

    def __add__(self, other) -> RatePoly:
        other = self._coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = _norm(out.get(k, 0) + c)
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return RatePoly(self.symbols, out)

    __radd__ = __add__

    def __neg__(self) -> RatePoly:
        return RatePoly(self.symbols, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> RatePoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> RatePoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> RatePoly:
        if not isinstance(other, RatePoly):
            c = _as_rational(other)
            if not c:
                return RatePoly(self.symbols)
            return RatePoly(self.symbols, {k: _norm(v * c) for k, v in self._terms.items()})
        other = self._coerce(other)
        return RatePoly(self.symbols, _mul_terms(self._terms, other._terms))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> RatePoly:
        if e < 0:
            raise ValueError("negative power")
        result = RatePoly.constant(self.symbols, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, RatePoly):
            return self.symbols == other.symbols and self._terms == other._terms
        try:
            c = _as_rational(other)
        except TypeError:
            return NotImplemented
        return self._terms == ({0: c} if c else {})

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.symbols, frozenset(self._terms.items())))
        return self._hash

    def exact_div(self, other) -> RatePoly:
        """Quotient of an exact division; raises ``ArithmeticError`` otherwise."""
        other = self._coerce(other)
        q, r = _divmod(self, other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def divides(self, other: RatePoly) -> bool:
        """True when ``self`` divides ``other`` exactly."""
        if not self._terms:
            return not other._terms
        return not _divmod(other, self)[1]

    # -- evaluation and substitution -----------------------------------
    def evaluate(self, values: Mapping[str, object]) -> int | Fraction:
        n = self.nvars
        used = self.variables()
        point = []
        for i, name in enumerate(self.symbols):
            if i in used:
                if name not in values:
                    raise KeyError(f"no value for rate symbol {name!r}")
                point.append(_as_rational(values[name]))
            else:
                point.append(1)
        total: int | Fraction = 0
        powers: list[dict[int, int | Fraction]] = [{0: 1} for _ in range(n)]
        for k, c in self._terms.items():
            v = c
            for i in used:
                e = (k >> (_BITS * (n - 1 - i))) & _MASK
                if e:
                    cache = powers[i]
                    p = cache.get(e)
                    if p is None:
                        p = point[i] ** e
                        cache[e] = p
                    v = v * p
            total += v
        return _norm(total) if isinstance(total, Fraction) else total

    def substitute(self, name: str, value: RatePoly) -> RatePoly:
        """Replace the symbol ``name`` by the polynomial ``value``."""
        value = self._coerce(value)
        index = self.symbols.index(name)
        result = RatePoly(self.symbols)
        power = RatePoly.constant(self.symbols, 1)
        parts = _split(self, index)
        for d in range(max(parts, default=-1) + 1):
            if d in parts:
                result = result + parts[d] * power
            power = power * value
        return result

    # -- text ------------------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for i, (exps, c) in enumerate(self.terms()):
            mono = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(self.symbols, exps) if e
            )
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            if i == 0:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append((" - " if c < 0 else " + ") + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"RatePoly({str(self)!r})"


def _pack(exps: Iterable[int]) -> int:
    exps = tuple(exps)
    key = sum(exps)
    for e in exps:
        if e > _MASK:
            raise OverflowError("exponent too large")
        key = (key << _BITS) | e
    return key


def _unpack(key: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        out.append(key & _MASK)
        key >>= _BITS
    return tuple(reversed(out))


def _mul_terms(a: dict[int, int | Fraction], b: dict[int, int | Fraction]) -> dict[int, int | Fraction]:
    if len(a) < len(b):
        a, b = b, a
    out: dict[int, int | Fraction] = {}
    get = out.get
    for kb, cb in b.items():
        for ka, ca in a.items():
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: _norm(v) for k, v in out.items() if v}


def _monomial_divides(kd: int, km: int, n: int) -> bool:
    if km < kd:
        return False
    for i in range(n):
        sh = _BITS * i
        if ((km >> sh) & _MASK) < ((kd >> sh) & _MASK):
            return False
    return True


def _divmod(p: RatePoly, d: RatePoly) -> tuple[RatePoly, RatePoly]:
    """Division by leading terms; exact whenever ``d`` divides ``p``."""
    if not d._terms:
        raise ZeroDivisionError("division by the zero polynomial")
    n = p.nvars
    dk = max(d._terms)
    dc = d._terms[dk]
    rest = [(k, c) for k, c in d._terms.items() if k != dk]
    rem = dict(p._terms)
    heap = [-k for k in rem]
    heapq.heapify(heap)
    quot: dict[int, int | Fraction] = {}
    leftover: dict[int, int | Fraction] = {}
    while heap:
        k = -heapq.heappop(heap)
        c = rem.pop(k, 0)
        if not c:
            continue
        while heap and -heap[0] == k:
            heapq.heappop(heap)
        if not _monomial_divides(dk, k, n):
            leftover[k] = c
            continue
        qk = k - dk
        qc = _norm(Fraction(c) / dc) if (type(c) is Fraction or type(dc) is Fraction or c % dc) else c // dc
        quot[qk] = qc
        for rk, rc in rest:
            t = qk + rk
            v = _norm(rem.get(t, 0) - qc * rc)
            if v:
                if t not in rem:
                    heapq.heappush(heap, -t)
                rem[t] = v
            else:
                rem.pop(t, None)
    return RatePoly(p.symbols, quot), RatePoly(p.symbols, leftover)


# -- content, primitive part, gcd --------------------------------------------


@dataclass(frozen=True)
class PrimitiveSplit:
    """``p == (-1)**flipped * coefficient * monomial * primitive``."""

    coefficient: Fraction
    monomial: tuple[int, ...]
    primitive: RatePoly
    flipped: bool

    def content_poly(self) -> RatePoly:
        sign = -1 if self.flipped else 1
        return RatePoly.monomial(self.primitive.symbols, self.monomial, sign * self.coefficient)

    def reconstruct(self) -> RatePoly:
        return self.content_poly() * self.primitive


def numeric_content(coeffs: Iterable[int | Fraction]) -> Fraction:
    nums = []
    dens = []
    for c in coeffs:
        c = Fraction(c)
        nums.append(abs(c.numerator))
        dens.append(c.denominator)
    g = 0
    for x in nums:
        g = gcd(g, x)
    return Fraction(g, lcm(*dens)) if dens else Fraction(0)


def _min_exponents(p: RatePoly) -> tuple[int, ...]:
    n = p.nvars
    mins = [None] * n
    for k in p._terms:
        exps = _unpack(k, n)
        for i, e in enumerate(exps):
            if mins[i] is None or e < mins[i]:
                mins[i] = e
    return tuple(m or 0 for m in mins)


def primitive_part(p: RatePoly) -> PrimitiveSplit:
    """Split off the positive rational content and the largest monomial factor.

    The primitive part has integer coefficients with gcd 1, no monomial factor
    and a positive leading coefficient; ``flipped`` records a sign change.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no primitive part")
    content = numeric_content(p._terms.values())
    mono = _min_exponents(p)
    mk = _pack(mono)
    terms = {k - mk: _norm(Fraction(c) / content) for k, c in p._terms.items()}
    flipped = terms[max(terms)] < 0
    if flipped:
        terms = {k: -c for k, c in terms.items()}
    return PrimitiveSplit(content, mono, RatePoly(p.symbols, terms), flipped)


def _normalize(p: RatePoly) -> RatePoly:
    """Integer coefficients with gcd 1 and positive leading coefficient."""
    content = numeric_content(p._terms.values())
    if p.leading_coefficient() < 0:
        content = -content
    return RatePoly(p.symbols, {k: _norm(Fraction(c) / content) for k, c in p._terms.items()})


def _split(p: RatePoly, index: int) -> dict[int, RatePoly]:
    """View ``p`` as a polynomial in symbol ``index`` with polynomial coefficients."""
    n = p.nvars
    sh = _BITS * (n - 1 - index)
    dsh = _BITS * n
    parts: dict[int, dict[int, int | Fraction]] = {}
    for k, c in p._terms.items():
        e = (k >> sh) & _MASK
        parts.setdefault(e, {})[k - (e << sh) - (e << dsh)] = c
    return {e: RatePoly(p.symbols, t) for e, t in parts.items()}


def _shift(p: RatePoly, index: int, e: int) -> RatePoly:
    n = p.nvars
    step = (e << (_BITS * (n - 1 - index))) + (e << (_BITS * n))
    return RatePoly(p.symbols, {k + step: c for k, c in p._terms.items()})


def _content_in(p: RatePoly, index: int) -> RatePoly:
    g = None
    for part in _split(p, index).values():
        g = part if g is None else poly_gcd(g, part)
        if g.is_constant():
            break
    return _normalize(g)


class WorkBudgetExceeded(RuntimeError):
    """A gcd computation ran past the work limit set with :func:`work_limit`."""


_work = {"left": None}


class work_limit:
    """Context manager bounding the term products spent in pseudo-remainders."""

    def __init__(self, terms: int):
        self.terms = terms

    def __enter__(self):
        self._saved = _work["left"]
        _work["left"] = self.terms
        return self

    def __exit__(self, *exc):
        _work["left"] = self._saved
        return False


def _charge(n: int) -> None:
    if _work["left"] is not None:
        _work["left"] -= n
        if _work["left"] < 0:
            raise WorkBudgetExceeded("gcd work limit exceeded")


def _bits(p: RatePoly) -> int:
    return max((abs(c.numerator).bit_length() + c.denominator.bit_length() for c in p._terms.values()), default=0)


def _prem(a: RatePoly, b: RatePoly, index: int) -> RatePoly:
    db = b.degree_in(index)
    lcb = _split(b, index)[db]
    r = a
    while r and r.degree_in(index) >= db:
        dr = r.degree_in(index)
        lcr = _split(r, index)[dr]
        if _work["left"] is not None:
            words = 1 + max(_bits(r), _bits(b)) // 64
            _charge((len(lcb) * len(r) + len(lcr) * len(b)) * words)
        r = lcb * r - _shift(lcr * b, index, dr - db)
    return r


_PROBE_POINTS = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _univariate_image(p: RatePoly, index: int, shift: int) -> dict[int, int]:
    """Substitute integers for every symbol except ``index``."""
    n = p.nvars
    sh_v = _BITS * (n - 1 - index)
    out: dict[int, int] = {}
    for k, c in p._terms.items():
        val = c
        for i in range(n):
            if i == index:
                continue
            e = (k >> (_BITS * (n - 1 - i))) & _MASK
            if e:
                val *= _PROBE_POINTS[(i + shift) % len(_PROBE_POINTS)] ** e
        d = (k >> sh_v) & _MASK
        out[d] = out.get(d, 0) + val
    return {d: c for d, c in out.items() if c}


def _univariate_gcd_degree(a: dict[int, int], b: dict[int, int]) -> int:
    """Degree of gcd over the rationals of two dense univariate polynomials."""

    def dense(p):
        top = max(p)
        return [Fraction(p.get(i, 0)) for i in range(top + 1)]

    x, y = dense(a), dense(b)
    while y and any(y):
        while y and y[-1] == 0:
            y.pop()
        if not y:
            break
        while len(x) >= len(y) and any(x):
            f = x[-1] / y[-1]
            off = len(x) - len(y)
            for i, c in enumerate(y):
                x[off + i] -= f * c
            while x and x[-1] == 0:
                x.pop()
        x, y = y, x
    return len(x) - 1


def _image_degree_bound(a: RatePoly, b: RatePoly, index: int) -> int:
    """Upper bound on deg_index gcd(a, b) from an integer specialization.

    Leading coefficients must survive the specialization; then every common
    factor maps to a common factor of the same degree in ``index``.
    """
    da, db = a.degree_in(index), b.degree_in(index)
    for shift in range(len(_PROBE_POINTS)):
        ia = _univariate_image(a, index, shift)
        ib = _univariate_image(b, index, shift)
        if ia and ib and max(ia) == da and max(ib) == db:
            return _univariate_gcd_degree(ia, ib)
    return min(da, db)


def _gcd_primitive(a: RatePoly, b: RatePoly) -> RatePoly:
    one = RatePoly.constant(a.symbols, 1)
    if a.is_constant() or b.is_constant():
        return one
    common = sorted(a.variables() & b.variables())
    if not common:
        return one
    bounds = {v: _image_degree_bound(a, b, v) for v in common}
    if not any(bounds.values()):
        return one
    if len(a) <= len(b) and a.divides(b):
        return _normalize(a)
    if len(b) < len(a) and b.divides(a):
        return _normalize(b)
    # a symbol with bound zero, or missing from one side, is absent from the gcd
    for v in sorted(a.variables() | b.variables()):
        if bounds.get(v, 0) == 0:
            ca = _content_in(a, v) if v in a.variables() else a
            cb = _content_in(b, v) if v in b.variables() else b
            return poly_gcd(ca, cb)
    v = min(common, key=lambda u: (bounds[u], u))
    ca = _content_in(a, v)
    cb = _content_in(b, v)
    c = poly_gcd(ca, cb)
    a1 = a.exact_div(ca)
    b1 = b.exact_div(cb)
    if a1.degree_in(v) < b1.degree_in(v):
        a1, b1 = b1, a1
    while b1:
        if b1.degree_in(v) == 0:
            return _normalize(c)
        r = _prem(a1, b1, v)
        a1 = b1
        b1 = r.exact_div(_content_in(r, v)) if r else r
    g = a1.exact_div(_content_in(a1, v))
    return _normalize(c * g)


def poly_gcd(p: RatePoly, q: RatePoly) -> RatePoly:
    """A greatest common divisor, normalized to a primitive integer polynomial.

    Monomial factors shared by both arguments are kept; rational content is
    dropped.  ``poly_gcd(p, 0)`` is the normalized form of ``p``.
    """
    q = p._coerce(q)
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    if p.is_zero():
        return _normalize(q)
    if q.is_zero():
        return _normalize(p)
    sp = primitive_part(p)
    sq = primitive_part(q)
    mono = tuple(min(x, y) for x, y in zip(sp.monomial, sq.monomial))
    g = _gcd_primitive(sp.primitive, sq.primitive)
    return _normalize(g * RatePoly.monomial(p.symbols, mono))


# -- module-level operations ------------------------------------------------


def poly_arith(op: str, p: RatePoly, q: RatePoly | None = None) -> RatePoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "neg":
        return -p
    raise ValueError(f"unknown polynomial operation {op!r}")


def evaluate(p: RatePoly, values: Mapping[str, object]) -> int | Fraction:
    return p.evaluate(values)


def homogeneous_degree(p: RatePoly) -> int | str | None:
    """Common total degree of all terms, ``None`` if mixed, ``ANY_DEGREE`` for 0."""
    if p.is_zero():
        return ANY_DEGREE
    shift = _BITS * p.nvars
    degrees = {k >> shift for k in p._terms}
    return degrees.pop() if len(degrees) == 1 else None


def sign_summary(p: RatePoly) -> SignSummary:
    if p.is_zero():
        return SignSummary.ZERO
    signs = {c > 0 for c in p._terms.values()}
    if signs == {True}:
        return SignSummary.ALL_POSITIVE
    if signs == {False}:
        return SignSummary.ALL_NEGATIVE
    return SignSummary.MIXED


def joint_gcd(polys: Iterable[RatePoly]) -> RatePoly:
    g = None
    for p in polys:
        if p.is_zero():
            continue
        g = _normalize(p) if g is None else poly_gcd(g, p)
        if g == 1:
            return g
    if g is None:
        raise ValueError("gcd of zero polynomials is undefined")
    return g


# -- rate assignments ---------------------------------------------------------


class RateAssignment(Mapping[str, Fraction]):
    """Strictly positive exact values for rate symbols."""

    def __init__(self, values: Mapping[str, object]):
        clean: dict[str, Fraction] = {}
        for name, v in values.items():
            v = Fraction(_as_rational(v)) if not isinstance(v, str) else Fraction(v)
            if v <= 0:
                raise ValueError(f"rate {name!r} must be positive, got {v}")
            clean[name] = v
        self._values = clean

    @classmethod
    def parse(cls, text: str) -> RateAssignment:
        """Parse ``"a=1,b=3/2"``."""
        values = {}
        for item in filter(None, (s.strip() for s in text.split(","))):
            name, sep, value = item.partition("=")
            if not sep:
                raise ValueError(f"expected name=value, got {item!r}")
            name = name.strip()
            if name in values:
                raise ValueError(f"rate {name!r} given twice")
            try:
                values[name] = Fraction(value.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"bad rational {value!r} for {name!r}") from exc
        return cls(values)

    def require(self, symbols: Iterable[str]) -> RateAssignment:
        missing = [s for s in symbols if s not in self._values]
        if missing:
            raise ValueError(f"no value for rate symbol(s) {', '.join(missing)}")
        return self

    def scaled(self, factor) -> RateAssignment:
        return RateAssignment({k: v * factor for k, v in self._values.items()})

    def __getitem__(self, key: str) -> Fraction:
        return self._values[key]

    def __iter__(self) -> Iterator[str]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __repr__(self) -> str:
        return f"RateAssignment({self.to_text()!r})"

    def to_text(self) -> str:
        return ",".join(f"{k}={v}" for k, v in self._values.items())
