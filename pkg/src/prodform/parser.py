"""Reader and writer for the ``.crn`` reaction network text format.

One reaction per statement::

    # comment
    S1 <-> S2 [alpha, beta]
    2 S2 -> 2 S1 [lambda2]; S1 + S2 -> 0 [k]

Statements end at ``;`` or a newline.  ``->`` takes one rate symbol and
``<->`` takes two (forward first).  ``0`` is the empty complex.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .network import Reaction, ReactionNetwork

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<sep>[;\n])
  | (?P<arrow><->|->)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[+\[\],])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class ParseDiagnostic:
    line: int
    column: int
    message: str
    severity: str = "error"

    def format(self, origin: str = "<input>") -> str:
        return f"{origin}:{self.line}:{self.column}: {self.severity}: {self.message}"


class ParseError(ValueError):
    def __init__(self, diagnostics: list[ParseDiagnostic], origin: str = "<input>"):
        self.diagnostics = diagnostics
        self.origin = origin
        super().__init__("\n".join(d.format(origin) for d in diagnostics))


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str, diags: list[ParseDiagnostic]) -> list[_Tok]:
    toks = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            diags.append(ParseDiagnostic(line, col, f"unexpected character {text[pos]!r}"))
            toks.append(_Tok("bad", text[pos], line, col))
            pos += 1
            continue
        kind = m.lastgroup
        if kind == "sep":
            toks.append(_Tok("sep", m.group(), line, col))
            if m.group() == "\n":
                line, line_start = line + 1, m.end()
        elif kind not in ("ws", "comment"):
            toks.append(_Tok(kind if kind != "punct" else m.group(), m.group(), line, col))
        pos = m.end()
    toks.append(_Tok("eof", "", line, len(text) - line_start + 1))
    return toks


class _Syntax(Exception):
    def __init__(self, tok: _Tok, message: str):
        self.tok = tok
        self.message = message


@dataclass
class _Statement:
    lhs: list[tuple[int, str, _Tok]]
    arrow: _Tok
    rhs: list[tuple[int, str, _Tok]]
    rates: list[_Tok]


class _Parser:
    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str, what: str) -> _Tok:
        tok = self.peek()
        if tok.kind != kind:
            found = "end of statement" if tok.kind in ("sep", "eof") else repr(tok.text)
            raise _Syntax(tok, f"expected {what}, found {found}")
        self.i += 1
        return tok

    def skip_statement(self):
        while self.peek().kind not in ("sep", "eof"):
            self.i += 1

    def complex(self) -> list[tuple[int, str, _Tok]]:
        tok = self.peek()
        if tok.kind == "int" and tok.text.strip("0") == "" and self.toks[self.i + 1].kind != "ident":
            self.i += 1
            return []
        terms = [self.term()]
        while self.peek().kind == "+":
            self.i += 1
            terms.append(self.term())
        return terms

    def term(self) -> tuple[int, str, _Tok]:
        coef = 1
        if self.peek().kind == "int":
            tok = self.take("int", "coefficient")
            coef = int(tok.text)
            if coef == 0:
                raise _Syntax(tok, "coefficient must be positive")
        name = self.take("ident", "species name")
        return coef, name.text, name

    def statement(self) -> _Statement:
        lhs = self.complex()
        arrow = self.take("arrow", "'->' or '<->'")
        rhs = self.complex()
        self.take("[", "'[' before rate symbols")
        rates = [self.take("ident", "rate symbol")]
        while self.peek().kind == ",":
            self.i += 1
            rates.append(self.take("ident", "rate symbol"))
        self.take("]", "']' after rate symbols")
        end = self.peek()
        if end.kind not in ("sep", "eof"):
            raise _Syntax(end, f"expected end of statement, found {end.text!r}")
        return _Statement(lhs, arrow, rhs, rates)


def parse_network(text: str, origin: str = "<input>") -> ReactionNetwork:
    """Parse DSL text into a network; raises ``ParseError`` with located diagnostics."""
    diags: list[ParseDiagnostic] = []
    toks = _tokenize(text, diags)
    p = _Parser(toks)
    statements: list[_Statement] = []
    while p.peek().kind != "eof":
        if p.peek().kind == "sep":
            p.i += 1
            continue
        try:
            statements.append(p.statement())
        except _Syntax as exc:
            if exc.tok.kind != "bad":
                diags.append(ParseDiagnostic(exc.tok.line, exc.tok.col, exc.message))
            p.skip_statement()

    species: dict[str, None] = {}
    for st in statements:
        for _, name, _tok in st.lhs + st.rhs:
            species.setdefault(name)
    names = list(species)
    index = {s: i for i, s in enumerate(names)}

    def vec(terms):
        v = [0] * len(names)
        for coef, name, _tok in terms:
            v[index[name]] += coef
        return tuple(v)

    reactions: list[Reaction] = []
    rate_owner: dict[str, _Tok] = {}
    seen_pairs: dict[tuple, _Tok] = {}
    for st in statements:
        a, b = vec(st.lhs), vec(st.rhs)
        want = 2 if st.arrow.text == "<->" else 1
        if len(st.rates) != want:
            diags.append(ParseDiagnostic(
                st.arrow.line, st.arrow.col,
                f"'{st.arrow.text}' needs exactly {want} rate symbol{'s' if want > 1 else ''}, got {len(st.rates)}",
            ))
            continue
        if a == b:
            diags.append(ParseDiagnostic(st.arrow.line, st.arrow.col, "reactant equals product"))
            continue
        pairs = [(a, b, st.rates[0])]
        if want == 2:
            pairs.append((b, a, st.rates[1]))
        for src, dst, rate_tok in pairs:
            bad = False
            if rate_tok.text in rate_owner:
                first = rate_owner[rate_tok.text]
                diags.append(ParseDiagnostic(
                    rate_tok.line, rate_tok.col,
                    f"rate symbol {rate_tok.text!r} already used at line {first.line}",
                ))
                bad = True
            if (src, dst) in seen_pairs:
                first = seen_pairs[(src, dst)]
                diags.append(ParseDiagnostic(
                    st.arrow.line, st.arrow.col,
                    f"duplicate reaction (first given at line {first.line})",
                ))
                bad = True
            if bad:
                continue
            rate_owner[rate_tok.text] = rate_tok
            seen_pairs[(src, dst)] = st.arrow
            reactions.append(Reaction(src, dst, rate_tok.text))

    if diags:
        diags.sort(key=lambda d: (d.line, d.column))
        raise ParseError(diags, origin)
    return ReactionNetwork(tuple(names), tuple(reactions), name=origin)


def render_network(net: ReactionNetwork) -> str:
    """Canonical text: one one-way reaction per line, no trailing newline."""
    lines = [
        f"{net.format_complex(r.reactant)} -> {net.format_complex(r.product)} [{r.rate}]"
        for r in net.reactions
    ]
    return "\n".join(lines)


def read_network(path: str) -> ReactionNetwork:
    with open(path, encoding="utf-8") as fh:
        return parse_network(fh.read(), origin=path)
