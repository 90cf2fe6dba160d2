"""Text format for nets, markings, and process expressions.

Net files look like::

    # people, jeeps, boats
    net boatjeep {
      species a [catalyst], b [catalyst], c, d, e;
      transition tau1: a + 2 c -> a + 2 d;
      transition tau2: b + d -> b + e;
    }

Markings are ``0`` or ``+``-separated items with an optional integer
multiplicity prefix (``b + 2 d``).  Process expressions use transition
names as atoms, ``id(MARKING)`` for identities, ``+`` for running side by
side and ``;`` for sequencing in reading order::

    (tau2 + id(b + d)) ; (id(b + e) + tau2)

Every diagnostic carries the line and column it refers to.  Declared
catalysts are verified at parse completion: a species marked
``[catalyst]`` that some transition creates or destroys is a semantic
error naming both.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CatnetsError, CompositionMismatch
from .nets import CatalystNet, Marking, PetriNet, Species, Transition
from .terms import Compose, Gen, Id, ProcessTerm, Tensor, infer_type

__all__ = [
    "Diagnostic",
    "DslError",
    "TermTypeError",
    "NetDocument",
    "parse_net",
    "parse_marking",
    "parse_term",
    "render_net",
]


@dataclass(frozen=True)
class Diagnostic:
    line: int
    column: int
    message: str

    def __str__(self):
        return f"{self.line}:{self.column}: {self.message}"

    def to_json(self) -> dict:
        return {"line": self.line, "column": self.column, "message": self.message}


class DslError(CatnetsError):
    def __init__(self, diagnostic: Diagnostic):
        self.diagnostic = diagnostic
        super().__init__(str(diagnostic))


class TermTypeError(DslError):
    """A process expression that parses but does not typecheck."""


@dataclass
class NetDocument:
    """Parse result: a named net, or the diagnostics that prevented one."""

    name: str | None = None
    cnet: CatalystNet | None = None
    diagnostics: list[Diagnostic] = field(default_factory=list)


_PUNCT = {"{", "}", ";", ":", ",", "+", "(", ")", "[", "]"}


@dataclass(frozen=True)
class _Token:
    kind: str  # IDENT | INT | punctuation | ARROW | EOF
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, col, i = 1, 1, 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] in "_'"):
                j += 1
            tokens.append(_Token("IDENT", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("INT", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if text.startswith("->", i):
            tokens.append(_Token("ARROW", "->", line, start_col))
            i += 2
            col += 2
            continue
        if ch in _PUNCT:
            tokens.append(_Token(ch, ch, line, start_col))
            i += 1
            col += 1
            continue
        raise DslError(Diagnostic(line, start_col, f"unexpected character {ch!r}"))
    tokens.append(_Token("EOF", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def cur(self) -> _Token:
        return self.tokens[self.pos]

    def at(self, kind: str) -> bool:
        return self.cur.kind == kind

    def eat(self, kind: str) -> _Token:
        tok = self.cur
        if tok.kind != kind:
            what = tok.text or "end of input"
            raise DslError(Diagnostic(tok.line, tok.column, f"expected {kind!r}, found {what!r}"))
        self.pos += 1
        return tok

    def try_eat(self, kind: str) -> _Token | None:
        if self.at(kind):
            return self.eat(kind)
        return None


def _parse_marking_items(p: _Parser) -> list[tuple[_Token, int]]:
    """List of ``(name token, multiplicity)``; ``0`` alone is the empty list."""
    if p.at("INT") and p.cur.text == "0" and p.tokens[p.pos + 1].kind != "IDENT":
        p.eat("INT")
        return []
    items = []
    while True:
        count = 1
        if p.at("INT"):
            count = int(p.eat("INT").text)
        name = p.eat("IDENT")
        items.append((name, count))
        if not p.try_eat("+"):
            return items


def parse_net(text: str) -> NetDocument:
    """Parse a net document; diagnostics instead of a net on any error."""
    doc = NetDocument()
    try:
        p = _Parser(_tokenize(text))
        kw = p.eat("IDENT")
        if kw.text != "net":
            raise DslError(Diagnostic(kw.line, kw.column, f"expected 'net', found {kw.text!r}"))
        doc.name = p.eat("IDENT").text
        p.eat("{")

        kw = p.eat("IDENT")
        if kw.text != "species":
            raise DslError(Diagnostic(kw.line, kw.column, f"expected 'species', found {kw.text!r}"))
        species_tokens: list[tuple[_Token, bool]] = []
        while True:
            name = p.eat("IDENT")
            is_cat = False
            if p.try_eat("["):
                mark = p.eat("IDENT")
                if mark.text != "catalyst":
                    raise DslError(
                        Diagnostic(mark.line, mark.column, f"expected 'catalyst', found {mark.text!r}")
                    )
                p.eat("]")
                is_cat = True
            species_tokens.append((name, is_cat))
            if not p.try_eat(","):
                break
        p.eat(";")

        transitions: list[tuple[_Token, list, list]] = []
        while not p.at("}"):
            kw = p.eat("IDENT")
            if kw.text != "transition":
                raise DslError(
                    Diagnostic(kw.line, kw.column, f"expected 'transition', found {kw.text!r}")
                )
            tname = p.eat("IDENT")
            p.eat(":")
            src = _parse_marking_items(p)
            p.eat("ARROW")
            tgt = _parse_marking_items(p)
            p.eat(";")
            transitions.append((tname, src, tgt))
        p.eat("}")
        p.eat("EOF")
    except DslError as e:
        doc.diagnostics.append(e.diagnostic)
        return doc

    # name resolution and semantic checks, accumulating diagnostics
    index: dict[str, int] = {}
    for tok, _ in species_tokens:
        if tok.text in index:
            doc.diagnostics.append(
                Diagnostic(tok.line, tok.column, f"duplicate species {tok.text!r}")
            )
        else:
            index[tok.text] = len(index)

    def resolve(items) -> Marking:
        counts: dict[int, int] = {}
        for tok, n in items:
            sid = index.get(tok.text)
            if sid is None:
                doc.diagnostics.append(
                    Diagnostic(tok.line, tok.column, f"unknown species {tok.text!r}")
                )
                continue
            counts[sid] = counts.get(sid, 0) + n
        return Marking(counts)

    tnames: dict[str, _Token] = {}
    specs = []
    for tok, src, tgt in transitions:
        if tok.text in tnames:
            doc.diagnostics.append(
                Diagnostic(tok.line, tok.column, f"duplicate transition {tok.text!r}")
            )
        tnames[tok.text] = tok
        specs.append((tok.text, resolve(src), resolve(tgt)))

    if doc.diagnostics:
        return doc

    net = PetriNet(
        tuple(Species(i, tok.text) for i, (tok, _) in enumerate(species_tokens)),
        tuple(Transition(i, name, src, tgt) for i, (name, src, tgt) in enumerate(specs)),
    )

    catalysts = set()
    for tok, is_cat in species_tokens:
        if not is_cat:
            continue
        sid = index[tok.text]
        offender = next(
            (t for t in net.transitions if t.src.get(sid) != t.tgt.get(sid)), None
        )
        if offender is not None:
            doc.diagnostics.append(
                Diagnostic(
                    tok.line,
                    tok.column,
                    f"declared catalyst {tok.text!r} is not conserved by transition {offender.name!r}",
                )
            )
        else:
            catalysts.add(sid)

    if doc.diagnostics:
        return doc
    doc.cnet = CatalystNet(net, frozenset(catalysts))
    return doc


def _resolve_marking(p: _Parser, net: PetriNet) -> Marking:
    counts: dict[int, int] = {}
    for tok, n in _parse_marking_items(p):
        try:
            sid = net.species_id(tok.text)
        except KeyError:
            raise DslError(Diagnostic(tok.line, tok.column, f"unknown species {tok.text!r}"))
        counts[sid] = counts.get(sid, 0) + n
    return Marking(counts)


def parse_marking(text: str, net: PetriNet) -> Marking:
    p = _Parser(_tokenize(text))
    m = _resolve_marking(p, net)
    p.eat("EOF")
    return m


def parse_term(text: str, cnet: CatalystNet) -> ProcessTerm:
    """Parse a process expression over a net.

    Type errors are caught as they arise: a mismatched sequencing reports
    the position of the offending ``;``.
    """
    net = cnet.net if isinstance(cnet, CatalystNet) else cnet
    p = _Parser(_tokenize(text))
    term = _parse_seq(p, net)
    p.eat("EOF")
    return term


def _parse_seq(p: _Parser, net: PetriNet) -> ProcessTerm:
    term = _parse_par(p, net)
    while p.at(";"):
        semi = p.eat(";")
        rhs = _parse_par(p, net)
        try:
            lhs_cod = infer_type(term).cod
            rhs_dom = infer_type(rhs).dom
            if lhs_cod != rhs_dom:
                raise CompositionMismatch(lhs_cod, rhs_dom)
        except CompositionMismatch as e:
            raise TermTypeError(
                Diagnostic(
                    semi.line,
                    semi.column,
                    f"cannot sequence: left side ends at {e.cod.show(net)} "
                    f"but right side starts at {e.dom.show(net)}",
                )
            )
        term = Compose(term, rhs)
    return term


def _parse_par(p: _Parser, net: PetriNet) -> ProcessTerm:
    term = _parse_atom(p, net)
    while p.try_eat("+"):
        term = Tensor(term, _parse_atom(p, net))
    return term


def _parse_atom(p: _Parser, net: PetriNet) -> ProcessTerm:
    if p.try_eat("("):
        term = _parse_seq(p, net)
        p.eat(")")
        return term
    tok = p.eat("IDENT")
    if tok.text == "id" and p.at("("):
        p.eat("(")
        m = _resolve_marking(p, net)
        p.eat(")")
        return Id(m)
    try:
        return Gen(net.transition(tok.text))
    except KeyError:
        raise DslError(Diagnostic(tok.line, tok.column, f"unknown transition {tok.text!r}"))


def render_net(cnet: CatalystNet, name: str = "net0") -> str:
    """Canonical text for a net; parsing it back recovers the net exactly."""
    net = cnet.net
    items = []
    for sp in net.species:
        items.append(f"{sp.name} [catalyst]" if sp.id in cnet.catalysts else sp.name)
    lines = [f"net {name} {{", f"  species {', '.join(items)};"]
    for t in net.transitions:
        lines.append(f"  transition {t.name}: {t.src.show(net)} -> {t.tgt.show(net)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
