"""RDF statement model plus N-Triples and a Turtle subset.

N-Triples is supported in full (minus blank nodes, which nothing here
produces). The Turtle reader handles ``@prefix``, the ``a`` keyword,
``;``/``,`` predicate-object lists, IRIs, prefixed names, and string
(with ``^^``/``@lang``), numeric and boolean literals. No collections,
no blank-node property lists.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = [
    "Iri",
    "Literal",
    "Term",
    "Triple",
    "RdfParseError",
    "RDF_TYPE",
    "BOOKMARK_CLASS",
    "parse_ntriples",
    "triple_to_ntriples",
    "parse_turtle",
    "serialize_turtle",
]

RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
BOOKMARK_CLASS = "https://www.w3.org/2002/01/bookmark#Bookmark"
XSD = "http://www.w3.org/2001/XMLSchema#"


class RdfParseError(ValueError):
    pass


@dataclass(frozen=True)
class Iri:
    value: str

    def __post_init__(self):
        if not self.value:
            raise ValueError("IRI must be non-empty")


@dataclass(frozen=True)
class Literal:
    lexical: str
    datatype: str | None = None
    language: str | None = None

    def __post_init__(self):
        if self.datatype and self.language:
            raise ValueError("a literal has at most one of datatype/language")


Term = Iri | Literal


@dataclass(frozen=True)
class Triple:
    subject: Iri
    predicate: Iri
    object: Term


def _escape(text: str) -> str:
    out = []
    for ch in text:
        if ch == "\\":
            out.append("\\\\")
        elif ch == '"':
            out.append('\\"')
        elif ch == "\n":
            out.append("\\n")
        elif ch == "\r":
            out.append("\\r")
        elif ch == "\t":
            out.append("\\t")
        elif ch < " ":
            out.append("\\u%04X" % ord(ch))
        else:
            out.append(ch)
    return "".join(out)


_UNESCAPE_RE = re.compile(r"\\(?:u([0-9A-Fa-f]{4})|U([0-9A-Fa-f]{8})|(.))")
_UNESCAPE_MAP = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}


def _unescape(text: str) -> str:
    def repl(m):
        if m.group(1):
            return chr(int(m.group(1), 16))
        if m.group(2):
            return chr(int(m.group(2), 16))
        ch = m.group(3)
        if ch not in _UNESCAPE_MAP:
            raise RdfParseError(f"bad escape \\{ch}")
        return _UNESCAPE_MAP[ch]

    return _UNESCAPE_RE.sub(repl, text)


def _term_to_nt(term: Term) -> str:
    if isinstance(term, Iri):
        return f"<{term.value}>"
    s = f'"{_escape(term.lexical)}"'
    if term.language:
        return f"{s}@{term.language}"
    if term.datatype:
        return f"{s}^^<{term.datatype}>"
    return s


def triple_to_ntriples(t: Triple) -> str:
    return f"{_term_to_nt(t.subject)} {_term_to_nt(t.predicate)} {_term_to_nt(t.object)} ."


class _Scanner:
    """Shared tokenizer-ish cursor for the two text formats."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def eof(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def skip_ws(self):
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "#":
                nl = self.text.find("\n", self.pos)
                self.pos = len(self.text) if nl < 0 else nl
            elif ch.isspace():
                self.pos += 1
            else:
                break

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            raise RdfParseError(f"expected {ch!r} at offset {self.pos}")
        self.pos += 1

    def match(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def take_re(self, pattern: re.Pattern) -> re.Match:
        self.skip_ws()
        m = pattern.match(self.text, self.pos)
        if not m:
            raise RdfParseError(f"syntax error at offset {self.pos}: {self.text[self.pos:self.pos+30]!r}")
        self.pos = m.end()
        return m

    def iri(self) -> Iri:
        m = self.take_re(re.compile(r"<([^<>\s]*)>"))
        return Iri(_unescape(m.group(1)))

    def string(self) -> str:
        self.expect('"')
        out = []
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "\\":
                out.append(self.text[self.pos : self.pos + 2])
                self.pos += 2
            elif ch == '"':
                self.pos += 1
                return _unescape("".join(out))
            else:
                out.append(ch)
                self.pos += 1
        raise RdfParseError("unterminated string literal")

    def literal_suffix(self, lexical: str) -> Literal:
        if self.pos < len(self.text) and self.text[self.pos] == "@":
            m = self.take_re(re.compile(r"@([A-Za-z]+(?:-[A-Za-z0-9]+)*)"))
            return Literal(lexical, language=m.group(1))
        if self.text[self.pos : self.pos + 2] == "^^":
            self.pos += 2
            return Literal(lexical, datatype=self._datatype())
        return Literal(lexical)

    def _datatype(self) -> str:
        raise NotImplementedError


def parse_ntriples(text: str) -> list[Triple]:
    triples = []
    # split on \n only: splitlines() would also break on FF/VT/U+2028
    for lineno, line in enumerate(text.split("\n"), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        sc = _Scanner(line)
        sc._datatype = lambda sc=sc: sc.iri().value
        try:
            s = sc.iri()
            p = sc.iri()
            if sc.peek() == "<":
                o: Term = sc.iri()
            else:
                o = sc.literal_suffix(sc.string())
            sc.expect(".")
            if not sc.eof():
                raise RdfParseError("trailing content")
        except RdfParseError as exc:
            raise RdfParseError(f"line {lineno}: {exc}")
        triples.append(Triple(s, p, o))
    return triples


_PNAME_RE = re.compile(r"([A-Za-z][A-Za-z0-9_-]*)?:([A-Za-z0-9][A-Za-z0-9_.-]*)")
_NUMBER_RE = re.compile(r"[+-]?(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?")
_KEYWORD_RE = re.compile(r"[A-Za-z]+")


class _TurtleParser:
    def __init__(self, text: str):
        self.sc = _Scanner(text)
        self.sc._datatype = self._datatype
        self.prefixes: dict[str, str] = {}
        self.triples: list[Triple] = []

    def _datatype(self) -> str:
        if self.sc.text[self.sc.pos : self.sc.pos + 1] == "<":
            return self.sc.iri().value
        m = self.sc.take_re(_PNAME_RE)
        return self._expand(m.group(1) or "", m.group(2))

    def _expand(self, prefix: str, local: str) -> str:
        if prefix not in self.prefixes:
            raise RdfParseError(f"undeclared prefix {prefix!r}")
        return self.prefixes[prefix] + local

    def _resource(self) -> Iri:
        if self.sc.peek() == "<":
            return self.sc.iri()
        m = self.sc.take_re(_PNAME_RE)
        return Iri(self._expand(m.group(1) or "", m.group(2)))

    def _object(self) -> Term:
        ch = self.sc.peek()
        if ch == "<":
            return self.sc.iri()
        if ch == '"':
            lexical = self.sc.string()
            return self.sc.literal_suffix(lexical)
        if ch.isdigit() or ch in "+-.":
            m = self.sc.take_re(_NUMBER_RE)
            lex = m.group(0)
            dt = XSD + ("decimal" if "." in lex and "e" not in lex.lower() else "double" if "e" in lex.lower() else "integer")
            return Literal(lex, datatype=dt)
        # boolean keyword or prefixed name
        save = self.sc.pos
        m = _KEYWORD_RE.match(self.sc.text, self.sc.pos)
        if m and m.group(0) in ("true", "false") and not self.sc.text[m.end() : m.end() + 1] == ":":
            self.sc.pos = m.end()
            return Literal(m.group(0), datatype=XSD + "boolean")
        self.sc.pos = save
        return self._resource()

    def parse(self) -> list[Triple]:
        sc = self.sc
        while not sc.eof():
            if sc.peek() == "@":
                m = sc.take_re(re.compile(r"@prefix\s+([A-Za-z][A-Za-z0-9_-]*)?:"))
                iri = sc.iri()
                self.prefixes[m.group(1) or ""] = iri.value
                sc.expect(".")
                continue
            subject = self._resource()
            while True:
                if sc.peek() == "a" and re.match(r"a[\s<]", sc.text[sc.pos : sc.pos + 2] or "a "):
                    sc.pos += 1
                    predicate = Iri(RDF_TYPE)
                else:
                    predicate = self._resource()
                while True:
                    obj = self._object()
                    self.triples.append(Triple(subject, predicate, obj))
                    if not sc.match(","):
                        break
                if sc.match(";"):
                    if sc.peek() == ".":  # tolerate trailing semicolon
                        sc.expect(".")
                        break
                    continue
                sc.expect(".")
                break
        return self.triples


def parse_turtle(text: str) -> list[Triple]:
    return _TurtleParser(text).parse()


def _turtle_term(term: Term, prefixes: dict[str, str]) -> str:
    if isinstance(term, Iri):
        for pfx, ns in prefixes.items():
            if term.value.startswith(ns) and term.value != ns:
                local = term.value[len(ns):]
                if re.fullmatch(r"[A-Za-z0-9][A-Za-z0-9_.-]*", local):
                    return f"{pfx}:{local}"
        return f"<{term.value}>"
    if term.datatype == XSD + "boolean" and term.lexical in ("true", "false"):
        return term.lexical
    if term.datatype == XSD + "integer" and re.fullmatch(r"[+-]?\d+", term.lexical):
        return term.lexical
    return _term_to_nt(term)


def serialize_turtle(triples: list[Triple], prefixes: dict[str, str] | None = None) -> str:
    """Group triples by subject; one predicate-object line per triple."""
    prefixes = dict(prefixes or {})
    lines = [f"@prefix {p}: <{ns}> ." for p, ns in prefixes.items()]
    if lines:
        lines.append("")
    by_subject: dict[Iri, list[Triple]] = {}
    for t in triples:
        by_subject.setdefault(t.subject, []).append(t)
    for subject, group in by_subject.items():
        lines.append(f"<{subject.value}>")
        for i, t in enumerate(group):
            pred = "a" if t.predicate.value == RDF_TYPE else _turtle_term(t.predicate, prefixes)
            end = " ." if i == len(group) - 1 else " ;"
            lines.append(f"    {pred} {_turtle_term(t.object, prefixes)}{end}")
        lines.append("")
    return "\n".join(lines).rstrip() + "\n"
