"""CSS selector subset for addressing elements inside XML-ish trees.

Supported grammar: compound selectors joined by descendant (whitespace)
or child (``>``) combinators; a compound is an optional type name or
``*`` plus any of ``#id``, ``.class``, ``[attr]``, ``[attr=value]`` and
``:nth-child(k)`` (one-based, counting element children only).
Anything else is a parse error.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .xmlish import XmlNode

__all__ = ["Compound", "Selector", "SelectorParseError", "parse_selector", "select_first", "select_all"]


class SelectorParseError(ValueError):
    def __init__(self, text: str, pos: int, reason: str):
        super().__init__(f"bad selector at offset {pos}: {reason} in {text!r}")
        self.pos = pos
        self.reason = reason


@dataclass(frozen=True)
class Compound:
    type_name: str | None = None  # None means no type constraint; "*" never stored
    id_name: str | None = None
    classes: tuple[str, ...] = ()
    attrs: tuple[tuple[str, str | None], ...] = ()  # value None = presence check
    nth_child: int | None = None


@dataclass(frozen=True)
class Selector:
    # combinator preceding compound i is combinators[i-1]: " " or ">"
    compounds: tuple[Compound, ...]
    combinators: tuple[str, ...]


_IDENT = r"[A-Za-z_][A-Za-z0-9_-]*|\*"
_NAME = r"[A-Za-z_][A-Za-z0-9_-]*"

_token_res = {
    "type": re.compile(_IDENT),
    "id": re.compile(r"#(" + _NAME + r")"),
    "class": re.compile(r"\.(" + _NAME + r")"),
    "attr": re.compile(r"\[\s*(" + _NAME + r")\s*(?:=\s*(?:\"([^\"]*)\"|'([^']*)'|([^\]\s]+)))?\s*\]"),
    "nth": re.compile(r":nth-child\(\s*([0-9]+)\s*\)"),
}


def parse_selector(text: str) -> Selector:
    pos = 0
    n = len(text)
    compounds: list[Compound] = []
    combinators: list[str] = []
    pending = None  # combinator before the next compound

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    skip_ws()
    if pos >= n:
        raise SelectorParseError(text, pos, "empty selector")
    while pos < n:
        # one compound
        type_name = None
        id_name = None
        classes: list[str] = []
        attrs: list[tuple[str, str | None]] = []
        nth = None
        matched_any = False
        m = _token_res["type"].match(text, pos)
        if m:
            matched_any = True
            if m.group(0) != "*":
                type_name = m.group(0)
            pos = m.end()
        while pos < n and text[pos] in "#.[:":
            ch = text[pos]
            if ch == "#":
                m = _token_res["id"].match(text, pos)
                if not m:
                    raise SelectorParseError(text, pos, "bad id")
                id_name = m.group(1)
            elif ch == ".":
                m = _token_res["class"].match(text, pos)
                if not m:
                    raise SelectorParseError(text, pos, "bad class")
                classes.append(m.group(1))
            elif ch == "[":
                m = _token_res["attr"].match(text, pos)
                if not m:
                    raise SelectorParseError(text, pos, "bad attribute test")
                value = next((g for g in m.groups()[1:] if g is not None), None)
                attrs.append((m.group(1), value))
            else:
                m = _token_res["nth"].match(text, pos)
                if not m:
                    raise SelectorParseError(text, pos, "unsupported pseudo-class")
                k = int(m.group(1))
                if k < 1:
                    raise SelectorParseError(text, pos, "nth-child is one-based")
                nth = k
            matched_any = True
            pos = m.end()
        if not matched_any:
            raise SelectorParseError(text, pos, "expected a compound selector")
        compounds.append(Compound(type_name, id_name, tuple(classes), tuple(attrs), nth))
        if pending is not None:
            combinators.append(pending)
            pending = None
        # combinator or end
        ws = False
        while pos < n and text[pos].isspace():
            ws = True
            pos += 1
        if pos >= n:
            break
        if text[pos] == ">":
            pending = ">"
            pos += 1
            skip_ws()
            if pos >= n:
                raise SelectorParseError(text, pos, "dangling combinator")
        elif ws:
            pending = " "
        else:
            raise SelectorParseError(text, pos, "unexpected character")
    return Selector(tuple(compounds), tuple(combinators))


def _matches_compound(node: XmlNode, comp: Compound, position: int | None, html_mode: bool) -> bool:
    if comp.type_name is not None:
        if html_mode:
            if node.name.lower() != comp.type_name.lower():
                return False
        elif node.name != comp.type_name:
            return False
    if comp.id_name is not None and node.attr("id") != comp.id_name:
        return False
    if comp.classes:
        tokens = (node.attr("class") or "").split()
        if any(c not in tokens for c in comp.classes):
            return False
    for key, value in comp.attrs:
        actual = node.attr(key)
        if actual is None:
            return False
        if value is not None and actual != value:
            return False
    if comp.nth_child is not None:
        # a root element has no sibling position; nth-child never matches it
        if position is None or position != comp.nth_child:
            return False
    return True


def _walk(node: XmlNode, position: int | None, chain):
    """Depth-first traversal yielding (node, chain) where chain is the list
    of (ancestor, its element position) from root down to the node itself."""
    chain = chain + [(node, position)]
    yield node, chain
    pos = 0
    for child in node.children:
        if isinstance(child, XmlNode):
            pos += 1
            yield from _walk(child, pos, chain)


def _matches_at(chain, ci: int, ni: int, sel: Selector, html_mode: bool) -> bool:
    """Does compound ci of sel match chain[ni], with the preceding compounds
    matching ancestors per the combinators?"""
    node, position = chain[ni]
    if not _matches_compound(node, sel.compounds[ci], position, html_mode):
        return False
    if ci == 0:
        return True
    comb = sel.combinators[ci - 1]
    if comb == ">":
        return ni > 0 and _matches_at(chain, ci - 1, ni - 1, sel, html_mode)
    return any(_matches_at(chain, ci - 1, ai, sel, html_mode) for ai in range(ni))


def select_all(root: XmlNode, sel: Selector, html_mode: bool = False) -> list[XmlNode]:
    last = len(sel.compounds) - 1
    found = []
    for node, chain in _walk(root, None, []):
        if _matches_at(chain, last, len(chain) - 1, sel, html_mode):
            found.append(node)
    return found


def select_first(root: XmlNode, sel: Selector, html_mode: bool = False) -> XmlNode | None:
    """First match in document order, or None."""
    last = len(sel.compounds) - 1
    for node, chain in _walk(root, None, []):
        if _matches_at(chain, last, len(chain) - 1, sel, html_mode):
            return node
    return None
