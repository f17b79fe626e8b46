"""Tree model for XML-ish content (XML, HTML, SVG, slide XML).

Two parse modes: ``xml`` requires well-formed input (backed by expat via
ElementTree), ``html`` is lenient: unclosed tags, stray end tags and
missing ``html``/``body`` wrappers are tolerated, and void elements never
take children.
"""

from __future__ import annotations

import html as _htmlmod
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from html.parser import HTMLParser

__all__ = ["XmlNode", "XmlParseError", "parse_xml", "parse_html", "serialize_node"]

VOID_ELEMENTS = frozenset(
    "area base br col embed hr img input link meta param source track wbr".split()
)


class XmlParseError(ValueError):
    pass


@dataclass(frozen=True)
class XmlNode:
    name: str
    attributes: tuple[tuple[str, str], ...] = ()
    children: tuple["XmlNode | str", ...] = ()
    source_span: tuple[int, int] | None = None

    def __post_init__(self):
        object.__setattr__(self, "attributes", tuple(self.attributes))
        object.__setattr__(self, "children", tuple(self.children))

    def attr(self, key: str) -> str | None:
        for k, v in self.attributes:
            if k == key:
                return v
        return None

    def element_children(self) -> list["XmlNode"]:
        return [c for c in self.children if isinstance(c, XmlNode)]

    def text(self) -> str:
        """Concatenated text content of the subtree."""
        parts = []
        for c in self.children:
            parts.append(c if isinstance(c, str) else c.text())
        return "".join(parts)

    def iter(self):
        yield self
        for c in self.children:
            if isinstance(c, XmlNode):
                yield from c.iter()


_NS_RE = re.compile(r"\{[^}]*\}")


def _strip_ns(tag: str) -> str:
    # keep the local name; namespace handling stays out of the tree model
    return _NS_RE.sub("", tag)


def _from_etree(elem: ET.Element) -> XmlNode:
    children: list[XmlNode | str] = []
    if elem.text:
        children.append(elem.text)
    for child in elem:
        children.append(_from_etree(child))
        if child.tail:
            children.append(child.tail)
    attrs = tuple((_strip_ns(k), v) for k, v in elem.attrib.items())
    return XmlNode(_strip_ns(elem.tag), attrs, tuple(children))


def parse_xml(data: bytes | str) -> XmlNode:
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise XmlParseError(f"not well-formed XML: {exc}")
    return _from_etree(root)


class _TreeBuilder(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.roots: list[XmlNode | str] = []
        # stack of (name, attrs, children)
        self.stack: list[tuple[str, tuple, list]] = []

    def _append(self, node):
        if self.stack:
            self.stack[-1][2].append(node)
        else:
            self.roots.append(node)

    def handle_starttag(self, tag, attrs):
        tag = tag.lower()
        attr_pairs = []
        seen = set()
        for k, v in attrs:
            if k in seen:
                continue
            seen.add(k)
            attr_pairs.append((k, v if v is not None else ""))
        if tag in VOID_ELEMENTS:
            self._append(XmlNode(tag, tuple(attr_pairs)))
        else:
            self.stack.append((tag, tuple(attr_pairs), []))

    def handle_startendtag(self, tag, attrs):
        tag = tag.lower()
        self._append(XmlNode(tag, tuple((k, v or "") for k, v in attrs)))

    def handle_endtag(self, tag):
        tag = tag.lower()
        if tag in VOID_ELEMENTS:
            return
        open_names = [name for name, _, _ in self.stack]
        if tag not in open_names:
            return  # stray end tag
        while self.stack:
            name, attrs, children = self.stack.pop()
            self._append(XmlNode(name, attrs, tuple(children)))
            if name == tag:
                break

    def handle_data(self, data):
        if data:
            self._append(data)

    def finish(self) -> list[XmlNode | str]:
        while self.stack:  # auto-close anything left open
            name, attrs, children = self.stack.pop()
            self._append(XmlNode(name, attrs, tuple(children)))
        return self.roots


def parse_html(data: bytes | str) -> XmlNode:
    """Lenient HTML parse; always yields a single ``html`` root with a body."""
    if isinstance(data, bytes):
        data = data.decode("utf-8", errors="replace")
    builder = _TreeBuilder()
    builder.feed(data)
    builder.close()
    roots = builder.finish()
    elements = [r for r in roots if isinstance(r, XmlNode)]
    if len(elements) == 1 and elements[0].name == "html":
        html_root = elements[0]
        if any(c.name == "body" for c in html_root.element_children()):
            return html_root
        head = [c for c in html_root.element_children() if c.name == "head"]
        rest = [
            c
            for c in html_root.children
            if not (isinstance(c, XmlNode) and c.name == "head")
        ]
        body = XmlNode("body", (), tuple(rest))
        return XmlNode("html", html_root.attributes, tuple(head) + (body,))
    # missing html/body are implied
    content = [r for r in roots if isinstance(r, XmlNode) or r.strip()]
    return XmlNode("html", (), (XmlNode("body", (), tuple(content)),))


def _escape_attr(value: str) -> str:
    return _htmlmod.escape(value, quote=True)


def serialize_node(node: XmlNode | str, self_closing: bool = True) -> str:
    """Deterministic serialization; identical trees yield identical bytes."""
    if isinstance(node, str):
        return _htmlmod.escape(node, quote=False)
    attrs = "".join(f' {k}="{_escape_attr(v)}"' for k, v in node.attributes)
    if not node.children:
        if self_closing:
            return f"<{node.name}{attrs}/>"
        return f"<{node.name}{attrs}></{node.name}>"
    inner = "".join(serialize_node(c, self_closing) for c in node.children)
    return f"<{node.name}{attrs}>{inner}</{node.name}>"
