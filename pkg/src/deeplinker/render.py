"""Negotiated representations: HTML hypermedia page (default), JSON, and
Turtle (file resources only, enriched with stored annotations).

The HTML contract is normative for the companion UI: ids ``deeplink``,
``annotation-form``, ``triples``, ``bookmark``; class ``highlight``;
``rel="child"`` on navigation anchors.
"""

from __future__ import annotations

import base64
import html
import json
from dataclasses import dataclass

from .grammar import DeepLink, serialize_deep_link
from .rdfio import (
    BOOKMARK_CLASS,
    RDF_TYPE,
    Iri,
    Literal,
    Triple,
    serialize_turtle,
    triple_to_ntriples,
)
from .resources import (
    BinaryResource,
    FileResource,
    ImageResource,
    JsonResource,
    PdfResource,
    PowerpointResource,
    PowerpointSlideResource,
    RdfResource,
    RectResource,
    Resource,
    StringResource,
    XmlishResource,
    child_links,
    properties,
    split_lines,
)
from .converters import slide_to_svg
from .xmlish import serialize_node

__all__ = ["Representation", "negotiate", "render_html", "render_json", "render_turtle", "VOCAB"]

VOCAB = "http://purl.org/deeplinker/vocab#"


@dataclass(frozen=True)
class Representation:
    media_type: str
    body: bytes


def negotiate(accept_header: str | None, resource: Resource) -> str:
    """Pick 'json', 'turtle' or 'html'. Ranges are scanned in order of
    appearance; quality weights are ignored; unmatched ranges fall through."""
    if not accept_header:
        return "html"
    for part in accept_header.split(","):
        media_range = part.split(";")[0].strip().lower()
        if media_range == "application/json":
            return "json"
        if media_range == "text/turtle" and isinstance(resource, FileResource):
            return "turtle"
        if media_range in ("text/html", "*/*"):
            return "html"
    return "html"


def _esc(text: str) -> str:
    return html.escape(text, quote=True)


def _data_uri(resource: ImageResource) -> str:
    media = {"png": "image/png", "jpeg": "image/jpeg", "gif": "image/gif"}[resource.format]
    return f"data:{media};base64,{base64.b64encode(resource.data).decode('ascii')}"


def _view(resource: Resource) -> str:
    if isinstance(resource, StringResource):
        if resource.source_text is not None and resource.focus_line is not None:
            items = []
            for i, line in enumerate(split_lines(resource.source_text)):
                cls = ' class="highlight"' if i == resource.focus_line else ""
                items.append(f"<li{cls}>{_esc(line)}</li>")
            return f'<ol start="1">{"".join(items)}</ol>'
        return f"<pre>{_esc(resource.text)}</pre>"
    if isinstance(resource, RectResource):
        return (
            f'<div class="image-stage"><img src="{_data_uri(resource.target)}" '
            f'alt="" width="{resource.target.width}" height="{resource.target.height}">'
            f'<div class="highlight" data-x="{resource.x}" data-y="{resource.y}" '
            f'data-w="{resource.width}" data-h="{resource.height}"></div></div>'
        )
    if isinstance(resource, ImageResource):
        return f'<img src="{_data_uri(resource)}" alt="" width="{resource.width}" height="{resource.height}">'
    if isinstance(resource, XmlishResource):
        return f'<pre><code class="highlight">{_esc(serialize_node(resource.root))}</code></pre>'
    if isinstance(resource, PowerpointSlideResource):
        return serialize_node(slide_to_svg(resource))
    if isinstance(resource, FileResource):
        rows = "".join(
            f"<tr><th>{_esc(k)}</th><td>{_esc(v)}</td></tr>" for k, v in properties(resource)
        )
        return f"<table>{rows}</table>"
    if isinstance(resource, JsonResource):
        return f"<pre>{_esc(json.dumps(resource.value, indent=2, ensure_ascii=False))}</pre>"
    if isinstance(resource, RdfResource):
        items = "".join(f"<li>{_esc(triple_to_ntriples(t))}</li>" for t in resource.triples)
        return f"<ul>{items}</ul>"
    if isinstance(resource, BinaryResource):
        return f"<p>{len(resource.data)} bytes of {_esc(resource.media_type)}</p>"
    return ""


def render_html(
    resource: Resource, self_link: DeepLink, annotations: list[Triple]
) -> Representation:
    path = serialize_deep_link(self_link)
    nav = "".join(
        f'<li><a rel="child" href="{_esc(serialize_deep_link(link))}">{_esc(label)}</a></li>'
        for label, link in child_links(resource, self_link)
    )
    triples_items = "".join(
        "<li><span class=\"predicate\">%s</span> <span class=\"object\">%s</span></li>"
        % (
            _esc(t.predicate.value),
            _esc(t.object.value if isinstance(t.object, Iri) else t.object.lexical),
        )
        for t in annotations
    )
    bookmarked = any(
        t.predicate.value == RDF_TYPE
        and isinstance(t.object, Iri)
        and t.object.value == BOOKMARK_CLASS
        for t in annotations
    )
    body = f"""<!DOCTYPE html>
<html>
<head>
<meta charset="utf-8">
<title>{_esc(path)}</title>
<link rel="stylesheet" href="/assets/style.css">
<script type="module" src="/assets/main.js"></script>
</head>
<body>
<h1 id="deeplink">{_esc(path)}</h1>
<p class="kind">{resource.kind.value}</p>
<nav><ul class="children">{nav}</ul></nav>
<section class="view">{_view(resource)}</section>
<section class="annotations">
<h2>Annotations</h2>
<ul id="triples">{triples_items}</ul>
<form id="annotation-form" method="post" action="/annotations">
<input type="hidden" name="subject" value="{_esc(path)}">
<label>Predicate <input name="predicate" required></label>
<label>Object <input name="object" required></label>
<select name="type"><option value="literal">literal</option><option value="iri">iri</option></select>
<button type="submit">Add</button>
</form>
<form method="post" action="/annotations">
<input type="hidden" name="subject" value="{_esc(path)}">
<input type="hidden" name="predicate" value="{RDF_TYPE}">
<input type="hidden" name="object" value="{BOOKMARK_CLASS}">
<input type="hidden" name="type" value="iri">
<button id="bookmark" type="submit" data-bookmarked="{'true' if bookmarked else 'false'}">
{'Bookmarked' if bookmarked else 'Bookmark'}</button>
</form>
<form class="search" method="get" action="/search">
<input type="search" name="q" placeholder="search literals">
<button type="submit">Search</button>
</form>
</section>
</body>
</html>
"""
    return Representation("text/html; charset=utf-8", body.encode("utf-8"))


def render_json(resource: Resource, self_link: DeepLink | None = None) -> Representation:
    doc: dict = {"kind": resource.kind.value}
    doc["properties"] = {k: v for k, v in properties(resource)}
    if self_link is not None:
        doc["self"] = serialize_deep_link(self_link)
        doc["children"] = [
            serialize_deep_link(link) for _, link in child_links(resource, self_link)
        ]
    else:
        doc["children"] = []
    if isinstance(resource, StringResource):
        doc["text"] = resource.text
    elif isinstance(resource, JsonResource):
        doc["value"] = resource.value
    elif isinstance(resource, RectResource):
        doc.update(x=resource.x, y=resource.y, w=resource.width, h=resource.height)
    elif isinstance(resource, FileResource):
        m = resource.meta
        doc.update(
            name=m.name,
            path=m.absolute_path,
            size=m.size_bytes,
            modified=m.modified_ms,
            mediaType=m.media_type,
            isDirectory=m.is_directory,
        )
    elif isinstance(resource, ImageResource):
        doc.update(format=resource.format, width=resource.width, height=resource.height)
    elif isinstance(resource, PdfResource):
        doc.update(version=resource.version, pageCount=resource.page_count)
    elif isinstance(resource, PowerpointResource):
        doc.update(slideCount=len(resource.slides_xml))
    elif isinstance(resource, PowerpointSlideResource):
        doc.update(slideNumber=resource.number)
    elif isinstance(resource, XmlishResource):
        doc.update(source=serialize_node(resource.root))
    elif isinstance(resource, RdfResource):
        doc.update(triples=[triple_to_ntriples(t) for t in resource.triples])
    elif isinstance(resource, BinaryResource):
        doc.update(mediaType=resource.media_type, size=len(resource.data))
    body = json.dumps(doc, ensure_ascii=False, indent=2).encode("utf-8")
    return Representation("application/json", body)


def render_turtle(
    resource: FileResource, self_link: DeepLink, annotations: list[Triple], base_iri: str
) -> Representation:
    assert isinstance(resource, FileResource)
    subject = Iri(base_iri.rstrip("/") + serialize_deep_link(self_link))
    m = resource.meta
    xsd = "http://www.w3.org/2001/XMLSchema#"
    triples = [
        Triple(subject, Iri(VOCAB + "name"), Literal(m.name)),
        Triple(subject, Iri(VOCAB + "path"), Literal(m.absolute_path)),
        Triple(subject, Iri(VOCAB + "size"), Literal(str(m.size_bytes), datatype=xsd + "integer")),
        Triple(subject, Iri(VOCAB + "modified"), Literal(str(m.modified_ms), datatype=xsd + "integer")),
        Triple(subject, Iri(VOCAB + "mediaType"), Literal(m.media_type)),
        Triple(
            subject,
            Iri(VOCAB + "isDirectory"),
            Literal("true" if m.is_directory else "false", datatype=xsd + "boolean"),
        ),
    ]
    triples.extend(t for t in annotations if t not in triples)
    text = serialize_turtle(triples, {"dl": VOCAB})
    return Representation("text/turtle; charset=utf-8", text.encode("utf-8"))
