import json
import re

import pytest

from deeplinker.grammar import parse_deep_link
from deeplinker.rdfio import Iri, Literal, Triple, parse_turtle
from deeplinker.render import VOCAB, negotiate, render_html, render_json, render_turtle
from deeplinker.resources import (
    BinaryResource,
    CollectionResource,
    ImageResource,
    JsonResource,
    MapResource,
    PdfResource,
    PowerpointResource,
    PowerpointSlideResource,
    RdfResource,
    RectResource,
    RemoteResource,
    StringResource,
    XmlishResource,
)
from deeplinker.xmlish import parse_html, parse_xml

from test_resources import file_resource

RDFS_COMMENT = "http://www.w3.org/2000/01/rdf-schema#comment"


class TestNegotiate:
    def test_json_for_all_kinds(self):
        assert negotiate("application/json", StringResource("x")) == "json"
        assert negotiate("application/json", file_resource()) == "json"

    def test_turtle_files_only(self):
        assert negotiate("text/turtle", file_resource()) == "turtle"
        assert negotiate("text/turtle", StringResource("x")) == "html"

    def test_absent_header_html(self):
        assert negotiate(None, StringResource("x")) == "html"
        assert negotiate("", RemoteResource()) == "html"

    def test_order_of_appearance_ignoring_quality(self):
        assert negotiate("application/json;q=0.1, text/html", StringResource("x")) == "json"
        assert negotiate("text/html, application/json", StringResource("x")) == "html"

    def test_unmatched_ranges_fall_through(self):
        assert negotiate("image/avif, application/json", StringResource("x")) == "json"
        assert negotiate("image/avif", StringResource("x")) == "html"

    def test_wildcard_is_html(self):
        assert negotiate("image/png, */*", StringResource("x")) == "html"


def page(resource, path="/filesystem/x", annotations=()):
    rep = render_html(resource, parse_deep_link(path), list(annotations))
    assert rep.media_type.startswith("text/html")
    return rep.body.decode("utf-8")


class TestRenderHtml:
    def test_anchor_contract_present(self):
        html = page(file_resource())
        for anchor in ('id="deeplink"', 'id="annotation-form"', 'id="triples"', 'id="bookmark"'):
            assert anchor in html
        assert parse_html(html).name == "html"  # parses

    def test_deeplink_text_is_serialized_self(self):
        html = page(StringResource("x"), "/filesystem/c.txt/content/to@string")
        m = re.search(r'<h1 id="deeplink">([^<]*)</h1>', html)
        assert m.group(1) == "/filesystem/c.txt/content/to@string"

    def test_child_links_are_rel_child_anchors(self):
        html = page(file_resource(), "/filesystem/note.txt")
        assert '<a rel="child" href="/filesystem/note.txt/content">' in html

    def test_rect_overlay_data_attributes(self):
        img = ImageResource("png", 1024, 205, b"\x89PNG\r\n\x1a\n" + b"0" * 30)
        rect = RectResource(600, 109, 188, 36, img)
        html = page(rect, "/filesystem/pictures/a.png/content/to@image/rect@600,109,188,36")
        assert 'data-x="600" data-y="109" data-w="188" data-h="36"' in html
        assert html.count('class="highlight"') == 1

    def test_focused_line_single_highlight(self):
        res = StringResource("line three", source_text="line one\nline two\nline three\n", focus_line=2)
        html = page(res, "/filesystem/c.txt/content/to@string/line@2")
        assert html.count('class="highlight"') == 1
        assert '<li class="highlight">line three</li>' in html

    def test_xmlish_selection_highlighted(self):
        res = XmlishResource(parse_xml("<a href='/p'>Participate</a>"), html_mode=True)
        html = page(res)
        assert html.count('class="highlight"') == 1
        assert "Participate" in html

    def test_slide_svg_inlined(self):
        xml = "<sld><cSld><spTree><sp><nvSpPr><cNvPr id='2' name='n'/></nvSpPr></sp></spTree></cSld></sld>"
        res = PowerpointSlideResource(parse_xml(xml), 1)
        assert "<svg" in page(res)

    def test_annotations_listed(self):
        t = Triple(Iri("http://h/x"), Iri(RDFS_COMMENT), Literal("Artificial"))
        html = page(file_resource(), annotations=[t])
        assert "Artificial" in html and RDFS_COMMENT in html


ALL_KINDS = [
    CollectionResource((("a", parse_deep_link("/filesystem/a")),)),
    MapResource((("k", parse_deep_link("/filesystem/k")),)),
    file_resource(),
    StringResource("hi"),
    JsonResource({"a": [1, 2]}),
    ImageResource("png", 4, 2, b""),
    PdfResource("1.4", 3, b"%PDF-1.4"),
    PowerpointResource((b"<a/>",)),
    PowerpointSlideResource(parse_xml("<sld><cSld><spTree/></cSld></sld>"), 1),
    RdfResource((Triple(Iri("http://x/s"), Iri("http://x/p"), Literal("v")),)),
    BinaryResource(b"xx", "text/plain"),
    RectResource(0, 0, 1, 1, ImageResource("png", 4, 2, b"")),
    XmlishResource(parse_xml("<r/>")),
    RemoteResource(),
]


class TestRenderJson:
    def test_minimal_string(self):
        doc = json.loads(render_json(StringResource("hi"), parse_deep_link("/x/s")).body)
        assert doc["kind"] == "String" and doc["text"] == "hi"

    def test_file_children_include_content(self):
        doc = json.loads(render_json(file_resource(), parse_deep_link("/filesystem/note.txt")).body)
        assert "/filesystem/note.txt/content" in doc["children"]
        assert doc["isDirectory"] is False

    @pytest.mark.parametrize("resource", ALL_KINDS, ids=lambda r: r.kind.value)
    def test_every_kind_reparses(self, resource):
        rep = render_json(resource, parse_deep_link("/filesystem/x"))
        doc = json.loads(rep.body)
        assert doc["kind"] == resource.kind.value
        assert doc["properties"] == dict(
            __import__("deeplinker.resources", fromlist=["properties"]).properties(resource)
        )

    def test_rect_payload(self):
        doc = json.loads(render_json(ALL_KINDS[11]).body)
        assert (doc["x"], doc["y"], doc["w"], doc["h"]) == (0, 0, 1, 1)


class TestRenderTurtle:
    def test_metadata_and_annotations_reparse(self):
        link = parse_deep_link("/filesystem/note.txt")
        subject = Iri("http://127.0.0.1:7276/filesystem/note.txt")
        ann = Triple(subject, Iri(RDFS_COMMENT), Literal("Artificial"))
        rep = render_turtle(file_resource(), link, [ann], "http://127.0.0.1:7276")
        triples = parse_turtle(rep.body.decode())
        assert ann in triples
        names = {t.predicate.value for t in triples}
        assert names >= {VOCAB + k for k in ("name", "path", "size", "modified", "mediaType", "isDirectory")}
        assert all(t.subject == subject for t in triples)

    def test_directory_flag(self):
        res = file_resource("d", is_dir=True, entries=[])
        rep = render_turtle(res, parse_deep_link("/filesystem/d"), [], "http://h")
        (flag,) = [t for t in parse_turtle(rep.body.decode()) if t.predicate.value.endswith("isDirectory")]
        assert flag.object.lexical == "true"

    def test_round_trip_equals_intended_set(self):
        link = parse_deep_link("/filesystem/note.txt")
        rep = render_turtle(file_resource(), link, [], "http://h")
        reparsed = parse_turtle(rep.body.decode())
        assert len(reparsed) == 6  # exactly the metadata triples
