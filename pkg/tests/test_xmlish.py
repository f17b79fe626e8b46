import pytest

from deeplinker.xmlish import XmlNode, XmlParseError, parse_html, parse_xml, serialize_node


class TestParseXml:
    def test_tree_shape(self):
        root = parse_xml("<a x='1'>t<b/><c>u</c></a>")
        assert root.name == "a"
        assert root.attributes == (("x", "1"),)
        assert root.children[0] == "t"
        assert [c.name for c in root.element_children()] == ["b", "c"]

    def test_namespace_prefixes_stripped_to_local_names(self):
        root = parse_xml('<p:sld xmlns:p="urn:x"><p:cSld/></p:sld>')
        assert root.name == "sld"
        assert root.element_children()[0].name == "cSld"

    def test_malformed_rejected(self):
        with pytest.raises(XmlParseError):
            parse_xml("<a><b></a>")


class TestParseHtml:
    def test_implied_html_body(self):
        root = parse_html("<p>hi</p>")
        assert root.name == "html"
        (body,) = root.element_children()
        assert body.name == "body"
        assert body.element_children()[0].name == "p"

    def test_void_elements_take_no_children(self):
        root = parse_html("<div><br><img src=x><span>s</span></div>")
        div = root.element_children()[0].element_children()[0]
        names = [c.name for c in div.element_children()]
        assert names == ["br", "img", "span"]

    def test_unclosed_tags_auto_closed(self):
        root = parse_html("<div><b>bold")
        assert serialize_node(root).count("</div>") == 1

    def test_stray_end_tag_ignored(self):
        root = parse_html("<div>x</span></div>")
        assert root.element_children()[0].element_children()[0].text() == "x"

    def test_existing_html_body_preserved(self):
        root = parse_html("<html><head><title>t</title></head><body><p>x</p></body></html>")
        assert [c.name for c in root.element_children()] == ["head", "body"]

    def test_unquoted_and_bare_attributes(self):
        root = parse_html("<input type=search name=q required>")
        node = root.element_children()[0].element_children()[0]
        assert node.attr("type") == "search"
        assert node.attr("required") == ""


class TestSerialize:
    def test_round_trip_through_xml_parser(self):
        root = parse_xml('<a x="1 &amp; 2">t<b/></a>')
        assert parse_xml(serialize_node(root)) == root

    def test_deterministic(self):
        n = XmlNode("a", (("k", "v"),), ("text", XmlNode("b")))
        assert serialize_node(n) == serialize_node(n) == '<a k="v">text<b/></a>'

    def test_escaping(self):
        n = XmlNode("a", (("k", 'v"<'),), ("<&",))
        assert serialize_node(n) == '<a k="v&quot;&lt;">&lt;&amp;</a>'
