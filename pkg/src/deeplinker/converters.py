"""The ``to@<format>`` conversion registry and the slide→SVG projection.

Availability is honest: conversions out of a Binary are gated by its
sniffed media type, except ``string`` which is total (UTF-8 with U+FFFD
replacement). A missing registry entry or sniff mismatch raises
ConversionUnavailable; an unparseable payload raises BadParamFormat.
"""

from __future__ import annotations

import json

from .errors import ResolveError
from .rdfio import RdfParseError, parse_turtle
from .resources import (
    BinaryResource,
    ImageResource,
    JsonResource,
    PdfResource,
    PowerpointResource,
    PowerpointSlideResource,
    RdfResource,
    Resource,
    StringResource,
    XmlishResource,
    formats_for_media_type,
)
from .sniff import image_dimensions, pdf_info, pptx_slide_xml, sniff_media_type
from .xmlish import XmlNode, XmlParseError, parse_html, parse_xml

__all__ = ["convert", "slide_to_svg", "available_formats", "EMU_PER_PIXEL"]

EMU_PER_PIXEL = 9525  # OOXML EMU at 96 dpi

FORMATS = ("string", "json", "image", "pdf", "powerpoint", "html", "xml", "rdf", "binary", "svg")

_STRING_FORMATS = ("json", "xml", "html", "rdf")


def available_formats(resource: Resource) -> tuple[str, ...]:
    """Formats ``convert`` will accept for this resource (parse errors aside)."""
    if isinstance(resource, BinaryResource):
        fmts = ("string",) + tuple(
            f for f in formats_for_media_type(resource.media_type) if f != "string"
        )
        return fmts + ("binary",)
    if isinstance(resource, StringResource):
        return _STRING_FORMATS + ("binary",)
    if isinstance(resource, PowerpointSlideResource):
        return ("xml", "svg")
    if isinstance(resource, (ImageResource, PdfResource, PowerpointResource)):
        return ("binary",)
    return ()


def _bad(detail: str) -> ResolveError:
    return ResolveError("BadParamFormat", detail)


def _parse_as(data: bytes | str, fmt: str) -> Resource:
    text = data.decode("utf-8", errors="replace") if isinstance(data, bytes) else data
    raw = data.encode("utf-8") if isinstance(data, str) else data
    if fmt == "json":
        try:
            return JsonResource(json.loads(text))
        except json.JSONDecodeError as exc:
            raise _bad(f"invalid JSON: {exc}")
    if fmt == "html":
        return XmlishResource(parse_html(text), html_mode=True)
    if fmt == "xml":
        try:
            return XmlishResource(parse_xml(raw), html_mode=False)
        except XmlParseError as exc:
            raise _bad(str(exc))
    if fmt == "rdf":
        try:
            return RdfResource(tuple(parse_turtle(text)))
        except RdfParseError as exc:
            raise _bad(f"invalid RDF: {exc}")
    raise AssertionError(fmt)


def _to_binary(resource: Resource) -> BinaryResource:
    if isinstance(resource, BinaryResource):
        return resource
    if isinstance(resource, (ImageResource, PdfResource, PowerpointResource)):
        return BinaryResource(resource.data, sniff_media_type(resource.data))
    if isinstance(resource, StringResource):
        return BinaryResource(resource.text.encode("utf-8"), "text/plain")
    raise ResolveError("ConversionUnavailable", f"{resource.kind.value} has no byte source")


def convert(resource: Resource, fmt: str) -> Resource:
    if fmt not in FORMATS:
        raise ResolveError("ConversionUnavailable", f"unknown format {fmt!r}")
    if fmt == "binary":
        return _to_binary(resource)
    if isinstance(resource, BinaryResource):
        if fmt == "string":
            return StringResource(resource.data.decode("utf-8", errors="replace"))
        if fmt not in formats_for_media_type(resource.media_type):
            raise ResolveError(
                "ConversionUnavailable",
                f"{resource.media_type} does not convert to {fmt}",
            )
        if fmt in _STRING_FORMATS:
            return _parse_as(resource.data, fmt)
        if fmt == "image":
            try:
                image_format, w, h = image_dimensions(resource.data)
            except ValueError as exc:
                raise _bad(str(exc))
            return ImageResource(image_format, w, h, resource.data)
        if fmt == "pdf":
            try:
                version, pages = pdf_info(resource.data)
            except ValueError as exc:
                raise _bad(str(exc))
            return PdfResource(version, pages, resource.data)
        if fmt == "powerpoint":
            try:
                slides, size = pptx_slide_xml(resource.data)
            except Exception as exc:
                raise _bad(f"not a readable PPTX: {exc}")
            return PowerpointResource(tuple(slides), size, resource.data)
    if isinstance(resource, StringResource) and fmt in _STRING_FORMATS:
        return _parse_as(resource.text, fmt)
    if isinstance(resource, PowerpointSlideResource):
        if fmt == "xml":
            return XmlishResource(resource.node, html_mode=False)
        if fmt == "svg":
            return XmlishResource(slide_to_svg(resource), html_mode=False)
    raise ResolveError(
        "ConversionUnavailable", f"no conversion from {resource.kind.value} to {fmt}"
    )


_SHAPE_NAMES = frozenset({"sp", "pic", "graphicFrame", "grpSp", "cxnSp"})


def _find_first(node: XmlNode, name: str) -> XmlNode | None:
    for n in node.iter():
        if n.name == name:
            return n
    return None


def _shape_offset(shape: XmlNode) -> tuple[int, int]:
    xfrm = _find_first(shape, "xfrm")
    if xfrm is not None:
        off = _find_first(xfrm, "off")
        if off is not None:
            try:
                return int(off.attr("x") or 0), int(off.attr("y") or 0)
            except ValueError:
                pass
    return 0, 0


def slide_to_svg(slide: PowerpointSlideResource) -> XmlNode:
    """Deterministic simplified SVG: svg > g(slide) > one g per top-level
    shape, each with data-shape-name and a text child per paragraph."""
    sp_tree = _find_first(slide.node, "spTree")
    if sp_tree is None:
        raise _bad("slide XML has no shape tree")
    width = slide.slide_size_emu[0] // EMU_PER_PIXEL
    height = slide.slide_size_emu[1] // EMU_PER_PIXEL
    shape_groups: list[XmlNode] = []
    for shape in sp_tree.element_children():
        if shape.name not in _SHAPE_NAMES:
            continue
        cnvpr = _find_first(shape, "cNvPr")
        name = (cnvpr.attr("name") if cnvpr is not None else None) or ""
        x_emu, y_emu = _shape_offset(shape)
        texts = []
        for para in (n for n in shape.iter() if n.name == "p"):
            runs = "".join(t.text() for t in para.iter() if t.name == "t")
            texts.append(XmlNode("text", (), (runs,)))
        shape_groups.append(
            XmlNode(
                "g",
                (
                    ("data-shape-name", name),
                    ("transform", f"translate({x_emu // EMU_PER_PIXEL} {y_emu // EMU_PER_PIXEL})"),
                ),
                tuple(texts),
            )
        )
    slide_group = XmlNode("g", (("data-slide", str(slide.number)),), tuple(shape_groups))
    return XmlNode(
        "svg",
        (
            ("xmlns", "http://www.w3.org/2000/svg"),
            ("width", str(width)),
            ("height", str(height)),
        ),
        (slide_group,),
    )
