"""The 14 resource kinds, their metadata and their hypermedia fan-out.

A resource is an immutable snapshot produced by resolution. ``properties``
and ``child_links`` define the capability surface the renderer and the
resolver's ``property``/navigation methods rely on.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

from .grammar import DeepLink, Segment, append_segment
from .rdfio import Triple
from .xmlish import XmlNode

__all__ = [
    "ResourceKind",
    "FileMeta",
    "CollectionResource",
    "MapResource",
    "FileResource",
    "StringResource",
    "JsonResource",
    "ImageResource",
    "PdfResource",
    "PowerpointResource",
    "PowerpointSlideResource",
    "RdfResource",
    "BinaryResource",
    "RectResource",
    "XmlishResource",
    "RemoteResource",
    "Resource",
    "properties",
    "child_links",
    "split_lines",
    "formats_for_media_type",
]


class ResourceKind(Enum):
    COLLECTION = "Collection"
    MAP = "Map"
    FILE = "File"
    STRING = "String"
    JSON = "Json"
    IMAGE = "Image"
    PDF = "Pdf"
    POWERPOINT = "Powerpoint"
    POWERPOINT_SLIDE = "PowerpointSlide"
    RDF = "Rdf"
    BINARY = "Binary"
    RECT = "Rect"
    XMLISH = "Xmlish"
    REMOTE = "Remote"


@dataclass(frozen=True)
class FileMeta:
    name: str
    absolute_path: str
    size_bytes: int
    modified_ms: int  # epoch milliseconds, UTC
    media_type: str
    is_directory: bool


@dataclass(frozen=True)
class CollectionResource:
    kind = ResourceKind.COLLECTION
    entries: tuple[tuple[str, DeepLink], ...] = ()


@dataclass(frozen=True)
class MapResource:
    kind = ResourceKind.MAP
    entries: tuple[tuple[str, DeepLink], ...] = ()


@dataclass(frozen=True)
class FileResource:
    kind = ResourceKind.FILE
    meta: FileMeta
    # directory listing captured at resolution time; None for regular files
    dir_entries: tuple[str, ...] | None = None


@dataclass(frozen=True)
class StringResource:
    kind = ResourceKind.STRING
    text: str
    # set when this string is a focused line of a larger text
    source_text: str | None = None
    focus_line: int | None = None


@dataclass(frozen=True)
class JsonResource:
    kind = ResourceKind.JSON
    value: object


@dataclass(frozen=True)
class ImageResource:
    kind = ResourceKind.IMAGE
    format: str
    width: int
    height: int
    data: bytes = field(repr=False)


@dataclass(frozen=True)
class PdfResource:
    kind = ResourceKind.PDF
    version: str
    page_count: int
    data: bytes = field(repr=False)


@dataclass(frozen=True)
class PowerpointResource:
    kind = ResourceKind.POWERPOINT
    slides_xml: tuple[bytes, ...] = field(repr=False)
    slide_size_emu: tuple[int, int] = (9144000, 6858000)
    data: bytes = field(default=b"", repr=False)


@dataclass(frozen=True)
class PowerpointSlideResource:
    kind = ResourceKind.POWERPOINT_SLIDE
    node: XmlNode
    number: int  # 1-based display number
    slide_size_emu: tuple[int, int] = (9144000, 6858000)


@dataclass(frozen=True)
class RdfResource:
    kind = ResourceKind.RDF
    triples: tuple[Triple, ...] = ()


@dataclass(frozen=True)
class BinaryResource:
    kind = ResourceKind.BINARY
    data: bytes = field(repr=False)
    media_type: str = "application/octet-stream"


@dataclass(frozen=True)
class RectResource:
    kind = ResourceKind.RECT
    x: int
    y: int
    width: int
    height: int
    target: ImageResource

    def __post_init__(self):
        if self.x < 0 or self.y < 0 or self.width < 1 or self.height < 1:
            raise ValueError("rect needs non-negative origin and positive size")
        if self.x + self.width > self.target.width or self.y + self.height > self.target.height:
            raise ValueError("rect exceeds image bounds")


@dataclass(frozen=True)
class XmlishResource:
    kind = ResourceKind.XMLISH
    root: XmlNode
    html_mode: bool = False


@dataclass(frozen=True)
class RemoteResource:
    kind = ResourceKind.REMOTE


Resource = (
    CollectionResource
    | MapResource
    | FileResource
    | StringResource
    | JsonResource
    | ImageResource
    | PdfResource
    | PowerpointResource
    | PowerpointSlideResource
    | RdfResource
    | BinaryResource
    | RectResource
    | XmlishResource
    | RemoteResource
)


def split_lines(text: str) -> list[str]:
    """Lines split on \\n with a preceding \\r stripped; a final newline
    does not create an extra empty line."""
    if text == "":
        return []
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return [l[:-1] if l.endswith("\r") else l for l in lines]


# Conversion formats reachable from a Binary, gated by its sniffed type.
_MEDIA_FORMATS = {
    "text/plain": ("string",),
    "text/csv": ("string",),
    "application/json": ("string", "json"),
    "text/html": ("string", "html"),
    "application/xml": ("string", "xml"),
    "text/xml": ("string", "xml"),
    "image/svg+xml": ("string", "xml"),
    "application/n-triples": ("string", "rdf"),
    "text/turtle": ("string", "rdf"),
    "image/png": ("image",),
    "image/jpeg": ("image",),
    "image/gif": ("image",),
    "application/pdf": ("pdf",),
    "application/vnd.openxmlformats-officedocument.presentationml.presentation": ("powerpoint",),
}


def formats_for_media_type(media_type: str) -> tuple[str, ...]:
    return _MEDIA_FORMATS.get(media_type, ())


def properties(resource: Resource) -> list[tuple[str, str]]:
    if isinstance(resource, FileResource):
        m = resource.meta
        return [
            ("name", m.name),
            ("path", m.absolute_path),
            ("size", str(m.size_bytes)),
            ("modified", str(m.modified_ms)),
            ("mediaType", m.media_type),
        ]
    if isinstance(resource, StringResource):
        return [
            ("length", str(len(resource.text))),
            ("lineCount", str(len(split_lines(resource.text)))),
        ]
    if isinstance(resource, ImageResource):
        return [
            ("width", str(resource.width)),
            ("height", str(resource.height)),
            ("format", resource.format),
        ]
    if isinstance(resource, PowerpointResource):
        return [("slideCount", str(len(resource.slides_xml)))]
    if isinstance(resource, (CollectionResource, MapResource)):
        return [("size", str(len(resource.entries)))]
    if isinstance(resource, PdfResource):
        return [("version", resource.version), ("pageCount", str(resource.page_count))]
    if isinstance(resource, BinaryResource):
        return [("size", str(len(resource.data))), ("mediaType", resource.media_type)]
    if isinstance(resource, RectResource):
        return [
            ("x", str(resource.x)),
            ("y", str(resource.y)),
            ("width", str(resource.width)),
            ("height", str(resource.height)),
        ]
    if isinstance(resource, RdfResource):
        return [("tripleCount", str(len(resource.triples)))]
    if isinstance(resource, XmlishResource):
        return [("rootName", resource.root.name)]
    if isinstance(resource, PowerpointSlideResource):
        return [("slideNumber", str(resource.number))]
    return []


def _child(self_link: DeepLink, method: str, *params: str) -> DeepLink:
    return append_segment(self_link, Segment(method, tuple(params)))


def child_links(resource: Resource, self_link: DeepLink) -> list[tuple[str, DeepLink]]:
    """Hypermedia fan-out: every returned link resolves against the same
    snapshot. Deterministic for identical inputs."""
    out: list[tuple[str, DeepLink]] = []
    if isinstance(resource, FileResource):
        if resource.meta.is_directory:
            for entry in sorted(resource.dir_entries or (), key=lambda s: s.encode()):
                out.append((entry, _child(self_link, "child", entry)))
        else:
            out.append(("content", _child(self_link, "child", "content")))
            for key, _ in properties(resource):
                out.append((f"property: {key}", _child(self_link, "property", key)))
    elif isinstance(resource, BinaryResource):
        for fmt in formats_for_media_type(resource.media_type):
            out.append((f"to {fmt}", _child(self_link, "to", fmt)))
    elif isinstance(resource, PowerpointResource):
        for i in range(len(resource.slides_xml)):
            out.append((f"slide {i + 1}", _child(self_link, "index", str(i))))
    elif isinstance(resource, PowerpointSlideResource):
        out.append(("to xml", _child(self_link, "to", "xml")))
        out.append(("to svg", _child(self_link, "to", "svg")))
    elif isinstance(resource, StringResource):
        for i, _line in enumerate(split_lines(resource.text)):
            out.append((f"line {i + 1}", _child(self_link, "line", str(i))))
    elif isinstance(resource, JsonResource):
        if isinstance(resource.value, dict):
            for key in resource.value:
                out.append((key, _child(self_link, "child", str(key))))
        elif isinstance(resource.value, list):
            for i in range(len(resource.value)):
                out.append((f"[{i}]", _child(self_link, "index", str(i))))
    elif isinstance(resource, (CollectionResource, MapResource)):
        out.extend(resource.entries)
    return out
