"""Media-type sniffing and lightweight header probing for binary content.

Magic bytes first, then an extension table, else application/octet-stream.
Dimension readers parse only the headers they need; no image decoding.
"""

from __future__ import annotations

import io
import re
import struct
import zipfile

__all__ = [
    "sniff_media_type",
    "image_dimensions",
    "pdf_info",
    "pptx_slide_xml",
    "EXTENSION_TYPES",
]

EXTENSION_TYPES = {
    ".txt": "text/plain",
    ".md": "text/plain",
    ".html": "text/html",
    ".htm": "text/html",
    ".xml": "application/xml",
    ".svg": "image/svg+xml",
    ".json": "application/json",
    ".ttl": "text/turtle",
    ".nt": "application/n-triples",
    ".csv": "text/csv",
    ".png": "image/png",
    ".jpg": "image/jpeg",
    ".jpeg": "image/jpeg",
    ".gif": "image/gif",
    ".pdf": "application/pdf",
    ".pptx": "application/vnd.openxmlformats-officedocument.presentationml.presentation",
    ".zip": "application/zip",
}

PPTX_TYPE = EXTENSION_TYPES[".pptx"]


def _is_pptx(data: bytes) -> bool:
    try:
        with zipfile.ZipFile(io.BytesIO(data)) as zf:
            names = zf.namelist()
    except (zipfile.BadZipFile, OSError):
        return False
    return "[Content_Types].xml" in names and any(n.startswith("ppt/") for n in names)


def sniff_media_type(data: bytes, filename: str | None = None) -> str:
    if data.startswith(b"\x89PNG\r\n\x1a\n"):
        return "image/png"
    if data.startswith(b"\xff\xd8\xff"):
        return "image/jpeg"
    if data.startswith(b"GIF8"):
        return "image/gif"
    if data.startswith(b"%PDF-"):
        return "application/pdf"
    if data.startswith(b"PK\x03\x04"):
        return PPTX_TYPE if _is_pptx(data) else "application/zip"
    if filename:
        dot = filename.rfind(".")
        if dot >= 0:
            ext = filename[dot:].lower()
            if ext in EXTENSION_TYPES:
                return EXTENSION_TYPES[ext]
    return "application/octet-stream"


def image_dimensions(data: bytes) -> tuple[str, int, int]:
    """Return (format, width, height) from PNG/JPEG/GIF headers."""
    if data.startswith(b"\x89PNG\r\n\x1a\n"):
        if len(data) < 24 or data[12:16] != b"IHDR":
            raise ValueError("truncated PNG header")
        w, h = struct.unpack(">II", data[16:24])
        return "png", w, h
    if data.startswith(b"\xff\xd8\xff"):
        return ("jpeg",) + _jpeg_dimensions(data)
    if data.startswith(b"GIF8"):
        if len(data) < 10:
            raise ValueError("truncated GIF header")
        w, h = struct.unpack("<HH", data[6:10])
        return "gif", w, h
    raise ValueError("not a recognized image format")


def _jpeg_dimensions(data: bytes) -> tuple[int, int]:
    # walk markers until a start-of-frame segment
    pos = 2
    while pos + 4 <= len(data):
        if data[pos] != 0xFF:
            pos += 1
            continue
        marker = data[pos + 1]
        if marker in (0xD8, 0x01) or 0xD0 <= marker <= 0xD7:
            pos += 2
            continue
        length = struct.unpack(">H", data[pos + 2 : pos + 4])[0]
        if 0xC0 <= marker <= 0xCF and marker not in (0xC4, 0xC8, 0xCC):
            h, w = struct.unpack(">HH", data[pos + 5 : pos + 9])
            return w, h
        pos += 2 + length
    raise ValueError("no JPEG start-of-frame marker found")


_PDF_PAGE_RE = re.compile(rb"/Type\s*/Page\b(?!s)")


def pdf_info(data: bytes) -> tuple[str, int]:
    """(version, page count estimate) from an uncompressed object scan."""
    m = re.match(rb"%PDF-(\d+\.\d+)", data)
    if not m:
        raise ValueError("not a PDF")
    version = m.group(1).decode("ascii")
    return version, len(_PDF_PAGE_RE.findall(data))


_SLIDE_RE = re.compile(r"ppt/slides/slide(\d+)\.xml\Z")


def pptx_slide_xml(data: bytes) -> tuple[list[bytes], tuple[int, int]]:
    """Slide XML parts in numeric order plus the slide size in EMU.

    Size falls back to the common 4:3 default when presentation.xml
    lacks a sldSz element.
    """
    with zipfile.ZipFile(io.BytesIO(data)) as zf:
        slides = []
        for name in zf.namelist():
            m = _SLIDE_RE.match(name)
            if m:
                slides.append((int(m.group(1)), name))
        slides.sort()
        xml_parts = [zf.read(name) for _, name in slides]
        size = (9144000, 6858000)
        try:
            pres = zf.read("ppt/presentation.xml").decode("utf-8", errors="replace")
            m = re.search(r"<p:sldSz[^>]*\bcx=\"(\d+)\"[^>]*\bcy=\"(\d+)\"", pres)
            if m:
                size = (int(m.group(1)), int(m.group(2)))
        except KeyError:
            pass
    return xml_parts, size
