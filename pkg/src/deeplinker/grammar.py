"""Deep-link path grammar: ``/<method>@<param1>,...,<paramN>/`` segments.

Parameters travel the wire percent-encoded twice: once for the URI layer
and once more for the parameter layer, so that ``/``, ``,``, ``@`` and
``%`` inside a parameter never collide with the grammar's own separators.
At the parameter layer ``+`` decodes to a space (form-style), which is how
links such as ``cssSelector@svg%2B%253E%2Bg...`` carry their spaces.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

__all__ = [
    "Segment",
    "DeepLink",
    "LinkSyntaxError",
    "parse_deep_link",
    "serialize_deep_link",
    "append_segment",
]

ENTRY_NAMES = ("filesystem", "remote", "bookmarks")

_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*\Z")

# RFC 3986 unreserved characters stay literal; everything else is escaped.
_UNRESERVED = frozenset(
    b"ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-._~"
)

_HEX = "0123456789ABCDEF"


class LinkSyntaxError(ValueError):
    """Raised when a raw path does not conform to the deep-link grammar."""

    def __init__(self, code: str, detail: str):
        super().__init__(f"{code}: {detail}")
        self.code = code
        self.detail = detail


@dataclass(frozen=True)
class Segment:
    method: str
    params: tuple[str, ...] = ()

    def __post_init__(self):
        if not _IDENT_RE.match(self.method):
            raise LinkSyntaxError("BadMethodName", f"invalid method {self.method!r}")
        object.__setattr__(self, "params", tuple(self.params))


@dataclass(frozen=True)
class DeepLink:
    segments: tuple[Segment, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        if not self.segments:
            raise LinkSyntaxError("EmptySegment", "a deep link needs at least one segment")

    def __str__(self) -> str:
        return serialize_deep_link(self)


def _percent_encode(text: str) -> str:
    out = []
    for b in text.encode("utf-8"):
        if b in _UNRESERVED:
            out.append(chr(b))
        else:
            out.append("%" + _HEX[b >> 4] + _HEX[b & 0xF])
    return "".join(out)


def _percent_decode(text: str, plus_is_space: bool = False) -> str:
    # Strict: a stray or malformed % escape is an error, unlike
    # urllib.parse.unquote which silently passes it through.
    out = bytearray()
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "%":
            hexpair = text[i + 1 : i + 3]
            if len(hexpair) != 2 or not re.match(r"[0-9A-Fa-f]{2}\Z", hexpair):
                raise LinkSyntaxError(
                    "BadPercentEscape", f"malformed escape at offset {i} in {text!r}"
                )
            out.append(int(hexpair, 16))
            i += 3
        elif plus_is_space and ch == "+":
            out.append(0x20)
            i += 1
        else:
            out.extend(ch.encode("utf-8"))
            i += 1
    try:
        return out.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise LinkSyntaxError("BadPercentEscape", f"escapes are not valid UTF-8: {exc}")


def _decode_param(wire: str) -> str:
    once = _percent_decode(wire)  # URI layer
    return _percent_decode(once, plus_is_space=True)  # parameter layer


def _encode_param(value: str) -> str:
    return _percent_encode(_percent_encode(value))


def parse_deep_link(raw_path: str) -> DeepLink:
    """Parse a raw (still percent-encoded) request path into a DeepLink."""
    if not raw_path.startswith("/"):
        raise LinkSyntaxError("BadMethodName", "path must start with '/'")
    body = raw_path[1:]
    if body.endswith("/"):  # browser normalization tolerance
        body = body[:-1]
    pieces = body.split("/")
    segments = []
    for pos, piece in enumerate(pieces):
        if piece == "":
            raise LinkSyntaxError("EmptySegment", f"empty segment at position {pos}")
        if "@" in piece:
            method, _, paramlist = piece.partition("@")
            if not _IDENT_RE.match(method):
                raise LinkSyntaxError("BadMethodName", f"bad method in {piece!r}")
            params = tuple(_decode_param(p) for p in paramlist.split(","))
            segments.append(Segment(method, params))
        else:
            # "child is assumed to be the default"; the whole piece is one param
            segments.append(Segment("child", (_decode_param(piece),)))
    return DeepLink(tuple(segments))


def serialize_deep_link(link: DeepLink) -> str:
    """Serialize a DeepLink to its canonical wire path."""
    pieces = []
    for seg in link.segments:
        if (
            seg.method == "child"
            and len(seg.params) == 1
            and seg.params[0] != ""
            and "@" not in seg.params[0]
        ):
            pieces.append(_encode_param(seg.params[0]))
        else:
            pieces.append(seg.method + "@" + ",".join(_encode_param(p) for p in seg.params))
    return "/" + "/".join(pieces)


def append_segment(link: DeepLink, segment: Segment) -> DeepLink:
    return DeepLink(link.segments + (segment,))
