"""Deep-link evaluation: fold apply_segment over the segment list.

Entry roots are ``filesystem`` (jailed to the configured root directory),
``remote`` (uploads and downloads) and ``bookmarks`` (queried from the
annotation store). Filesystem resolution reads file content only when a
``content`` segment asks for it; File resources are metadata snapshots.
"""

from __future__ import annotations

import hashlib
import os
import tempfile

import requests

from .annotations import AnnotationStore, EmbeddedStore
from .converters import convert, slide_to_svg
from .errors import ResolveError
from .grammar import DeepLink, Segment, parse_deep_link, serialize_deep_link
from .resources import (
    BinaryResource,
    CollectionResource,
    FileMeta,
    FileResource,
    ImageResource,
    JsonResource,
    MapResource,
    PowerpointResource,
    PowerpointSlideResource,
    RectResource,
    RemoteResource,
    Resource,
    StringResource,
    XmlishResource,
    split_lines,
)
from .selectors import SelectorParseError, parse_selector, select_first
from .sniff import EXTENSION_TYPES, sniff_media_type
from .xmlish import XmlParseError, parse_xml

__all__ = ["Resolver", "ResolveError"]

DOWNLOAD_TIMEOUT = 30.0
DOWNLOAD_MAX_BYTES = 64 * 1024 * 1024
DOWNLOAD_MAX_REDIRECTS = 5

# method name -> accepted parameter counts
_ARITY = {
    "child": (1,),
    "index": (1,),
    "line": (1,),
    "substring": (2,),
    "rect": (4,),
    "cssSelector": (1,),
    "download": (1, 2),
    "property": (1,),
    "to": (1,),
}


def _int_param(value: str, what: str) -> int:
    if not value.isdigit():
        raise ResolveError("BadParamFormat", f"{what} must be a non-negative integer, got {value!r}")
    return int(value)


def _extension_media_type(name: str) -> str:
    dot = name.rfind(".")
    if dot >= 0:
        return EXTENSION_TYPES.get(name[dot:].lower(), "application/octet-stream")
    return "application/octet-stream"


class Resolver:
    def __init__(
        self,
        root_dir: str,
        store: AnnotationStore | None = None,
        upload_dir: str | None = None,
        cache_dir: str | None = None,
        base_iri: str = "http://127.0.0.1:7276",
    ):
        self.root_dir = os.path.realpath(root_dir)
        self.store = store if store is not None else EmbeddedStore()
        self.upload_dir = os.path.realpath(upload_dir) if upload_dir else None
        self.cache_dir = cache_dir
        self.base_iri = base_iri.rstrip("/")

    # -- entry roots ---------------------------------------------------

    def root_resource(self, entry_name: str) -> Resource:
        if entry_name == "filesystem":
            return self._file_resource(self.root_dir, self.root_dir)
        if entry_name == "remote":
            return RemoteResource()
        if entry_name == "bookmarks":
            entries = []
            for iri in self.store.list_bookmarks():
                path = iri.value
                if path.startswith(self.base_iri + "/"):
                    path = path[len(self.base_iri):]
                if not path.startswith("/"):
                    continue
                try:
                    link = parse_deep_link(path)
                except ValueError:
                    continue
                entries.append((serialize_deep_link(link), link))
            return CollectionResource(tuple(entries))
        raise ResolveError("NotFound", f"unknown entry {entry_name!r}")

    # -- filesystem ----------------------------------------------------

    def _jails(self) -> list[str]:
        jails = [self.root_dir]
        if self.upload_dir:
            jails.append(self.upload_dir)
        return jails

    def _check_jail(self, path: str) -> str:
        real = os.path.realpath(path)
        for jail in self._jails():
            if real == jail or real.startswith(jail + os.sep):
                return real
        raise ResolveError("PathEscapesRoot", f"{path!r} resolves outside the served roots")

    def _file_resource(self, path: str, jail_hint: str | None = None) -> FileResource:
        real = self._check_jail(path)
        try:
            st = os.stat(real)
        except FileNotFoundError:
            raise ResolveError("NotFound", f"no such file: {os.path.basename(path)!r}")
        except OSError as exc:
            raise ResolveError("NotFound", str(exc))
        is_dir = os.path.isdir(real)
        meta = FileMeta(
            name=os.path.basename(real) or real,
            absolute_path=real,
            size_bytes=0 if is_dir else st.st_size,
            modified_ms=int(st.st_mtime * 1000),
            media_type="inode/directory" if is_dir else _extension_media_type(os.path.basename(real)),
            is_directory=is_dir,
        )
        entries = tuple(sorted(os.listdir(real))) if is_dir else None
        return FileResource(meta, entries)

    def _file_child(self, resource: FileResource, name: str) -> Resource:
        if name in ("", ".", "..") or "/" in name or "\\" in name or "\0" in name:
            raise ResolveError("PathEscapesRoot", f"illegal path component {name!r}")
        if resource.meta.is_directory:
            return self._file_resource(os.path.join(resource.meta.absolute_path, name))
        if name == "content":
            with open(resource.meta.absolute_path, "rb") as fh:
                data = fh.read()
            return BinaryResource(data, sniff_media_type(data, resource.meta.name))
        raise ResolveError("NotFound", f"a regular file has no child {name!r} (use 'content')")

    # -- download ------------------------------------------------------

    def _download(self, url: str, accept: str | None) -> BinaryResource:
        key = hashlib.sha256(url.encode("utf-8")).hexdigest()
        if self.cache_dir:
            body_path = os.path.join(self.cache_dir, key + ".bin")
            type_path = os.path.join(self.cache_dir, key + ".type")
            if os.path.exists(body_path):
                with open(body_path, "rb") as fh:
                    data = fh.read()
                media_type = "application/octet-stream"
                if os.path.exists(type_path):
                    with open(type_path, "r", encoding="utf-8") as fh:
                        media_type = fh.read().strip()
                else:
                    media_type = sniff_media_type(data)
                return BinaryResource(data, media_type)
        try:
            session = requests.Session()
            session.max_redirects = DOWNLOAD_MAX_REDIRECTS
            headers = {"Accept": accept} if accept else {}
            resp = session.get(url, headers=headers, timeout=DOWNLOAD_TIMEOUT, stream=True)
            resp.raise_for_status()
            data = b""
            for chunk in resp.iter_content(chunk_size=65536):
                data += chunk
                if len(data) > DOWNLOAD_MAX_BYTES:
                    raise ResolveError("DownloadFailed", "response exceeds the 64 MiB limit")
            media_type = (resp.headers.get("Content-Type") or "").split(";")[0].strip()
            if not media_type:
                media_type = sniff_media_type(data)
        except ResolveError:
            raise
        except requests.RequestException as exc:
            raise ResolveError("DownloadFailed", str(exc))
        if self.cache_dir:
            os.makedirs(self.cache_dir, exist_ok=True)
            for path, payload in ((body_path, data), (type_path, media_type.encode())):
                fd, tmp = tempfile.mkstemp(dir=self.cache_dir)
                with os.fdopen(fd, "wb") as fh:
                    fh.write(payload)
                os.replace(tmp, path)
        return BinaryResource(data, media_type)

    # -- segment dispatch ----------------------------------------------

    def apply_segment(self, resource: Resource, segment: Segment) -> Resource:
        method = segment.method
        if method not in _ARITY:
            raise ResolveError("UnknownMethod", f"no such method {method!r}")
        if len(segment.params) not in _ARITY[method]:
            raise ResolveError(
                "BadParamCount",
                f"{method} takes {' or '.join(map(str, _ARITY[method]))} parameter(s), got {len(segment.params)}",
            )
        handler = getattr(self, f"_method_{method.lower()}")
        return handler(resource, segment.params)

    def _unsupported(self, method: str, resource: Resource) -> ResolveError:
        return ResolveError(
            "UnsupportedMethodForKind", f"{method} does not apply to {resource.kind.value}"
        )

    def _method_child(self, resource, params):
        (name,) = params
        if isinstance(resource, FileResource):
            return self._file_child(resource, name)
        if isinstance(resource, (CollectionResource, MapResource)):
            for label, link in resource.entries:
                if label == name:
                    return self.resolve(link)
            raise ResolveError("NotFound", f"no entry named {name!r}")
        if isinstance(resource, JsonResource) and isinstance(resource.value, dict):
            if name not in resource.value:
                raise ResolveError("NotFound", f"no key {name!r}")
            return JsonResource(resource.value[name])
        if isinstance(resource, BinaryResource) and name == "content":
            # a downloaded body is already raw content, so the
            # download@url/content/... form passes through unchanged
            return resource
        if isinstance(resource, RemoteResource):
            if not self.upload_dir:
                raise ResolveError("NotFound", "uploads are not configured")
            if "/" in name or name in ("", ".", ".."):
                raise ResolveError("PathEscapesRoot", f"illegal upload name {name!r}")
            return self._file_resource(os.path.join(self.upload_dir, name))
        raise self._unsupported("child", resource)

    def _method_index(self, resource, params):
        i = _int_param(params[0], "index")
        if isinstance(resource, CollectionResource):
            if i >= len(resource.entries):
                raise ResolveError("IndexOutOfRange", f"index {i} of {len(resource.entries)}")
            return self.resolve(resource.entries[i][1])
        if isinstance(resource, PowerpointResource):
            if i >= len(resource.slides_xml):
                raise ResolveError("IndexOutOfRange", f"slide index {i} of {len(resource.slides_xml)}")
            try:
                node = parse_xml(resource.slides_xml[i])
            except XmlParseError as exc:
                raise ResolveError("BadParamFormat", str(exc))
            return PowerpointSlideResource(node, i + 1, resource.slide_size_emu)
        if isinstance(resource, JsonResource) and isinstance(resource.value, list):
            if i >= len(resource.value):
                raise ResolveError("IndexOutOfRange", f"index {i} of {len(resource.value)}")
            return JsonResource(resource.value[i])
        raise self._unsupported("index", resource)

    def _method_line(self, resource, params):
        if not isinstance(resource, StringResource):
            raise self._unsupported("line", resource)
        i = _int_param(params[0], "line")
        lines = split_lines(resource.text)
        if i >= len(lines):
            raise ResolveError("IndexOutOfRange", f"line {i} of {len(lines)}")
        return StringResource(lines[i], source_text=resource.text, focus_line=i)

    def _method_substring(self, resource, params):
        if not isinstance(resource, StringResource):
            raise self._unsupported("substring", resource)
        start = _int_param(params[0], "start")
        end = _int_param(params[1], "end")
        if start > end or end > len(resource.text):
            raise ResolveError(
                "IndexOutOfRange", f"[{start},{end}) out of range for length {len(resource.text)}"
            )
        return StringResource(resource.text[start:end])

    def _method_rect(self, resource, params):
        if not isinstance(resource, ImageResource):
            raise self._unsupported("rect", resource)
        x, y, w, h = (_int_param(p, n) for p, n in zip(params, ("x", "y", "w", "h")))
        try:
            return RectResource(x, y, w, h, resource)
        except ValueError as exc:
            raise ResolveError("BadParamFormat", str(exc))

    def _method_cssselector(self, resource, params):
        if isinstance(resource, PowerpointSlideResource):
            root = slide_to_svg(resource)
            html_mode = False
        elif isinstance(resource, XmlishResource):
            root = resource.root
            html_mode = resource.html_mode
        else:
            raise self._unsupported("cssSelector", resource)
        try:
            sel = parse_selector(params[0])
        except SelectorParseError as exc:
            raise ResolveError("BadParamFormat", str(exc))
        match = select_first(root, sel, html_mode)
        if match is None:
            raise ResolveError("SelectorNoMatch", f"nothing matches {params[0]!r}")
        return XmlishResource(match, html_mode)

    def _method_download(self, resource, params):
        if not isinstance(resource, RemoteResource):
            raise self._unsupported("download", resource)
        url = params[0]
        accept = params[1] if len(params) == 2 else None
        if not url.startswith(("http://", "https://")):
            raise ResolveError("BadParamFormat", f"unsupported URL {url!r}")
        return self._download(url, accept)

    def _method_property(self, resource, params):
        from .resources import properties

        (key,) = params
        for k, v in properties(resource):
            if k == key:
                return StringResource(v)
        raise ResolveError("NotFound", f"{resource.kind.value} has no property {key!r}")

    def _method_to(self, resource, params):
        return convert(resource, params[0])

    # -- folding -------------------------------------------------------

    def resolve(self, link: DeepLink) -> Resource:
        first = link.segments[0]
        if first.method != "child" or len(first.params) != 1:
            raise ResolveError("NotFound", "a deep link starts with an entry name", 0)
        try:
            resource = self.root_resource(first.params[0])
        except ResolveError as exc:
            raise exc.at(0)
        for i, segment in enumerate(link.segments[1:], 1):
            try:
                resource = self.apply_segment(resource, segment)
            except ResolveError as exc:
                raise exc.at(i)
        return resource

    def resolve_path(self, raw_path: str) -> Resource:
        return self.resolve(parse_deep_link(raw_path))
