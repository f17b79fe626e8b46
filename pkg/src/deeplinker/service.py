"""HTTP service wiring: deep-link GETs, annotation/bookmark POSTs,
uploads, literal search, static assets and the mounted SPARQL endpoint.

The handler receives the request path exactly as sent on the wire and
hands it undecoded to the link grammar.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
import threading
from dataclasses import dataclass
from email.parser import BytesParser
from email.policy import default as email_policy
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlsplit

from .annotations import (
    AnnotationStore,
    EmbeddedStore,
    EndpointUnreachable,
    SparqlStore,
    StorageFailure,
)
from .errors import ResolveError
from .grammar import LinkSyntaxError, parse_deep_link, serialize_deep_link
from .rdfio import Iri, Literal, Term, Triple, parse_ntriples
from .render import negotiate, render_html, render_json, render_turtle
from .resolver import Resolver
from .resources import FileResource

__all__ = ["ServiceConfig", "DeepLinkerService"]

UPLOAD_MAX_BYTES = 64 * 1024 * 1024

_STATUS_BY_CODE = {
    "UnknownMethod": 400,
    "BadParamCount": 400,
    "BadParamFormat": 422,
    "NotFound": 404,
    "IndexOutOfRange": 404,
    "SelectorNoMatch": 404,
    "UnsupportedMethodForKind": 422,
    "ConversionUnavailable": 422,
    "PathEscapesRoot": 403,
    "DownloadFailed": 502,
}

_IRI_RE = re.compile(r"[A-Za-z][A-Za-z0-9+.-]*://\S+\Z|urn:\S+\Z")


@dataclass
class ServiceConfig:
    root_dir: str
    bind_address: str = "127.0.0.1"
    port: int = 7276
    base_iri: str = ""
    sparql_endpoint: str | None = None
    upload_dir: str = ""
    cache_dir: str = ""
    journal_path: str = ""
    assets_dir: str = ""

    def __post_init__(self):
        if not os.path.isdir(self.root_dir):
            raise ValueError(f"root directory {self.root_dir!r} does not exist")
        # port 0 asks the OS for an ephemeral port (used by tests)
        if not 0 <= self.port <= 65535:
            raise ValueError(f"port {self.port} out of range")
        state = os.path.join(os.path.expanduser("~"), ".deeplinker")
        self.base_iri = (self.base_iri or f"http://{self.bind_address}:{self.port}").rstrip("/")
        self.upload_dir = self.upload_dir or os.path.join(state, "uploads")
        self.cache_dir = self.cache_dir or os.path.join(state, "cache")
        self.journal_path = self.journal_path or os.path.join(state, "annotations.nt")
        self.assets_dir = self.assets_dir or os.path.join(os.path.dirname(__file__), "static")


def _binding(term: Term) -> dict:
    if isinstance(term, Iri):
        return {"type": "uri", "value": term.value}
    b: dict = {"type": "literal", "value": term.lexical}
    if term.datatype:
        b["datatype"] = term.datatype
    if term.language:
        b["xml:lang"] = term.language
    return b


class _SparqlFacade:
    """Answers the SPARQL protocol query/update shapes the service's own
    client emits; not a general engine."""

    _INSERT_RE = re.compile(r"INSERT\s+DATA\s*\{(.*)\}\s*\Z", re.S | re.I)
    _BY_SUBJECT_RE = re.compile(r"SELECT\s+\?p\s+\?o\s+WHERE\s*\{\s*<([^>]*)>\s+\?p\s+\?o\s*\}", re.I)
    _SEARCH_RE = re.compile(
        r"SELECT\s+\?s\s+\?p\s+\?o\s+WHERE\s*\{\s*\?s\s+\?p\s+\?o\s*\.\s*"
        r"FILTER\(isLiteral\(\?o\)\s*&&\s*CONTAINS\(LCASE\(STR\(\?o\)\),\s*\"((?:[^\"\\]|\\.)*)\"\)\)\s*\}",
        re.I,
    )
    _BOOKMARKS_RE = re.compile(r"SELECT\s+\?s\s+WHERE\s*\{\s*\?s\s+<([^>]*)>\s+<([^>]*)>\s*\}", re.I)
    _ALL_RE = re.compile(r"SELECT\s+\?s\s+\?p\s+\?o\s+WHERE\s*\{\s*\?s\s+\?p\s+\?o\s*\}", re.I)

    def __init__(self, store: AnnotationStore):
        self.store = store

    def update(self, text: str) -> None:
        m = self._INSERT_RE.match(text.strip())
        if not m:
            raise ValueError("unsupported update shape")
        for t in parse_ntriples(m.group(1).strip()):
            self.store.add_triple(t)

    def query(self, text: str) -> dict:
        text = text.strip()
        m = self._BY_SUBJECT_RE.match(text)
        if m:
            rows = [
                {"p": _binding(t.predicate), "o": _binding(t.object)}
                for t in self.store.list_by_subject(Iri(m.group(1)))
            ]
            return {"head": {"vars": ["p", "o"]}, "results": {"bindings": rows}}
        m = self._SEARCH_RE.match(text)
        if m:
            needle = m.group(1).replace('\\"', '"').replace("\\\\", "\\")
            rows = [
                {"s": _binding(t.subject), "p": _binding(t.predicate), "o": _binding(t.object)}
                for _, t in self.store.search_literal(needle)
            ]
            return {"head": {"vars": ["s", "p", "o"]}, "results": {"bindings": rows}}
        m = self._BOOKMARKS_RE.match(text)
        if m:
            rows = [
                {"s": _binding(t.subject)}
                for t in self.store.all_triples()
                if t.predicate.value == m.group(1)
                and isinstance(t.object, Iri)
                and t.object.value == m.group(2)
            ]
            return {"head": {"vars": ["s"]}, "results": {"bindings": rows}}
        m = self._ALL_RE.match(text)
        if m:
            rows = [
                {"s": _binding(t.subject), "p": _binding(t.predicate), "o": _binding(t.object)}
                for t in self.store.all_triples()
            ]
            return {"head": {"vars": ["s", "p", "o"]}, "results": {"bindings": rows}}
        raise ValueError("unsupported query shape")


class DeepLinkerService:
    def __init__(self, config: ServiceConfig):
        self.config = config
        if config.sparql_endpoint:
            self.store: AnnotationStore = SparqlStore(config.sparql_endpoint)
        else:
            os.makedirs(os.path.dirname(config.journal_path) or ".", exist_ok=True)
            self.store = EmbeddedStore(config.journal_path)
        self.resolver = Resolver(
            config.root_dir,
            store=self.store,
            upload_dir=self._ensured(config.upload_dir),
            cache_dir=self._ensured(config.cache_dir),
            base_iri=config.base_iri,
        )
        self.sparql = _SparqlFacade(self.store)
        self._server: ThreadingHTTPServer | None = None

    @staticmethod
    def _ensured(path: str) -> str:
        os.makedirs(path, exist_ok=True)
        return path

    # representation pipeline, shared by the server and --resolve mode
    def represent(self, raw_path: str, accept: str | None):
        link = parse_deep_link(raw_path)
        resource = self.resolver.resolve(link)
        fmt = negotiate(accept, resource)
        subject = Iri(self.config.base_iri + serialize_deep_link(link))
        annotations = self.store.list_by_subject(subject)
        if fmt == "json":
            return render_json(resource, link)
        if fmt == "turtle" and isinstance(resource, FileResource):
            return render_turtle(resource, link, annotations, self.config.base_iri)
        return render_html(resource, link, annotations)

    def handler_class(self):
        service = self

        class Handler(BaseHTTPRequestHandler):
            protocol_version = "HTTP/1.1"
            server_version = "DeepLinker/0.1"

            def log_message(self, *args):  # quiet by default
                pass

            def _send(self, status: int, media_type: str, body: bytes, extra=None):
                self.send_response(status)
                self.send_header("Content-Type", media_type)
                self.send_header("Content-Length", str(len(body)))
                for k, v in (extra or {}).items():
                    self.send_header(k, v)
                self.end_headers()
                self.wfile.write(body)

            def _send_error_text(self, status: int, message: str):
                self._send(status, "text/plain; charset=utf-8", (message + "\n").encode())

            def do_GET(self):
                try:
                    service._get(self)
                except BrokenPipeError:
                    pass
                except Exception as exc:  # never an unhandled fault
                    try:
                        self._send_error_text(500, f"internal error: {exc}")
                    except Exception:
                        pass

            def do_POST(self):
                try:
                    service._post(self)
                except BrokenPipeError:
                    pass
                except Exception as exc:
                    try:
                        self._send_error_text(500, f"internal error: {exc}")
                    except Exception:
                        pass

        return Handler

    # -- GET routes ----------------------------------------------------

    def _get(self, h: BaseHTTPRequestHandler):
        parts = urlsplit(h.path)
        raw_path, query = parts.path, parse_qs(parts.query)
        if raw_path == "/":
            return self._entry_page(h)
        if raw_path.startswith("/assets/"):
            return self._asset(h, raw_path[len("/assets/"):])
        if raw_path == "/search":
            return self._search(h, query)
        if raw_path == "/fuseki/annotation":
            q = query.get("query", [None])[0]
            if not q:
                return h._send_error_text(400, "missing query parameter")
            return self._sparql_query(h, q)
        accept = h.headers.get("Accept")
        try:
            rep = self.represent(raw_path, accept)
        except LinkSyntaxError as exc:
            return h._send_error_text(400, f"bad deep link: {exc}")
        except ResolveError as exc:
            status = _STATUS_BY_CODE.get(exc.code, 500)
            return h._send_error_text(
                status, f"{exc.code} at segment {exc.at_segment}: {exc.detail}"
            )
        except (EndpointUnreachable, StorageFailure) as exc:
            return h._send_error_text(502, f"annotation backend failure: {exc}")
        h._send(200, rep.media_type, rep.body)

    def _entry_page(self, h):
        anchors = "".join(
            f'<li><a rel="child" href="/{name}">{name}</a></li>'
            for name in ("filesystem", "remote", "bookmarks")
        )
        body = (
            "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>DeepLinker</title>"
            "<link rel=\"stylesheet\" href=\"/assets/style.css\"></head><body>"
            '<h1 id="deeplink">/</h1><nav><ul class="children">'
            + anchors
            + "</ul></nav></body></html>"
        ).encode()
        h._send(200, "text/html; charset=utf-8", body)

    def _asset(self, h, name: str):
        if "/" in name or name.startswith(".") or not name:
            return h._send_error_text(404, "no such asset")
        path = os.path.join(self.config.assets_dir, name)
        if not os.path.isfile(path):
            return h._send_error_text(404, "no such asset")
        media = {
            ".js": "application/javascript",
            ".css": "text/css",
            ".map": "application/json",
        }.get(os.path.splitext(name)[1], "application/octet-stream")
        with open(path, "rb") as fh:
            h._send(200, media, fh.read())

    def _search(self, h, query):
        needle = (query.get("q", [""])[0] or "").strip()
        if not needle:
            return h._send(200, "application/json", b'{"results": []}')
        results = []
        for subject, t in self.store.search_literal(needle):
            row = {
                "subject": subject.value,
                "predicate": t.predicate.value,
                "object": t.object.lexical if isinstance(t.object, Literal) else t.object.value,
            }
            if subject.value.startswith(self.config.base_iri + "/"):
                row["path"] = subject.value[len(self.config.base_iri):]
            results.append(row)
        h._send(200, "application/json", json.dumps({"results": results}).encode())

    def _sparql_query(self, h, q: str):
        try:
            doc = self.sparql.query(q)
        except ValueError as exc:
            return h._send_error_text(400, str(exc))
        h._send(200, "application/sparql-results+json", json.dumps(doc).encode())

    # -- POST routes ---------------------------------------------------

    def _post(self, h: BaseHTTPRequestHandler):
        parts = urlsplit(h.path)
        length = int(h.headers.get("Content-Length") or 0)
        if length > UPLOAD_MAX_BYTES:
            return h._send_error_text(413, "request body too large")
        body = h.rfile.read(length) if length else b""
        if parts.path == "/annotations":
            return self._post_annotation(h, body)
        if parts.path == "/remote":
            return self._post_upload(h, body)
        if parts.path == "/fuseki/annotation":
            return self._post_sparql(h, body)
        h._send_error_text(404, "no such endpoint")

    def _post_annotation(self, h, body: bytes):
        form = {k: v[0] for k, v in parse_qs(body.decode("utf-8", errors="replace")).items()}
        subject_path = form.get("subject", "")
        predicate = form.get("predicate", "").strip()
        obj = form.get("object", "")
        term_type = form.get("type", "").strip() or ("iri" if _IRI_RE.match(obj) else "literal")
        if not subject_path or not predicate or "object" not in form:
            return h._send_error_text(400, "subject, predicate and object are required")
        try:
            link = parse_deep_link(subject_path)
        except LinkSyntaxError as exc:
            return h._send_error_text(400, f"bad subject link: {exc}")
        if not _IRI_RE.match(predicate):
            return h._send_error_text(400, f"predicate is not an absolute IRI: {predicate!r}")
        if term_type == "iri":
            if not _IRI_RE.match(obj.strip()):
                return h._send_error_text(400, f"object is not an absolute IRI: {obj!r}")
            term: Term = Iri(obj.strip())
        else:
            term = Literal(obj)
        subject = Iri(self.config.base_iri + serialize_deep_link(link))
        try:
            self.store.add_triple(Triple(subject, Iri(predicate), term))
        except (EndpointUnreachable, StorageFailure) as exc:
            return h._send_error_text(502, f"annotation backend failure: {exc}")
        h._send(
            303,
            "text/plain; charset=utf-8",
            b"stored\n",
            extra={"Location": serialize_deep_link(link)},
        )

    def _post_upload(self, h, body: bytes):
        ctype = h.headers.get("Content-Type", "")
        if not ctype.startswith("multipart/"):
            return h._send_error_text(400, "multipart/form-data required")
        msg = BytesParser(policy=email_policy).parsebytes(
            b"Content-Type: " + ctype.encode() + b"\r\nMIME-Version: 1.0\r\n\r\n" + body
        )
        file_part = None
        if msg.is_multipart():
            for part in msg.iter_parts():
                if part.get_filename() or part.get_param("name", header="content-disposition"):
                    file_part = part
                    break
        if file_part is None:
            return h._send_error_text(400, "no file part in multipart body")
        data = file_part.get_payload(decode=True) or b""
        if not data:
            return h._send_error_text(400, "empty upload")
        digest = hashlib.sha256(data).hexdigest()
        dest = os.path.join(self.config.upload_dir, digest)
        if not os.path.exists(dest):
            tmp = dest + ".tmp"
            with open(tmp, "wb") as fh:
                fh.write(data)
            os.replace(tmp, dest)
        link_path = f"/remote/{digest}"
        doc = {"link": link_path, "size": len(data)}
        h._send(201, "application/json", json.dumps(doc).encode())

    def _post_sparql(self, h, body: bytes):
        ctype = (h.headers.get("Content-Type") or "").split(";")[0].strip()
        text = body.decode("utf-8", errors="replace")
        if ctype == "application/x-www-form-urlencoded":
            form = parse_qs(text)
            if "update" in form:
                ctype, text = "application/sparql-update", form["update"][0]
            elif "query" in form:
                ctype, text = "application/sparql-query", form["query"][0]
        if ctype == "application/sparql-update":
            try:
                self.sparql.update(text)
            except (ValueError, StorageFailure) as exc:
                return h._send_error_text(400, str(exc))
            return h._send(204, "text/plain", b"")
        if ctype == "application/sparql-query":
            return self._sparql_query(h, text)
        h._send_error_text(415, "expected sparql query or update")

    # -- server lifecycle ----------------------------------------------

    def serve(self):
        self._server = ThreadingHTTPServer(
            (self.config.bind_address, self.config.port), self.handler_class()
        )
        self._server.serve_forever()

    def start_background(self) -> int:
        """Bind (port 0 picks a free one), serve on a daemon thread,
        return the bound port."""
        self._server = ThreadingHTTPServer(
            (self.config.bind_address, self.config.port), self.handler_class()
        )
        thread = threading.Thread(target=self._server.serve_forever, daemon=True)
        thread.start()
        return self._server.server_address[1]

    def shutdown(self):
        if self._server:
            self._server.shutdown()
            self._server.server_close()
            self._server = None
