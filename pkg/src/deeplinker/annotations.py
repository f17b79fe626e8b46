"""RDF annotation store: embedded journal-backed default plus a SPARQL
1.1 protocol client for an external endpoint.

Both backends expose the same five operations with set semantics and
insertion order. The embedded journal is N-Triples, one triple per line,
``#`` comments ignored.
"""

from __future__ import annotations

import os
import threading

import requests

from .grammar import DeepLink, serialize_deep_link
from .rdfio import (
    BOOKMARK_CLASS,
    RDF_TYPE,
    Iri,
    Literal,
    Triple,
    parse_ntriples,
    triple_to_ntriples,
)

__all__ = ["AnnotationStore", "EmbeddedStore", "SparqlStore", "StorageFailure", "EndpointUnreachable"]


class StorageFailure(Exception):
    pass


class EndpointUnreachable(Exception):
    pass


class AnnotationStore:
    """Interface; see EmbeddedStore and SparqlStore."""

    def add_triple(self, t: Triple) -> None:
        raise NotImplementedError

    def list_by_subject(self, subject: Iri) -> list[Triple]:
        raise NotImplementedError

    def search_literal(self, needle: str) -> list[tuple[Iri, Triple]]:
        raise NotImplementedError

    def add_bookmark(self, link: DeepLink, base_iri: str) -> None:
        subject = Iri(base_iri + serialize_deep_link(link))
        self.add_triple(Triple(subject, Iri(RDF_TYPE), Iri(BOOKMARK_CLASS)))

    def list_bookmarks(self) -> list[Iri]:
        raise NotImplementedError

    def all_triples(self) -> list[Triple]:
        raise NotImplementedError


class EmbeddedStore(AnnotationStore):
    """In-memory index plus an append-only N-Triples journal on disk."""

    def __init__(self, journal_path: str | None = None):
        self._triples: list[Triple] = []
        self._seen: set[Triple] = set()
        self._lock = threading.Lock()
        self._journal_path = journal_path
        if journal_path and os.path.exists(journal_path):
            with open(journal_path, "r", encoding="utf-8") as fh:
                for t in parse_ntriples(fh.read()):
                    if t not in self._seen:
                        self._seen.add(t)
                        self._triples.append(t)

    def add_triple(self, t: Triple) -> None:
        with self._lock:
            if t in self._seen:
                return
            if self._journal_path:
                try:
                    os.makedirs(os.path.dirname(self._journal_path) or ".", exist_ok=True)
                    with open(self._journal_path, "a", encoding="utf-8") as fh:
                        fh.write(triple_to_ntriples(t) + "\n")
                        fh.flush()
                except OSError as exc:
                    raise StorageFailure(str(exc))
            self._seen.add(t)
            self._triples.append(t)

    def list_by_subject(self, subject: Iri) -> list[Triple]:
        with self._lock:
            return [t for t in self._triples if t.subject == subject]

    def search_literal(self, needle: str) -> list[tuple[Iri, Triple]]:
        if not needle:
            raise ValueError("needle must be nonempty")
        lowered = needle.lower()
        with self._lock:
            return [
                (t.subject, t)
                for t in self._triples
                if isinstance(t.object, Literal) and lowered in t.object.lexical.lower()
            ]

    def list_bookmarks(self) -> list[Iri]:
        with self._lock:
            return [
                t.subject
                for t in self._triples
                if t.predicate.value == RDF_TYPE
                and isinstance(t.object, Iri)
                and t.object.value == BOOKMARK_CLASS
            ]

    def all_triples(self) -> list[Triple]:
        with self._lock:
            return list(self._triples)


def _nt_term(value) -> str:
    from .rdfio import _term_to_nt  # shared formatting

    return _term_to_nt(value)


def _term_from_binding(b: dict):
    if b["type"] == "uri":
        return Iri(b["value"])
    if b["type"] in ("literal", "typed-literal"):
        return Literal(b["value"], datatype=b.get("datatype"), language=b.get("xml:lang"))
    raise EndpointUnreachable(f"unsupported binding type {b['type']!r}")


class SparqlStore(AnnotationStore):
    """Speaks SPARQL 1.1 protocol: POSTed query and update text."""

    def __init__(self, endpoint: str, timeout: float = 10.0):
        self.endpoint = endpoint
        self.timeout = timeout
        self._session = requests.Session()

    def _query(self, query: str) -> list[dict]:
        try:
            resp = self._session.post(
                self.endpoint,
                data=query.encode("utf-8"),
                headers={
                    "Content-Type": "application/sparql-query",
                    "Accept": "application/sparql-results+json",
                },
                timeout=self.timeout,
            )
            resp.raise_for_status()
            return resp.json()["results"]["bindings"]
        except (requests.RequestException, KeyError, ValueError) as exc:
            raise EndpointUnreachable(str(exc))

    def _update(self, update: str) -> None:
        try:
            resp = self._session.post(
                self.endpoint,
                data=update.encode("utf-8"),
                headers={"Content-Type": "application/sparql-update"},
                timeout=self.timeout,
            )
            resp.raise_for_status()
        except requests.RequestException as exc:
            raise EndpointUnreachable(str(exc))

    def add_triple(self, t: Triple) -> None:
        self._update("INSERT DATA { %s }" % triple_to_ntriples(t))

    def list_by_subject(self, subject: Iri) -> list[Triple]:
        rows = self._query(
            "SELECT ?p ?o WHERE { %s ?p ?o }" % _nt_term(subject)
        )
        return [
            Triple(subject, _term_from_binding(r["p"]), _term_from_binding(r["o"]))
            for r in rows
        ]

    def search_literal(self, needle: str) -> list[tuple[Iri, Triple]]:
        if not needle:
            raise ValueError("needle must be nonempty")
        escaped = needle.replace("\\", "\\\\").replace('"', '\\"').lower()
        rows = self._query(
            'SELECT ?s ?p ?o WHERE { ?s ?p ?o . '
            'FILTER(isLiteral(?o) && CONTAINS(LCASE(STR(?o)), "%s")) }' % escaped
        )
        out = []
        seen = set()
        for r in rows:
            t = Triple(_term_from_binding(r["s"]), _term_from_binding(r["p"]), _term_from_binding(r["o"]))
            if t not in seen:
                seen.add(t)
                out.append((t.subject, t))
        return out

    def list_bookmarks(self) -> list[Iri]:
        rows = self._query(
            "SELECT ?s WHERE { ?s <%s> <%s> }" % (RDF_TYPE, BOOKMARK_CLASS)
        )
        out = []
        seen = set()
        for r in rows:
            iri = _term_from_binding(r["s"])
            if iri not in seen:
                seen.add(iri)
                out.append(iri)
        return out

    def all_triples(self) -> list[Triple]:
        rows = self._query("SELECT ?s ?p ?o WHERE { ?s ?p ?o }")
        return [
            Triple(_term_from_binding(r["s"]), _term_from_binding(r["p"]), _term_from_binding(r["o"]))
            for r in rows
        ]
