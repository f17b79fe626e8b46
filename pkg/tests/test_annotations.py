import pytest

from deeplinker.annotations import EmbeddedStore, SparqlStore
from deeplinker.grammar import parse_deep_link
from deeplinker.rdfio import BOOKMARK_CLASS, RDF_TYPE, Iri, Literal, Triple

BASE = "http://127.0.0.1:7276"
RDFS_COMMENT = "http://www.w3.org/2000/01/rdf-schema#comment"
LOGO_RECT_SUBJECT = Iri(
    BASE + "/filesystem/pictures/a.png/content/to@image/rect@600,109,188,36"
)


def comment_triple(text="Artificial", subject=LOGO_RECT_SUBJECT):
    return Triple(subject, Iri(RDFS_COMMENT), Literal(text))


class TestEmbeddedStore:
    def test_add_and_list_by_subject(self):
        store = EmbeddedStore()
        store.add_triple(comment_triple())
        assert store.list_by_subject(LOGO_RECT_SUBJECT) == [comment_triple()]

    def test_duplicate_add_is_noop(self):
        store = EmbeddedStore()
        store.add_triple(comment_triple())
        store.add_triple(comment_triple())
        assert len(store.all_triples()) == 1

    def test_unknown_subject_empty(self):
        assert EmbeddedStore().list_by_subject(Iri("http://x/none")) == []

    def test_three_adds_one_duplicate(self):
        store = EmbeddedStore()
        store.add_triple(comment_triple("a"))
        store.add_triple(comment_triple("b"))
        store.add_triple(comment_triple("a"))
        assert len(store.list_by_subject(LOGO_RECT_SUBJECT)) == 2

    def test_insertion_order_preserved(self):
        store = EmbeddedStore()
        for i in range(5):
            store.add_triple(comment_triple(f"v{i}"))
        assert [t.object.lexical for t in store.list_by_subject(LOGO_RECT_SUBJECT)] == [
            f"v{i}" for i in range(5)
        ]


class TestSearchLiteral:
    def test_case_insensitive_substring(self):
        store = EmbeddedStore()
        store.add_triple(comment_triple("Artificial"))
        results = store.search_literal("artificial")
        assert results == [(LOGO_RECT_SUBJECT, comment_triple("Artificial"))]

    def test_empty_needle_rejected(self):
        with pytest.raises(ValueError):
            EmbeddedStore().search_literal("")

    def test_two_matching_literals_two_rows(self):
        store = EmbeddedStore()
        store.add_triple(comment_triple("red fox"))
        store.add_triple(comment_triple("red panda"))
        assert len(store.search_literal("red")) == 2

    def test_iri_objects_never_match(self):
        store = EmbeddedStore()
        store.add_triple(Triple(LOGO_RECT_SUBJECT, Iri(RDF_TYPE), Iri("http://x/redthing")))
        assert store.search_literal("red") == []


class TestBookmarks:
    def test_bookmark_triple_form(self):
        store = EmbeddedStore()
        store.add_bookmark(parse_deep_link("/filesystem/c.txt"), BASE)
        (t,) = store.all_triples()
        assert t.subject == Iri(BASE + "/filesystem/c.txt")
        assert t.predicate == Iri(RDF_TYPE)
        assert t.object == Iri(BOOKMARK_CLASS)

    def test_double_click_one_triple(self):
        store = EmbeddedStore()
        for _ in range(2):
            store.add_bookmark(parse_deep_link("/filesystem/c.txt"), BASE)
        assert len(store.all_triples()) == 1

    def test_list_bookmarks_round_trip(self):
        store = EmbeddedStore()
        store.add_bookmark(parse_deep_link("/filesystem/c.txt"), BASE)
        store.add_triple(comment_triple())
        assert store.list_bookmarks() == [Iri(BASE + "/filesystem/c.txt")]

    def test_empty_store(self):
        assert EmbeddedStore().list_bookmarks() == []


class TestJournal:
    def test_replay_after_restart(self, tmp_path):
        journal = str(tmp_path / "annotations.nt")
        store = EmbeddedStore(journal)
        store.add_triple(comment_triple())
        store.add_bookmark(parse_deep_link("/filesystem/c.txt"), BASE)
        reopened = EmbeddedStore(journal)
        assert reopened.all_triples() == store.all_triples()
        assert reopened.list_by_subject(LOGO_RECT_SUBJECT) == [comment_triple()]

    def test_replay_dedupes(self, tmp_path):
        journal = str(tmp_path / "annotations.nt")
        with open(journal, "w") as fh:
            line = '<http://x/s> <http://x/p> "v" .'
            fh.write("# journal\n" + line + "\n" + line + "\n")
        assert len(EmbeddedStore(journal).all_triples()) == 1

    def test_any_add_sequence_replays_identically(self, tmp_path):
        journal = str(tmp_path / "j.nt")
        store = EmbeddedStore(journal)
        seq = ["a", "b", "a", "c", "b", "däta \"quoted\"\nnewline"]
        for s in seq:
            store.add_triple(comment_triple(s))
        assert EmbeddedStore(journal).all_triples() == store.all_triples()


class TestExternalModeEquivalence:
    """The SPARQL-protocol client against the service's own mounted
    endpoint must agree with the embedded store, operation by operation."""

    @pytest.fixture()
    def pair(self, live_service):
        base, service = live_service
        return SparqlStore(base + "/fuseki/annotation"), service.store

    def test_operations_agree(self, pair):
        remote, embedded = pair
        before = embedded.all_triples()
        adds = [
            comment_triple("Equivalence-Check"),
            comment_triple("equivalence-check TWO"),
            Triple(Iri(BASE + "/filesystem/eq.txt"), Iri(RDF_TYPE), Iri(BOOKMARK_CLASS)),
            comment_triple("Equivalence-Check"),
        ]
        for t in adds:
            remote.add_triple(t)
        assert embedded.list_by_subject(LOGO_RECT_SUBJECT) == remote.list_by_subject(LOGO_RECT_SUBJECT)
        assert embedded.search_literal("equivalence-check") == remote.search_literal("equivalence-check")
        assert remote.list_bookmarks() == embedded.list_bookmarks()
        assert remote.all_triples() == embedded.all_triples()
        assert len(embedded.all_triples()) == len(before) + 3  # set semantics
