import pytest
from hypothesis import given
from hypothesis import strategies as st

from taxotrace.errors import FormatError, InvalidArgumentError, NotFoundError, TurtleParseError
from taxotrace.taxonomy import (
    Taxonomy,
    ValidationReport,
    ancestors,
    parse_taxonomy_csv,
    parse_taxonomy_turtle,
    search_concepts,
    serialize_taxonomy_csv,
)

HEADER = "id,code,parent_id,pref_label,alt_labels,definition\n"


def csv_bytes(*rows):
    return (HEADER + "\n".join(rows)).encode("utf-8")


class TestParseCsv:
    def test_two_rows(self):
        tax = parse_taxonomy_csv(csv_bytes("T1,,,Pump station,,", "T2,,T1,Pump,pumps|pumping unit,"))
        assert isinstance(tax, Taxonomy)
        assert len(tax) == 2
        assert tax.roots == ("T1",)
        assert tax.concepts["T2"].parent == "T1"
        assert tax.concepts["T2"].alt_labels == {"pumps", "pumping unit"}

    def test_dangling_parent(self):
        report = parse_taxonomy_csv(csv_bytes("T1,,T9,Pump,,"))
        assert isinstance(report, ValidationReport)
        assert any(i.kind == "dangling-parent" and i.concept_id == "T1" for i in report.errors)

    def test_two_cycle(self):
        report = parse_taxonomy_csv(csv_bytes("A,,B,Alpha,,", "B,,A,Beta,,"))
        assert isinstance(report, ValidationReport)
        cycle = [i for i in report.errors if i.kind == "cycle"]
        assert cycle and "A" in cycle[0].message and "B" in cycle[0].message

    def test_duplicate_id(self):
        report = parse_taxonomy_csv(csv_bytes("A,,,Alpha,,", "A,,,Alpha2,,"))
        assert isinstance(report, ValidationReport)
        assert any(i.kind == "duplicate-id" for i in report.errors)

    def test_empty_label(self):
        report = parse_taxonomy_csv(csv_bytes("A,,,   ,,"))
        assert isinstance(report, ValidationReport)
        assert any(i.kind == "empty-label" for i in report.errors)

    def test_missing_column(self):
        with pytest.raises(FormatError, match="parent_id"):
            parse_taxonomy_csv(b"id,code,pref_label,alt_labels,definition\n")

    def test_alt_labels_drop_pref_duplicates(self):
        tax = parse_taxonomy_csv(csv_bytes("A,,,Pump,PUMP|pumps|Pumps,"))
        assert tax.concepts["A"].alt_labels == {"pumps"}


class TestRoundTrip:
    def test_fixture_round_trip(self, toy_taxonomy):
        again = parse_taxonomy_csv(serialize_taxonomy_csv(toy_taxonomy))
        assert again == toy_taxonomy

    def test_canonical_is_stable(self, toy_taxonomy):
        once = serialize_taxonomy_csv(toy_taxonomy)
        assert serialize_taxonomy_csv(parse_taxonomy_csv(once)) == once


class TestParseTurtle:
    def test_broader_becomes_parent(self):
        ttl = b"""@prefix skos: <http://www.w3.org/2004/02/skos/core#> .
        <urn:x:A> skos:prefLabel "Root" .
        <urn:x:B> skos:prefLabel "Child" ; skos:broader <urn:x:A> .
        """
        tax = parse_taxonomy_turtle(ttl)
        assert isinstance(tax, Taxonomy)
        assert tax.concepts["urn:x:B"].parent == "urn:x:A"
        assert tax.roots == ("urn:x:A",)

    def test_language_preference(self):
        ttl = b"""@prefix skos: <http://www.w3.org/2004/02/skos/core#> .
        <urn:x:A> skos:prefLabel "Pump"@en, "Pumpen"@sv .
        """
        tax = parse_taxonomy_turtle(ttl, lang="sv")
        assert tax.concepts["urn:x:A"].pref_label == "Pumpen"

    def test_untagged_fallback(self):
        ttl = b"""@prefix skos: <http://www.w3.org/2004/02/skos/core#> .
        <urn:x:A> skos:prefLabel "Plain", "English"@en .
        """
        tax = parse_taxonomy_turtle(ttl, lang="sv")
        assert tax.concepts["urn:x:A"].pref_label == "Plain"

    def test_unsupported_predicate_warns(self):
        ttl = b"""@prefix skos: <http://www.w3.org/2004/02/skos/core#> .
        <urn:x:A> skos:prefLabel "Pump" ; skos:related <urn:x:Z> .
        """
        tax = parse_taxonomy_turtle(ttl)
        assert isinstance(tax, Taxonomy)
        assert "urn:x:A" in tax.concepts

    def test_poly_hierarchy_rejected(self):
        ttl = b"""@prefix skos: <http://www.w3.org/2004/02/skos/core#> .
        <urn:x:A> skos:prefLabel "A" .
        <urn:x:B> skos:prefLabel "B" .
        <urn:x:C> skos:prefLabel "C" ; skos:broader <urn:x:A>, <urn:x:B> .
        """
        report = parse_taxonomy_turtle(ttl)
        assert isinstance(report, ValidationReport)
        assert any(i.kind == "poly-hierarchy" for i in report.errors)

    def test_syntax_error_reports_line(self):
        ttl = b'@prefix skos: <http://www.w3.org/2004/02/skos/core#> .\n<urn:x:A> skos:prefLabel ;;; .\n'
        with pytest.raises(TurtleParseError) as exc:
            parse_taxonomy_turtle(ttl)
        assert exc.value.line == 2

    def test_fixture_matches_csv_twin(self, toy_taxonomy, fixtures_dir):
        ttl = parse_taxonomy_turtle((fixtures_dir / "toy_taxonomy.ttl").read_bytes(), lang="sv")
        assert ttl == toy_taxonomy


class TestAncestors:
    def test_chain(self, toy_taxonomy):
        chain = ancestors(toy_taxonomy, "urn:coclass:VA.PS")
        assert [c.id for c in chain] == ["urn:coclass:T.VA", "urn:coclass:T"]

    def test_root_is_empty(self, toy_taxonomy):
        assert ancestors(toy_taxonomy, "urn:coclass:T") == []

    def test_unknown_id(self, toy_taxonomy):
        with pytest.raises(NotFoundError):
            ancestors(toy_taxonomy, "Z")

    def test_terminates_below_concept_count(self, toy_taxonomy):
        for cid in toy_taxonomy.concepts:
            assert len(ancestors(toy_taxonomy, cid)) < len(toy_taxonomy)


@pytest.fixture(scope="module")
def small():
    return parse_taxonomy_csv(csv_bytes("A,,,Pump,,", "B,,,Pump station,,", "C,,,Valve,,"))


class TestSearch:
    def test_exact_and_prefix(self, small):
        result = search_concepts(small, "pump", 10)
        assert [(c.pref_label, k) for c, k in result] == [("Pump", "exact-label"), ("Pump station", "prefix")]

    def test_case_insensitive(self, small):
        assert search_concepts(small, "PUMP", 10) == search_concepts(small, "pump", 10)

    def test_prefix_tie_breaks_lexicographically(self, small):
        result = search_concepts(small, "pum", 10)
        assert [(c.pref_label, k) for c, k in result] == [("Pump", "prefix"), ("Pump station", "prefix")]

    def test_empty_query_rejected(self, small):
        with pytest.raises(InvalidArgumentError):
            search_concepts(small, "   ", 10)

    def test_limit(self, small):
        assert len(search_concepts(small, "pump", 1)) == 1

    def test_alt_label_ranks_last(self):
        tax = parse_taxonomy_csv(csv_bytes("A,,,Valve,pump thing,", "B,,,Pump,,"))
        result = search_concepts(tax, "pump", 10)
        assert [(c.pref_label, k) for c, k in result] == [("Pump", "exact-label"), ("Valve", "alt-label")]

    def test_results_are_taxonomy_members(self, toy_taxonomy):
        for concept, _ in search_concepts(toy_taxonomy, "system", 50):
            assert concept.id in toy_taxonomy.concepts

    @given(st.text(alphabet="pumpstaion ", min_size=2, max_size=8))
    def test_substring_monotone_under_prefix(self, q):
        tax = parse_taxonomy_csv(csv_bytes("A,,,Pump,,", "B,,,Pump station,,", "C,,,Valve,,"))
        if not q.strip():
            return
        full = {c.id for c, _ in search_concepts(tax, q, 10)}
        shorter = {c.id for c, _ in search_concepts(tax, q.strip()[:1], 10)}
        assert full <= shorter
