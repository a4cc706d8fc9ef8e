import pytest

from sciflow.corpus.model import (
    Corpus,
    FilterError,
    Paper,
    QueryFilter,
    Researcher,
    researchers_with_patent_impact,
)

from conftest import build_corpus


def test_citation_indexes(tiny):
    assert tiny.citers_of["P1"] == frozenset({"P2", "P3", "P5"})
    assert tiny.references_of["P5"] == frozenset({"P1", "P2", "P3"})
    assert "P1" not in tiny.references_of
    assert tiny.patents_citing["P3"] == frozenset({"T2", "T3"})
    assert tiny.papers_cited_by_patent["T2"] == frozenset({"P1", "P3"})


def test_authorship_is_union_of_both_sides():
    papers = [Paper("P1", "t", 2005, author_ids=("R1",))]
    researchers = [
        Researcher("R1", "a"),  # no paper_ids on the entity
        Researcher("R2", "b", paper_ids=("P1",)),  # no author_ids on the paper
    ]
    corpus = build_corpus(papers=papers, researchers=researchers)
    assert corpus.papers_of_researcher["R1"] == frozenset({"P1"})
    assert corpus.papers_of_researcher["R2"] == frozenset({"P1"})
    assert corpus.researchers_of_paper["P1"] == frozenset({"R1", "R2"})


def test_field_closure_includes_ancestors(tiny):
    assert tiny.paper_field_closure("P4") == frozenset(
        {"FLD.A.X.1", "FLD.A.X", "FLD.A", "FLD.B.Y", "FLD.B"}
    )
    assert tiny.paper_field_closure("P5") == frozenset()


def test_papers_in_field_uses_subtree(tiny):
    assert tiny.papers_in_field("FLD.A") == frozenset({"P1", "P2", "P4"})
    assert tiny.papers_in_field("FLD.B.Y") == frozenset({"P3", "P4"})
    with pytest.raises(Exception, match="unknown field"):
        tiny.papers_in_field("FLD.Z")


def test_empty_filter_is_identity(tiny):
    view = tiny.filter(QueryFilter())
    assert view == tiny
    assert view.snapshot_bytes() == tiny.snapshot_bytes()


def test_year_filter_prunes_edges(tiny):
    view = tiny.filter(QueryFilter.from_dict({"paper_year_range": [2005, 2010]}))
    assert set(view.papers) == {"P1", "P2", "P3"}
    # edges to P4/P5 disappear with the papers
    assert view.paper_citations == frozenset(
        {("P2", "P1"), ("P3", "P1"), ("P3", "P2")}
    )
    assert view.patent_citations == frozenset(
        {("T1", "P1"), ("T2", "P1"), ("T2", "P3"), ("T3", "P3")}
    )


def test_researcher_filter(tiny):
    view = tiny.filter(QueryFilter.from_dict({"researcher_ids": ["R1"]}))
    assert set(view.papers) == {"P1", "P4"}
    assert set(view.researchers) == {"R1"}


def test_field_filter_matches_closure(tiny):
    view = tiny.filter(QueryFilter.from_dict({"field_ids": ["FLD.B"]}))
    assert set(view.papers) == {"P3", "P4"}


def test_cpc_prefix_filter(tiny):
    view = tiny.filter(QueryFilter.from_dict({"cpc_prefixes": ["A61"]}))
    assert set(view.patents) == {"T2", "T3"}
    view2 = tiny.filter(QueryFilter.from_dict({"cpc_prefixes": ["G06F"]}))
    assert set(view2.patents) == {"T1"}


def test_patent_year_filter(tiny):
    view = tiny.filter(QueryFilter.from_dict({"patent_year_range": [2012, 2013]}))
    assert set(view.patents) == {"T2", "T3"}
    assert ("T1", "P1") not in view.patent_citations


def test_min_patentability_needs_scores(tiny):
    q = QueryFilter.from_dict({"min_patentability": 60})
    with pytest.raises(FilterError, match="requires"):
        tiny.filter(q)
    scores = {"P1": 90.0, "P3": 10.0}
    view = tiny.filter(q, patentability=scores)
    assert set(view.papers) == {"P1"}


def test_filter_validates_ids(tiny):
    with pytest.raises(FilterError, match="researcher"):
        tiny.filter(QueryFilter.from_dict({"researcher_ids": ["NOBODY"]}))
    with pytest.raises(FilterError, match="field"):
        tiny.filter(QueryFilter.from_dict({"field_ids": ["FLD.NOPE"]}))
    with pytest.raises(FilterError, match="cpc"):
        tiny.filter(QueryFilter.from_dict({"cpc_prefixes": ["Z99"]}))


def test_filter_parsing_errors():
    with pytest.raises(FilterError, match="unknown filter keys"):
        QueryFilter.from_dict({"paper_yr": [2001, 2002]})
    with pytest.raises(FilterError, match="empty"):
        QueryFilter.from_dict({"researcher_ids": []})
    with pytest.raises(FilterError, match="pair"):
        QueryFilter.from_dict({"paper_year_range": [2001]})
    with pytest.raises(FilterError, match="empty"):
        QueryFilter.from_dict({"paper_year_range": [2010, 2001]})
    with pytest.raises(FilterError, match="percentile"):
        QueryFilter.from_dict({"min_patentability": 101})
    with pytest.raises(FilterError, match="JSON"):
        QueryFilter.from_json("{not json")


def test_filter_from_json_blank_is_empty():
    assert QueryFilter.from_json("").is_empty()
    assert QueryFilter.from_json("  ").is_empty()
    assert QueryFilter.from_json("{}").is_empty()


def test_cache_key_stable_across_input_order():
    a = QueryFilter.from_dict({"field_ids": ["FLD.B", "FLD.A"]})
    b = QueryFilter.from_dict({"field_ids": ["FLD.A", "FLD.B"]})
    assert a.cache_key() == b.cache_key()


def test_filters_compose(tiny):
    q1 = QueryFilter.from_dict({"paper_year_range": [2005, 2011]})
    q2 = QueryFilter.from_dict({"field_ids": ["FLD.A"]})
    both = QueryFilter.from_dict(
        {"paper_year_range": [2005, 2011], "field_ids": ["FLD.A"]}
    )
    assert tiny.filter(q1).filter(q2) == tiny.filter(both)


def test_researchers_with_patent_impact(tiny):
    assert researchers_with_patent_impact(tiny) == frozenset({"R1", "R2", "R3"})


def test_snapshot_bytes_deterministic(tiny):
    from conftest import tiny_corpus

    assert tiny.snapshot_bytes() == tiny_corpus().snapshot_bytes()


def test_corpus_orders_entities_by_id():
    papers = [Paper("P9", "t", 2005), Paper("P1", "t", 2006)]
    corpus = build_corpus(papers=papers)
    assert list(corpus.papers) == ["P1", "P9"]


def test_window_is_carried(tiny):
    assert tiny.window == (2001, 2020)
    assert tiny.filter(QueryFilter()).window == (2001, 2020)
