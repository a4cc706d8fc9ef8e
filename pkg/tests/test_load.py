import json

import pytest

from sciflow.corpus.assignees import AssigneeRules, classify_assignee
from sciflow.corpus.load import IngestError, load_corpus

from conftest import tiny_corpus, tiny_rows, write_corpus_dir


def write_tiny(tmp_path, **overrides):
    papers, patents, researchers, field_rows, cpc_rows, edges, pairs = tiny_rows()
    kwargs = dict(
        papers=papers,
        patents=patents,
        researchers=researchers,
        field_rows=field_rows,
        cpc_rows=cpc_rows,
        paper_edges=edges,
        patent_pairs=pairs,
    )
    kwargs.update(overrides)
    return write_corpus_dir(tmp_path / "corpus", **kwargs)


def test_round_trip_matches_handbuilt(tmp_path):
    manifest = write_tiny(tmp_path)
    loaded = load_corpus(manifest)
    assert loaded == tiny_corpus()
    # classification comes from the default keyword rules
    assert loaded.patents["T1"].assignee_class == "University"
    assert loaded.patents["T2"].assignee_class == "Company"


def test_reference_ids_and_csv_union(tmp_path):
    # P2->P1 appears only in reference_ids, P3->P1 in both; still one edge each
    manifest = write_tiny(tmp_path)
    loaded = load_corpus(manifest)
    assert ("P2", "P1") in loaded.paper_citations
    assert len(loaded.paper_citations) == 7


def test_clean_load_report(tmp_path):
    loaded = load_corpus(write_tiny(tmp_path))
    report = loaded.report.to_dict()
    assert report["papers_loaded"] == 5
    assert report["patents_loaded"] == 3
    assert report["researchers_loaded"] == 4
    assert report["papers_dropped_outside_window"] == 0
    assert report["paper_citation_edges_pruned"] == 0


def test_window_drop_prunes_edges(tmp_path):
    papers, patents, researchers, field_rows, cpc_rows, edges, pairs = tiny_rows()
    papers.append(
        {"id": "P0", "title": "Ancient result", "year": 1990, "venue_id": "V1",
         "field_ids": [], "author_ids": [], "reference_ids": [], "grant_count": 0}
    )
    papers[0]["reference_ids"] = ["P0"]  # P1 cites the out-of-window paper
    manifest = write_corpus_dir(
        tmp_path / "corpus", papers, patents, researchers, field_rows, cpc_rows,
        edges, pairs,
    )
    loaded = load_corpus(manifest)
    assert "P0" not in loaded.papers
    report = loaded.report.to_dict()
    assert report["papers_dropped_outside_window"] == 1
    assert report["paper_citation_edges_pruned"] == 1
    assert not any("P0" in e for e in loaded.paper_citations)


def test_window_from_manifest_vs_argument(tmp_path):
    manifest = write_tiny(tmp_path, window=(2006, 2020))
    loaded = load_corpus(manifest)
    assert "P1" not in loaded.papers  # 2005 falls outside
    widened = load_corpus(manifest, window=(2001, 2020))
    assert "P1" in widened.papers


def test_patent_without_cpc_dropped(tmp_path):
    papers, patents, researchers, field_rows, cpc_rows, edges, pairs = tiny_rows()
    patents.append(
        {"id": "T9", "title": "No codes", "application_year": 2010,
         "assignee_name": "Mystery Org", "cpc_codes": []}
    )
    pairs.append(("T9", "P1"))
    manifest = write_corpus_dir(
        tmp_path / "corpus", papers, patents, researchers, field_rows, cpc_rows,
        edges, pairs,
    )
    loaded = load_corpus(manifest)
    assert "T9" not in loaded.patents
    report = loaded.report.to_dict()
    assert report["patents_dropped_missing_cpc"] == 1
    assert report["patent_citation_pairs_pruned"] == 1


def test_researcher_links_pruned_with_window(tmp_path):
    manifest = write_tiny(tmp_path, window=(2006, 2020))
    loaded = load_corpus(manifest)
    # R1 and R2 each lose their link to P1
    assert loaded.report.to_dict()["researcher_paper_links_pruned"] == 2
    assert loaded.researchers["R2"].paper_ids == ("P2",)


def test_dangling_citation_is_an_error(tmp_path):
    papers, patents, researchers, field_rows, cpc_rows, edges, pairs = tiny_rows()
    edges.append(("P1", "PX"))
    manifest = write_corpus_dir(
        tmp_path / "corpus", papers, patents, researchers, field_rows, cpc_rows,
        edges, pairs,
    )
    with pytest.raises(IngestError, match="dangling"):
        load_corpus(manifest)


def test_dangling_field_tag_is_an_error(tmp_path):
    papers, patents, researchers, field_rows, cpc_rows, edges, pairs = tiny_rows()
    papers[0]["field_ids"] = ["FLD.NOPE"]
    manifest = write_corpus_dir(
        tmp_path / "corpus", papers, patents, researchers, field_rows, cpc_rows,
        edges, pairs,
    )
    with pytest.raises(IngestError, match="field 'FLD.NOPE'"):
        load_corpus(manifest)


def test_invalid_cpc_triple_is_an_error(tmp_path):
    papers, patents, researchers, field_rows, cpc_rows, edges, pairs = tiny_rows()
    # G06F under section A breaks the parent chain
    patents[0]["cpc_codes"] = [["A", "G06", "G06F"]]
    manifest = write_corpus_dir(
        tmp_path / "corpus", papers, patents, researchers, field_rows, cpc_rows,
        edges, pairs,
    )
    with pytest.raises(IngestError, match="hierarchy"):
        load_corpus(manifest)


def test_duplicate_paper_id_is_an_error(tmp_path):
    papers, patents, researchers, field_rows, cpc_rows, edges, pairs = tiny_rows()
    papers.append(dict(papers[0]))
    manifest = write_corpus_dir(
        tmp_path / "corpus", papers, patents, researchers, field_rows, cpc_rows,
        edges, pairs,
    )
    with pytest.raises(IngestError, match="duplicate"):
        load_corpus(manifest)


def test_self_citation_is_an_error(tmp_path):
    papers, patents, researchers, field_rows, cpc_rows, edges, pairs = tiny_rows()
    edges.append(("P1", "P1"))
    manifest = write_corpus_dir(
        tmp_path / "corpus", papers, patents, researchers, field_rows, cpc_rows,
        edges, pairs,
    )
    with pytest.raises(IngestError, match="self reference"):
        load_corpus(manifest)


def test_bad_csv_header_is_an_error(tmp_path):
    manifest = write_tiny(tmp_path)
    csv_path = manifest.parent / "paper_citations.csv"
    rows = csv_path.read_text().splitlines()
    rows[0] = "src,dst"
    csv_path.write_text("\n".join(rows) + "\n")
    with pytest.raises(IngestError, match="header"):
        load_corpus(manifest)


def test_missing_manifest_key(tmp_path):
    manifest = write_tiny(tmp_path)
    content = json.loads(manifest.read_text())
    del content["papers"]
    manifest.write_text(json.dumps(content))
    with pytest.raises(IngestError, match="missing 'papers'"):
        load_corpus(manifest)


def test_missing_data_file(tmp_path):
    manifest = write_tiny(tmp_path)
    (manifest.parent / "patents.jsonl").unlink()
    with pytest.raises(IngestError, match="not found"):
        load_corpus(manifest)


def test_error_carries_path_and_line(tmp_path):
    manifest = write_tiny(tmp_path)
    papers_path = manifest.parent / "papers.jsonl"
    lines = papers_path.read_text().splitlines()
    bad = json.loads(lines[2])
    del bad["title"]
    lines[2] = json.dumps(bad)
    papers_path.write_text("\n".join(lines) + "\n")
    with pytest.raises(IngestError) as exc:
        load_corpus(manifest)
    message = str(exc.value)
    assert "papers.jsonl" in message
    assert ":3" in message


def test_assignee_rules_and_overrides(tmp_path):
    papers, patents, researchers, field_rows, cpc_rows, edges, pairs = tiny_rows()
    patents.append(
        {"id": "T4", "title": "Forced", "application_year": 2012,
         "assignee_name": "Plain Name", "cpc_codes": [["G", "G06", "G06F"]]}
    )
    out = tmp_path / "corpus"
    manifest = write_corpus_dir(
        out, papers, patents, researchers, field_rows, cpc_rows, edges, pairs,
        manifest_extra={"assignee_rules": "rules.json", "overrides": "overrides.json"},
    )
    (out / "rules.json").write_text(json.dumps(
        {"university": ["university"], "company": ["corp"]}
    ))
    (out / "overrides.json").write_text(json.dumps({"Plain Name": "Company"}))
    loaded = load_corpus(manifest)
    assert loaded.patents["T4"].assignee_class == "Company"


def test_classify_assignee_precedence():
    rules = AssigneeRules(university=("university",), company=("corp", "university corp"))
    # university list wins when both match
    assert classify_assignee("University Corp", rules) == "University"
    assert classify_assignee("Corp of Things", rules) == "Company"
    assert classify_assignee("Someone", rules) == "Other"
    assert classify_assignee("Someone", rules, {"Someone": "University"}) == "University"
    with pytest.raises(ValueError, match="unknown class"):
        classify_assignee("Someone", rules, {"Someone": "Weird"})
