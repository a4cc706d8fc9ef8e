"""Shared fixtures: a hand-checkable tiny corpus and a session synth corpus."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import pytest

from sciflow.corpus.hierarchy import CPC_LEVELS, FIELD_LEVELS, Hierarchy, HierarchyNode
from sciflow.corpus.load import load_corpus
from sciflow.corpus.model import Corpus, Paper, Patent, Researcher
from sciflow.synth import generate


def make_fields() -> Hierarchy:
    rows = [
        ("FLD.A", "Area A", "L0", None),
        ("FLD.A.X", "Topic X", "L1", "FLD.A"),
        ("FLD.A.X.1", "Subtopic X1", "L2", "FLD.A.X"),
        ("FLD.B", "Area B", "L0", None),
        ("FLD.B.Y", "Topic Y", "L1", "FLD.B"),
    ]
    return Hierarchy(
        [HierarchyNode(i, lab, lvl, par) for i, lab, lvl, par in rows], FIELD_LEVELS
    )


def make_cpc() -> Hierarchy:
    rows = [
        ("G", "Physics", "section", None),
        ("G06", "Computing", "subsection", "G"),
        ("G06F", "Digital data processing", "group", "G06"),
        ("G06N", "Computing arrangements", "group", "G06"),
        ("A", "Human necessities", "section", None),
        ("A61", "Medical science", "subsection", "A"),
        ("A61K", "Preparations", "group", "A61"),
    ]
    return Hierarchy(
        [HierarchyNode(i, lab, lvl, par) for i, lab, lvl, par in rows], CPC_LEVELS
    )


def build_corpus(
    papers=(),
    patents=(),
    researchers=(),
    paper_edges=(),
    patent_pairs=(),
    fields: Hierarchy | None = None,
    cpc: Hierarchy | None = None,
    window=(2001, 2020),
) -> Corpus:
    return Corpus(
        papers=papers,
        patents=patents,
        researchers=researchers,
        fields=fields or make_fields(),
        cpc=cpc or make_cpc(),
        paper_citations=paper_edges,
        patent_citations=patent_pairs,
        window=window,
    )


def tiny_corpus() -> Corpus:
    """Five papers, three patents, four researchers; metrics checkable by hand.

    Citation edges: P2->P1, P3->{P1,P2}, P4->P2, P5->{P1,P2,P3}.
    Patent pairs: T1->P1, T2->{P1,P3}, T3->P3.
    """
    papers = [
        Paper("P1", "Graph signals on lattices", 2005, "V1",
              ("FLD.A.X.1",), ("R1", "R2"), (), 2),
        Paper("P2", "Sparse spectral filters", 2006, "V2",
              ("FLD.A.X",), ("R2",), ("P1",), 0),
        Paper("P3", "Gene networks in yeast", 2010, "V1",
              ("FLD.B.Y",), ("R3",), ("P1", "P2"), 1),
        Paper("P4", "Filters revisited", 2011, "V2",
              ("FLD.A.X.1", "FLD.B.Y"), ("R1",), ("P2",), 0),
        Paper("P5", "A survey of everything", 2012, None,
              (), ("R4",), ("P1", "P2", "P3"), 0),
    ]
    patents = [
        Patent("T1", "Lattice codec", 2007, "Acme University", "University",
               (("G", "G06", "G06F"),)),
        Patent("T2", "Assay device", 2012, "Globex Corp", "Company",
               (("G", "G06", "G06N"), ("A", "A61", "A61K"))),
        Patent("T3", "Culture method", 2013, "Acme University", "University",
               (("A", "A61", "A61K"),)),
    ]
    researchers = [
        Researcher("R1", "Ada One", affiliation="Uni A", paper_ids=("P1", "P4"),
                   invention_disclosure_count=3, granted_patent_count=1),
        Researcher("R2", "Ben Two", affiliation="Uni A", paper_ids=("P1", "P2")),
        Researcher("R3", "Cam Three", affiliation="Uni B", paper_ids=("P3",)),
        Researcher("R4", "Dee Four", paper_ids=("P5",)),
    ]
    edges = [
        ("P2", "P1"),
        ("P3", "P1"), ("P3", "P2"),
        ("P4", "P2"),
        ("P5", "P1"), ("P5", "P2"), ("P5", "P3"),
    ]
    pairs = [("T1", "P1"), ("T2", "P1"), ("T2", "P3"), ("T3", "P3")]
    return build_corpus(papers, patents, researchers, edges, pairs)


@pytest.fixture
def tiny() -> Corpus:
    return tiny_corpus()


def write_corpus_dir(
    out: Path,
    papers: list[dict],
    patents: list[dict],
    researchers: list[dict],
    field_rows: list[dict],
    cpc_rows: list[dict],
    paper_edges: list[tuple[str, str]],
    patent_pairs: list[tuple[str, str]],
    window=(2001, 2020),
    manifest_extra: dict | None = None,
) -> Path:
    """Write a complete ingest directory; returns the manifest path."""
    out.mkdir(parents=True, exist_ok=True)

    def jsonl(name: str, rows: list[dict]):
        with (out / name).open("w", encoding="utf-8") as fh:
            for row in rows:
                fh.write(json.dumps(row) + "\n")

    jsonl("papers.jsonl", papers)
    jsonl("patents.jsonl", patents)
    jsonl("researchers.jsonl", researchers)
    jsonl("fields.jsonl", field_rows)
    jsonl("cpc.jsonl", cpc_rows)
    with (out / "paper_citations.csv").open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["citing_id", "cited_id"])
        writer.writerows(paper_edges)
    with (out / "paper_patent_citations.csv").open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["patent_id", "paper_id"])
        writer.writerows(patent_pairs)
    manifest = {
        "papers": "papers.jsonl",
        "patents": "patents.jsonl",
        "researchers": "researchers.jsonl",
        "fields": "fields.jsonl",
        "cpc": "cpc.jsonl",
        "paper_citations": "paper_citations.csv",
        "paper_patent_citations": "paper_patent_citations.csv",
        "window": list(window),
    }
    if manifest_extra:
        manifest.update(manifest_extra)
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2))
    return out / "manifest.json"


def tiny_rows():
    """The tiny corpus as raw ingest rows, for loader round-trip tests."""
    papers = [
        {"id": "P1", "title": "Graph signals on lattices", "year": 2005,
         "venue_id": "V1", "field_ids": ["FLD.A.X.1"], "author_ids": ["R1", "R2"],
         "reference_ids": [], "grant_count": 2},
        {"id": "P2", "title": "Sparse spectral filters", "year": 2006,
         "venue_id": "V2", "field_ids": ["FLD.A.X"], "author_ids": ["R2"],
         "reference_ids": ["P1"], "grant_count": 0},
        {"id": "P3", "title": "Gene networks in yeast", "year": 2010,
         "venue_id": "V1", "field_ids": ["FLD.B.Y"], "author_ids": ["R3"],
         "reference_ids": ["P1", "P2"], "grant_count": 1},
        {"id": "P4", "title": "Filters revisited", "year": 2011,
         "venue_id": "V2", "field_ids": ["FLD.A.X.1", "FLD.B.Y"],
         "author_ids": ["R1"], "reference_ids": ["P2"], "grant_count": 0},
        {"id": "P5", "title": "A survey of everything", "year": 2012,
         "venue_id": None, "field_ids": [], "author_ids": ["R4"],
         "reference_ids": ["P1", "P2", "P3"], "grant_count": 0},
    ]
    patents = [
        {"id": "T1", "title": "Lattice codec", "application_year": 2007,
         "assignee_name": "Acme University", "cpc_codes": [["G", "G06", "G06F"]]},
        {"id": "T2", "title": "Assay device", "application_year": 2012,
         "assignee_name": "Globex Corp",
         "cpc_codes": [["G", "G06", "G06N"], ["A", "A61", "A61K"]]},
        {"id": "T3", "title": "Culture method", "application_year": 2013,
         "assignee_name": "Acme University", "cpc_codes": [["A", "A61", "A61K"]]},
    ]
    researchers = [
        {"id": "R1", "name": "Ada One", "affiliation": "Uni A",
         "paper_ids": ["P1", "P4"], "invention_disclosure_count": 3,
         "granted_patent_count": 1},
        {"id": "R2", "name": "Ben Two", "affiliation": "Uni A",
         "paper_ids": ["P1", "P2"]},
        {"id": "R3", "name": "Cam Three", "affiliation": "Uni B",
         "paper_ids": ["P3"]},
        {"id": "R4", "name": "Dee Four", "paper_ids": ["P5"]},
    ]
    field_rows = [
        {"id": "FLD.A", "label": "Area A", "level": "L0", "parent_id": None},
        {"id": "FLD.A.X", "label": "Topic X", "level": "L1", "parent_id": "FLD.A"},
        {"id": "FLD.A.X.1", "label": "Subtopic X1", "level": "L2",
         "parent_id": "FLD.A.X"},
        {"id": "FLD.B", "label": "Area B", "level": "L0", "parent_id": None},
        {"id": "FLD.B.Y", "label": "Topic Y", "level": "L1", "parent_id": "FLD.B"},
    ]
    cpc_rows = [
        {"id": "G", "label": "Physics", "level": "section", "parent_id": None},
        {"id": "G06", "label": "Computing", "level": "subsection", "parent_id": "G"},
        {"id": "G06F", "label": "Digital data processing", "level": "group",
         "parent_id": "G06"},
        {"id": "G06N", "label": "Computing arrangements", "level": "group",
         "parent_id": "G06"},
        {"id": "A", "label": "Human necessities", "level": "section",
         "parent_id": None},
        {"id": "A61", "label": "Medical science", "level": "subsection",
         "parent_id": "A"},
        {"id": "A61K", "label": "Preparations", "level": "group",
         "parent_id": "A61"},
    ]
    paper_edges = [("P3", "P1"), ("P5", "P3")]  # the rest come from reference_ids
    patent_pairs = [("T1", "P1"), ("T2", "P1"), ("T2", "P3"), ("T3", "P3")]
    return papers, patents, researchers, field_rows, cpc_rows, paper_edges, patent_pairs


@pytest.fixture(scope="session")
def synth_dir(tmp_path_factory) -> Path:
    out = tmp_path_factory.mktemp("synth")
    generate(out, seed=7)
    return out


@pytest.fixture(scope="session")
def synth_corpus(synth_dir) -> Corpus:
    return load_corpus(synth_dir / "manifest.json")


@pytest.fixture(scope="session")
def small_synth_dir(tmp_path_factory) -> Path:
    """A much smaller synthetic corpus for CLI round trips."""
    out = tmp_path_factory.mktemp("smallsynth")
    generate(out, seed=11, papers=240, patents=80, links=600)
    return out
