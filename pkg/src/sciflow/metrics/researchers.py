"""Researcher-level aggregates over a corpus view."""

from __future__ import annotations

from dataclasses import dataclass

from ..corpus.model import Corpus, CorpusError
from .papers import MetricsConfig, science_citation_5y


@dataclass(frozen=True)
class ResearcherMetrics:
    researcher_id: str
    paper_count: int
    avg_science_citation_5y: float | None
    papers_cited_by_patents: int
    citing_patent_count: int
    patent_citation_count: int
    invention_disclosure_count: int | None
    granted_patent_count: int | None

    def to_dict(self) -> dict:
        return {
            "researcher_id": self.researcher_id,
            "paper_count": self.paper_count,
            "avg_science_citation_5y": self.avg_science_citation_5y,
            "papers_cited_by_patents": self.papers_cited_by_patents,
            "citing_patent_count": self.citing_patent_count,
            "patent_citation_count": self.patent_citation_count,
            "invention_disclosure_count": self.invention_disclosure_count,
            "granted_patent_count": self.granted_patent_count,
        }


def researcher_metrics(
    researcher_id: str, view: Corpus, cfg: MetricsConfig | None = None
) -> ResearcherMetrics:
    if researcher_id not in view.researchers:
        raise CorpusError(f"unknown researcher id {researcher_id!r}")
    cfg = cfg or MetricsConfig()
    researcher = view.researchers[researcher_id]
    papers = sorted(view.papers_of_researcher.get(researcher_id, ()))

    citations = [
        science_citation_5y(pid, view, include_self_citations=cfg.include_self_citations)
        for pid in papers
    ]
    avg = sum(citations) / len(citations) if citations else None

    citing_patents: set[str] = set()
    pair_count = 0
    cited_papers = 0
    for pid in papers:
        patents = view.patents_citing.get(pid, frozenset())
        if patents:
            cited_papers += 1
        citing_patents.update(patents)
        pair_count += len(patents)

    return ResearcherMetrics(
        researcher_id=researcher_id,
        paper_count=len(papers),
        avg_science_citation_5y=avg,
        papers_cited_by_patents=cited_papers,
        citing_patent_count=len(citing_patents),
        patent_citation_count=pair_count,
        invention_disclosure_count=researcher.invention_disclosure_count,
        granted_patent_count=researcher.granted_patent_count,
    )


def compute_researcher_metrics(
    view: Corpus, cfg: MetricsConfig | None = None
) -> dict[str, ResearcherMetrics]:
    return {
        rid: researcher_metrics(rid, view, cfg) for rid in sorted(view.researchers)
    }
