"""Per-paper scientific facts computed over an immutable corpus view."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping

from ..corpus.model import Corpus, CorpusError
from .novelty import NoveltyConfig, NoveltyScorer

CITATION_WINDOW_YEARS = 5

_EMPTY: frozenset[str] = frozenset()


@dataclass(frozen=True)
class MetricsConfig:
    """Knobs shared by all paper metrics.

    Self-citations (a citing paper sharing at least one author with the focal
    paper) are included by default; set include_self_citations=False to drop
    them from the 5-year science citation count.
    """

    novelty: NoveltyConfig = field(default_factory=NoveltyConfig)
    include_self_citations: bool = True


@dataclass(frozen=True)
class MetricRecord:
    paper_id: str
    team_size: int
    institution_count: int
    grant_count: int
    science_citation_5y: int
    disruption: float | None
    novelty: float | None
    patent_citation_5y: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "paper_id": self.paper_id,
            "team_size": self.team_size,
            "institution_count": self.institution_count,
            "grant_count": self.grant_count,
            "science_citation_5y": self.science_citation_5y,
            "disruption": self.disruption,
            "novelty": self.novelty,
            "patent_citation_5y": self.patent_citation_5y,
        }


def _require_paper(paper_id: str, view: Corpus):
    paper = view.papers.get(paper_id)
    if paper is None:
        raise CorpusError(f"unknown paper id {paper_id!r}")
    return paper


def disruption(paper_id: str, view: Corpus) -> float | None:
    """Disruption score in [-1, 1], or None when no subsequent paper qualifies.

    Over papers published strictly after the focal paper that cite it or any
    of its references: n_i cite only the focal paper, n_j cite both, n_k cite
    only references. D = (n_i - n_j) / (n_i + n_j + n_k).
    """
    focal = _require_paper(paper_id, view)
    refs = view.references_of.get(paper_id, _EMPTY)
    candidates = set(view.citers_of.get(paper_id, _EMPTY))
    for ref in refs:
        candidates |= view.citers_of.get(ref, _EMPTY)
    n_i = n_j = n_k = 0
    for cid in candidates:
        if view.papers[cid].year <= focal.year:
            continue
        cites_focal = paper_id in view.references_of.get(cid, _EMPTY)
        cites_refs = bool(refs & view.references_of.get(cid, _EMPTY))
        if cites_focal and cites_refs:
            n_j += 1
        elif cites_focal:
            n_i += 1
        elif cites_refs:
            n_k += 1
    total = n_i + n_j + n_k
    if total == 0:
        return None
    return (n_i - n_j) / total


def science_citation_5y(
    paper_id: str, view: Corpus, include_self_citations: bool = True
) -> int:
    """Distinct citing papers published within 5 years of the focal paper.

    The window is inclusive on both ends: same-year citations and citations in
    the fifth anniversary year both count.
    """
    focal = _require_paper(paper_id, view)
    count = 0
    focal_authors = view.researchers_of_paper.get(paper_id, _EMPTY)
    for cid in view.citers_of.get(paper_id, _EMPTY):
        delta = view.papers[cid].year - focal.year
        if not 0 <= delta <= CITATION_WINDOW_YEARS:
            continue
        if not include_self_citations:
            if view.researchers_of_paper.get(cid, _EMPTY) & focal_authors:
                continue
        count += 1
    return count


def patent_citation_5y(paper_id: str, view: Corpus) -> int:
    """Distinct citing patents whose application year falls within 5 years."""
    focal = _require_paper(paper_id, view)
    return sum(
        1
        for tid in view.patents_citing.get(paper_id, _EMPTY)
        if 0 <= view.patents[tid].application_year - focal.year <= CITATION_WINDOW_YEARS
    )


def patent_citation_total(paper_id: str, view: Corpus) -> int:
    """Lifetime count of distinct citing patents within the view."""
    _require_paper(paper_id, view)
    return len(view.patents_citing.get(paper_id, _EMPTY))


def _institution_count(paper_id: str, view: Corpus) -> int:
    paper = view.papers[paper_id]
    affiliations = set()
    for rid in paper.author_ids:
        researcher = view.researchers.get(rid)
        if researcher is not None and researcher.affiliation:
            affiliations.add(researcher.affiliation)
    return len(affiliations)


def paper_facts(
    paper_id: str,
    view: Corpus,
    cfg: MetricsConfig | None = None,
    novelty_scorer: NoveltyScorer | None = None,
) -> MetricRecord:
    """Bundle all per-paper facts into one record.

    Pass a shared NoveltyScorer when scoring many papers; building one per
    call repeats the randomization work.
    """
    cfg = cfg or MetricsConfig()
    paper = _require_paper(paper_id, view)
    scorer = novelty_scorer or NoveltyScorer(view, cfg.novelty)
    return MetricRecord(
        paper_id=paper_id,
        team_size=len(paper.author_ids),
        institution_count=_institution_count(paper_id, view),
        grant_count=paper.grant_count,
        science_citation_5y=science_citation_5y(
            paper_id, view, cfg.include_self_citations
        ),
        disruption=disruption(paper_id, view),
        novelty=scorer.score(paper_id),
        patent_citation_5y=patent_citation_5y(paper_id, view),
    )


def compute_paper_metrics(
    view: Corpus, cfg: MetricsConfig | None = None
) -> dict[str, MetricRecord]:
    """MetricRecord for every paper in the view, keyed by paper id."""
    cfg = cfg or MetricsConfig()
    scorer = NoveltyScorer(view, cfg.novelty)
    return {
        pid: paper_facts(pid, view, cfg, novelty_scorer=scorer) for pid in view.papers
    }
