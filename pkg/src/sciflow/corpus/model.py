"""Immutable corpus store, indexes, and filtered views."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterable, Mapping

from .hierarchy import Hierarchy

UNIVERSITY = "University"
COMPANY = "Company"
OTHER = "Other"
ASSIGNEE_CLASSES = (UNIVERSITY, COMPANY, OTHER)

DEFAULT_WINDOW = (2001, 2020)

_EMPTY: frozenset[str] = frozenset()


class CorpusError(ValueError):
    """Invalid corpus content or an unresolvable reference."""


class FilterError(CorpusError):
    """A QueryFilter names unknown ids or carries an empty range."""


@dataclass(frozen=True)
class Paper:
    id: str
    title: str
    year: int
    venue_id: str | None = None
    field_ids: tuple[str, ...] = ()
    author_ids: tuple[str, ...] = ()
    reference_ids: tuple[str, ...] = ()
    grant_count: int = 0


@dataclass(frozen=True)
class Patent:
    id: str
    title: str
    application_year: int
    assignee_name: str
    assignee_class: str = OTHER
    cpc_codes: tuple[tuple[str, str, str], ...] = ()


@dataclass(frozen=True)
class Researcher:
    id: str
    name: str
    gender: str | None = None
    rank: str | None = None
    affiliation: str | None = None
    paper_ids: tuple[str, ...] = ()
    invention_disclosure_count: int | None = None
    granted_patent_count: int | None = None


@dataclass(frozen=True)
class LoadReport:
    """Counts reported by the loader for rows it dropped or pruned."""

    papers_loaded: int = 0
    patents_loaded: int = 0
    researchers_loaded: int = 0
    papers_dropped_outside_window: int = 0
    patents_dropped_missing_cpc: int = 0
    paper_citation_edges_pruned: int = 0
    patent_citation_pairs_pruned: int = 0
    researcher_paper_links_pruned: int = 0

    def to_dict(self) -> dict[str, int]:
        return {
            "papers_loaded": self.papers_loaded,
            "patents_loaded": self.patents_loaded,
            "researchers_loaded": self.researchers_loaded,
            "papers_dropped_outside_window": self.papers_dropped_outside_window,
            "patents_dropped_missing_cpc": self.patents_dropped_missing_cpc,
            "paper_citation_edges_pruned": self.paper_citation_edges_pruned,
            "patent_citation_pairs_pruned": self.patent_citation_pairs_pruned,
            "researcher_paper_links_pruned": self.researcher_paper_links_pruned,
        }


def _year_range(value: Any, name: str) -> tuple[int, int] | None:
    if value is None:
        return None
    try:
        lo, hi = int(value[0]), int(value[1])
    except (TypeError, ValueError, IndexError):
        raise FilterError(f"{name} must be a [lo, hi] pair") from None
    if lo > hi:
        raise FilterError(f"{name} is empty: [{lo}, {hi}]")
    return (lo, hi)


@dataclass(frozen=True)
class QueryFilter:
    """Conjunction of optional predicates applied uniformly across queries.

    Paper predicates: paper_year_range, researcher_ids (authored by any of
    them), field_ids (tagged at or below any of them), min_patentability.
    Patent predicates: patent_year_range, cpc_prefixes (any code at or below).
    Researcher predicate: researcher_ids.
    """

    researcher_ids: frozenset[str] | None = None
    paper_year_range: tuple[int, int] | None = None
    patent_year_range: tuple[int, int] | None = None
    field_ids: frozenset[str] | None = None
    cpc_prefixes: frozenset[str] | None = None
    min_patentability: float | None = None

    @classmethod
    def from_dict(cls, raw: Mapping[str, Any]) -> "QueryFilter":
        if not isinstance(raw, Mapping):
            raise FilterError("filter must be a JSON object")
        known = {
            "researcher_ids",
            "paper_year_range",
            "patent_year_range",
            "field_ids",
            "cpc_prefixes",
            "min_patentability",
        }
        unknown = set(raw) - known
        if unknown:
            raise FilterError(f"unknown filter keys: {sorted(unknown)}")

        def id_set(key: str) -> frozenset[str] | None:
            value = raw.get(key)
            if value is None:
                return None
            ids = frozenset(str(v) for v in value)
            if not ids:
                raise FilterError(f"{key} is present but empty")
            return ids

        min_pct = raw.get("min_patentability")
        if min_pct is not None:
            min_pct = float(min_pct)
            if not 0.0 <= min_pct <= 100.0:
                raise FilterError("min_patentability must be a percentile in [0, 100]")
        return cls(
            researcher_ids=id_set("researcher_ids"),
            paper_year_range=_year_range(raw.get("paper_year_range"), "paper_year_range"),
            patent_year_range=_year_range(raw.get("patent_year_range"), "patent_year_range"),
            field_ids=id_set("field_ids"),
            cpc_prefixes=id_set("cpc_prefixes"),
            min_patentability=min_pct,
        )

    @classmethod
    def from_json(cls, text: str) -> "QueryFilter":
        if not text or not text.strip():
            return cls()
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FilterError(f"filter is not valid JSON: {exc}") from None
        return cls.from_dict(raw)

    def to_dict(self) -> dict[str, Any]:
        return {
            "researcher_ids": sorted(self.researcher_ids) if self.researcher_ids else None,
            "paper_year_range": list(self.paper_year_range) if self.paper_year_range else None,
            "patent_year_range": list(self.patent_year_range) if self.patent_year_range else None,
            "field_ids": sorted(self.field_ids) if self.field_ids else None,
            "cpc_prefixes": sorted(self.cpc_prefixes) if self.cpc_prefixes else None,
            "min_patentability": self.min_patentability,
        }

    def cache_key(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def is_empty(self) -> bool:
        return all(
            v is None
            for v in (
                self.researcher_ids,
                self.paper_year_range,
                self.patent_year_range,
                self.field_ids,
                self.cpc_prefixes,
                self.min_patentability,
            )
        )


class Corpus:
    """Immutable store of papers, patents, researchers, citations, hierarchies.

    A filtered view is just another Corpus sharing the entity objects and the
    hierarchies, so every query works identically on views. Equality compares
    the surviving id sets and edge sets.
    """

    def __init__(
        self,
        *,
        papers: Iterable[Paper],
        patents: Iterable[Patent],
        researchers: Iterable[Researcher],
        fields: Hierarchy,
        cpc: Hierarchy,
        paper_citations: Iterable[tuple[str, str]] = (),
        patent_citations: Iterable[tuple[str, str]] = (),
        window: tuple[int, int] = DEFAULT_WINDOW,
        report: LoadReport | None = None,
    ):
        self.window = (int(window[0]), int(window[1]))
        self.papers: dict[str, Paper] = {p.id: p for p in sorted(papers, key=lambda x: x.id)}
        self.patents: dict[str, Patent] = {p.id: p for p in sorted(patents, key=lambda x: x.id)}
        self.researchers: dict[str, Researcher] = {
            r.id: r for r in sorted(researchers, key=lambda x: x.id)
        }
        self.fields = fields
        self.cpc = cpc
        self.paper_citations = frozenset((str(a), str(b)) for a, b in paper_citations)
        self.patent_citations = frozenset((str(a), str(b)) for a, b in patent_citations)
        self.report = report

    # -- identity ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Corpus):
            return NotImplemented
        return (
            self.window == other.window
            and self.papers.keys() == other.papers.keys()
            and self.patents.keys() == other.patents.keys()
            and self.researchers.keys() == other.researchers.keys()
            and self.paper_citations == other.paper_citations
            and self.patent_citations == other.patent_citations
        )

    def __repr__(self) -> str:
        return (
            f"Corpus(papers={len(self.papers)}, patents={len(self.patents)}, "
            f"researchers={len(self.researchers)}, paper_edges={len(self.paper_citations)}, "
            f"patent_pairs={len(self.patent_citations)})"
        )

    @property
    def paper_citation_count(self) -> int:
        return len(self.paper_citations)

    # -- derived indexes --------------------------------------------------

    @cached_property
    def citers_of(self) -> dict[str, frozenset[str]]:
        """cited paper id -> ids of papers citing it (within this view)."""
        acc: dict[str, set[str]] = {}
        for citing, cited in self.paper_citations:
            acc.setdefault(cited, set()).add(citing)
        return {k: frozenset(v) for k, v in acc.items()}

    @cached_property
    def references_of(self) -> dict[str, frozenset[str]]:
        """citing paper id -> ids of papers it cites (within this view)."""
        acc: dict[str, set[str]] = {}
        for citing, cited in self.paper_citations:
            acc.setdefault(citing, set()).add(cited)
        return {k: frozenset(v) for k, v in acc.items()}

    @cached_property
    def patents_citing(self) -> dict[str, frozenset[str]]:
        """paper id -> ids of patents citing it (within this view)."""
        acc: dict[str, set[str]] = {}
        for patent_id, paper_id in self.patent_citations:
            acc.setdefault(paper_id, set()).add(patent_id)
        return {k: frozenset(v) for k, v in acc.items()}

    @cached_property
    def papers_cited_by_patent(self) -> dict[str, frozenset[str]]:
        acc: dict[str, set[str]] = {}
        for patent_id, paper_id in self.patent_citations:
            acc.setdefault(patent_id, set()).add(paper_id)
        return {k: frozenset(v) for k, v in acc.items()}

    @cached_property
    def papers_of_researcher(self) -> dict[str, frozenset[str]]:
        """Authorship as the union of researcher.paper_ids and paper.author_ids."""
        acc: dict[str, set[str]] = {rid: set() for rid in self.researchers}
        for rid, researcher in self.researchers.items():
            acc[rid].update(pid for pid in researcher.paper_ids if pid in self.papers)
        for pid, paper in self.papers.items():
            for rid in paper.author_ids:
                if rid in acc:
                    acc[rid].add(pid)
        return {k: frozenset(v) for k, v in acc.items()}

    @cached_property
    def researchers_of_paper(self) -> dict[str, frozenset[str]]:
        acc: dict[str, set[str]] = {}
        for rid, pids in self.papers_of_researcher.items():
            for pid in pids:
                acc.setdefault(pid, set()).add(rid)
        return {k: frozenset(v) for k, v in acc.items()}

    @cached_property
    def _field_closure(self) -> dict[str, frozenset[str]]:
        """paper id -> its field tags plus all their ancestors."""
        out: dict[str, frozenset[str]] = {}
        chains: dict[str, tuple[str, ...]] = {}
        for pid, paper in self.papers.items():
            closure: set[str] = set()
            for fid in paper.field_ids:
                if fid not in chains:
                    chains[fid] = self.fields.chain(fid)
                closure.update(chains[fid])
            out[pid] = frozenset(closure)
        return out

    def paper_field_closure(self, paper_id: str) -> frozenset[str]:
        return self._field_closure.get(paper_id, _EMPTY)

    def papers_in_field(self, field_id: str) -> frozenset[str]:
        """Papers tagged with `field_id` or any of its descendants."""
        if field_id not in self.fields:
            raise CorpusError(f"unknown field id {field_id!r}")
        return frozenset(
            pid for pid, closure in self._field_closure.items() if field_id in closure
        )

    # -- filtering --------------------------------------------------------

    def _validate_filter(self, q: QueryFilter) -> None:
        if q.researcher_ids:
            missing = sorted(q.researcher_ids - self.researchers.keys())
            if missing:
                raise FilterError(f"unknown researcher ids in filter: {missing}")
        if q.field_ids:
            missing = sorted(fid for fid in q.field_ids if fid not in self.fields)
            if missing:
                raise FilterError(f"unknown field ids in filter: {missing}")
        if q.cpc_prefixes:
            missing = sorted(c for c in q.cpc_prefixes if c not in self.cpc)
            if missing:
                raise FilterError(f"unknown cpc ids in filter: {missing}")

    def _paper_matches(
        self, paper: Paper, q: QueryFilter, scores: Mapping[str, float] | None
    ) -> bool:
        if q.paper_year_range and not q.paper_year_range[0] <= paper.year <= q.paper_year_range[1]:
            return False
        if q.researcher_ids is not None:
            authors = self.researchers_of_paper.get(paper.id, _EMPTY)
            if not authors & q.researcher_ids:
                return False
        if q.field_ids is not None:
            if not self.paper_field_closure(paper.id) & q.field_ids:
                return False
        if q.min_patentability is not None:
            score = (scores or {}).get(paper.id)
            if score is None or score < q.min_patentability:
                return False
        return True

    def _patent_matches(self, patent: Patent, q: QueryFilter) -> bool:
        if q.patent_year_range and not (
            q.patent_year_range[0] <= patent.application_year <= q.patent_year_range[1]
        ):
            return False
        if q.cpc_prefixes is not None:
            tagged = {part for code in patent.cpc_codes for part in code}
            if not tagged & q.cpc_prefixes:
                return False
        return True

    def filter(
        self, q: QueryFilter, *, patentability: Mapping[str, float] | None = None
    ) -> "Corpus":
        """Return the view satisfying every present predicate of `q`.

        `patentability` maps paper id to its mean patentability percentile and
        is required when `q.min_patentability` is set.
        """
        self._validate_filter(q)
        if q.min_patentability is not None and patentability is None:
            raise FilterError("min_patentability filter requires patentability scores")
        papers = [p for p in self.papers.values() if self._paper_matches(p, q, patentability)]
        patents = [p for p in self.patents.values() if self._patent_matches(p, q)]
        researchers = (
            [r for r in self.researchers.values() if r.id in q.researcher_ids]
            if q.researcher_ids is not None
            else list(self.researchers.values())
        )
        paper_ids = {p.id for p in papers}
        patent_ids = {p.id for p in patents}
        return Corpus(
            papers=papers,
            patents=patents,
            researchers=researchers,
            fields=self.fields,
            cpc=self.cpc,
            paper_citations=(
                (a, b) for a, b in self.paper_citations if a in paper_ids and b in paper_ids
            ),
            patent_citations=(
                (t, p) for t, p in self.patent_citations if t in patent_ids and p in paper_ids
            ),
            window=self.window,
        )

    # -- serialization ----------------------------------------------------

    def to_snapshot_dict(self) -> dict[str, Any]:
        """Canonical content dict; equal corpora serialize to identical bytes."""

        def paper_row(p: Paper) -> dict[str, Any]:
            return {
                "id": p.id,
                "title": p.title,
                "year": p.year,
                "venue_id": p.venue_id,
                "field_ids": sorted(p.field_ids),
                "author_ids": list(p.author_ids),
                "reference_ids": sorted(p.reference_ids),
                "grant_count": p.grant_count,
            }

        def patent_row(p: Patent) -> dict[str, Any]:
            return {
                "id": p.id,
                "title": p.title,
                "application_year": p.application_year,
                "assignee_name": p.assignee_name,
                "assignee_class": p.assignee_class,
                "cpc_codes": sorted(list(code) for code in p.cpc_codes),
            }

        def researcher_row(r: Researcher) -> dict[str, Any]:
            return {
                "id": r.id,
                "name": r.name,
                "gender": r.gender,
                "rank": r.rank,
                "affiliation": r.affiliation,
                "paper_ids": sorted(r.paper_ids),
                "invention_disclosure_count": r.invention_disclosure_count,
                "granted_patent_count": r.granted_patent_count,
            }

        def node_row(node) -> dict[str, Any]:
            return {
                "id": node.id,
                "label": node.label,
                "level": node.level,
                "parent_id": node.parent_id,
            }

        return {
            "window": list(self.window),
            "papers": [paper_row(p) for p in self.papers.values()],
            "patents": [patent_row(p) for p in self.patents.values()],
            "researchers": [researcher_row(r) for r in self.researchers.values()],
            "fields": [node_row(n) for n in self.fields],
            "cpc": [node_row(n) for n in self.cpc],
            "paper_citations": sorted(list(e) for e in self.paper_citations),
            "patent_citations": sorted(list(e) for e in self.patent_citations),
            "report": self.report.to_dict() if self.report else None,
        }

    def snapshot_bytes(self) -> bytes:
        return json.dumps(
            self.to_snapshot_dict(), sort_keys=True, separators=(",", ":")
        ).encode("utf-8")


def researchers_with_patent_impact(view: Corpus) -> frozenset[str]:
    """Researchers owning at least one paper that a patent cites."""
    cited = {paper_id for _, paper_id in view.patent_citations}
    return frozenset(
        rid for rid, pids in view.papers_of_researcher.items() if pids & cited
    )
