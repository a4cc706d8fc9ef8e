"""Per-year counts for fields (papers) and CPC nodes (patents)."""

from __future__ import annotations

from dataclasses import dataclass

from ..corpus.model import Corpus, CorpusError

PAPER = "paper"
PATENT = "patent"


@dataclass(frozen=True)
class FieldTimeline:
    window: tuple[int, int]
    series: dict[str, dict[int, int]]

    def dense(self, node_id: str) -> list[int]:
        lo, hi = self.window
        counts = self.series[node_id]
        return [counts.get(year, 0) for year in range(lo, hi + 1)]

    def to_dict(self) -> dict:
        return {
            "window": list(self.window),
            "series": {k: self.dense(k) for k in sorted(self.series)},
        }


def _paper_series(view: Corpus, field_id: str) -> dict[int, int]:
    counts: dict[int, int] = {}
    for pid in view.papers_in_field(field_id):
        year = view.papers[pid].year
        counts[year] = counts.get(year, 0) + 1
    return counts


def _patent_series(view: Corpus, node_id: str) -> dict[int, int]:
    counts: dict[int, int] = {}
    for patent_id in view.patents:
        patent = view.patents[patent_id]
        if any(node_id in code for code in patent.cpc_codes):
            year = patent.application_year
            counts[year] = counts.get(year, 0) + 1
    return counts


def field_timeline(view: Corpus, ids, kind: str | None = None) -> FieldTimeline:
    """Counts papers by publication year for field ids and patents by
    application year for CPC ids; `kind` forces one hierarchy when an id
    could be read as either."""
    series: dict[str, dict[int, int]] = {}
    for node_id in ids:
        in_fields = node_id in view.fields
        in_cpc = node_id in view.cpc
        if kind == PAPER and not in_fields:
            raise CorpusError(f"unknown field id {node_id!r}")
        if kind == PATENT and not in_cpc:
            raise CorpusError(f"unknown CPC id {node_id!r}")
        if kind is None and not (in_fields or in_cpc):
            raise CorpusError(f"unknown field or CPC id {node_id!r}")
        use_fields = kind == PAPER or (kind is None and in_fields)
        series[node_id] = (
            _paper_series(view, node_id) if use_fields else _patent_series(view, node_id)
        )
    return FieldTimeline(window=view.window, series=series)
