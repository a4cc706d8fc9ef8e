"""Paper matrix: citation-range rows, primary-field columns, glyph medians."""

from __future__ import annotations

import statistics
from dataclasses import dataclass

from ..corpus.hierarchy import FIELD_LEVELS
from ..corpus.model import Corpus, CorpusError
from ..metrics.fields import diversity, entropy
from ..metrics.papers import (
    MetricRecord,
    MetricsConfig,
    compute_paper_metrics,
    patent_citation_total,
)

DEFAULT_BIN_EDGES = (0, 1, 3, 8, 21)
UNASSIGNED = "(unassigned)"

GLYPH_METRICS = (
    "team_size",
    "institution_count",
    "grant_count",
    "science_citation_5y",
    "disruption",
    "novelty",
)


class MatrixError(CorpusError):
    """Bad bin edges or an unknown hierarchy level."""


@dataclass(frozen=True)
class Bin:
    lo: int
    hi: int | None  # None = open-ended last range

    def contains(self, value: int) -> bool:
        return value >= self.lo and (self.hi is None or value <= self.hi)

    @property
    def label(self) -> str:
        if self.hi is None:
            return f"{self.lo}+"
        if self.hi == self.lo:
            return str(self.lo)
        return f"{self.lo}-{self.hi}"

    def to_dict(self) -> dict:
        return {"lo": self.lo, "hi": self.hi, "label": self.label}


def parse_bins(edges) -> tuple[Bin, ...]:
    """Edges like (0, 1, 3, 8, 21) become [0,0], [1,2], [3,7], [8,20], [21, inf)."""
    if isinstance(edges, str):
        parts = [p for p in edges.split(",") if p.strip()]
        try:
            edges = [int(p) for p in parts]
        except ValueError:
            raise MatrixError(f"bin edges must be integers: {edges!r}") from None
    edges = list(edges)
    if not edges:
        raise MatrixError("empty bins")
    if edges[0] != 0:
        raise MatrixError("first bin edge must be 0 to cover zero-citation papers")
    if any(b <= a for a, b in zip(edges, edges[1:])):
        raise MatrixError(f"bin edges must be strictly increasing: {edges}")
    bins = [Bin(lo, hi - 1) for lo, hi in zip(edges, edges[1:])]
    bins.append(Bin(edges[-1], None))
    return tuple(bins)


def row_of(count: int, bins: tuple[Bin, ...]) -> int:
    for i, b in enumerate(bins):
        if b.contains(count):
            return i
    raise MatrixError(f"count {count} falls outside the bin partition")


def primary_field(paper_id: str, view: Corpus, level: str) -> str:
    """Deepest tag's ancestor at the requested level; the tag itself when it
    sits above that level; a sentinel for untagged papers."""
    tags = [t for t in view.papers[paper_id].field_ids if t in view.fields]
    if not tags:
        return UNASSIGNED
    deepest = min(
        tags, key=lambda t: (-view.fields.depth_of(t), t)
    )
    ancestor = view.fields.ancestor_at(deepest, level)
    return ancestor if ancestor is not None else deepest


@dataclass(frozen=True)
class Cell:
    column: str
    row: int
    paper_ids: tuple[str, ...]
    count: int
    mean_patent_citation: float
    glyph: tuple[float | None, ...]

    def to_dict(self) -> dict:
        return {
            "column": self.column,
            "row": self.row,
            "paper_ids": list(self.paper_ids),
            "count": self.count,
            "mean_patent_citation": self.mean_patent_citation,
            "glyph": list(self.glyph),
        }


@dataclass(frozen=True)
class PaperMatrix:
    level: str
    bins: tuple[Bin, ...]
    columns: tuple[str, ...]
    cells: dict[tuple[str, int], Cell]
    diversity: dict[str, float]
    column_citations: dict[str, int]  # (patent, paper) pairs per column
    paper_cell: dict[str, tuple[str, int]]

    @property
    def total_count(self) -> int:
        return sum(cell.count for cell in self.cells.values())


def _normalize_bounds(
    records: dict[str, MetricRecord],
) -> dict[str, tuple[float, float] | None]:
    bounds: dict[str, tuple[float, float] | None] = {}
    for name in GLYPH_METRICS:
        values = [
            v for rec in records.values() if (v := getattr(rec, name)) is not None
        ]
        bounds[name] = (min(values), max(values)) if values else None
    return bounds


def _glyph(
    paper_ids: tuple[str, ...],
    records: dict[str, MetricRecord],
    bounds: dict[str, tuple[float, float] | None],
) -> tuple[float | None, ...]:
    out: list[float | None] = []
    for name in GLYPH_METRICS:
        span = bounds[name]
        if span is None:
            out.append(None)
            continue
        lo, hi = span
        values = []
        for pid in paper_ids:
            v = getattr(records[pid], name)
            if v is None:
                continue
            values.append(0.5 if hi == lo else (v - lo) / (hi - lo))
        out.append(float(statistics.median(values)) if values else None)
    return tuple(out)


def build_matrix(
    view: Corpus,
    level: str = "L1",
    bins=DEFAULT_BIN_EDGES,
    metrics: dict[str, MetricRecord] | None = None,
    cfg: MetricsConfig | None = None,
) -> PaperMatrix:
    if level not in FIELD_LEVELS:
        raise MatrixError(f"unknown field level {level!r}")
    bin_tuple = bins if bins and isinstance(bins[0], Bin) else parse_bins(bins)
    records = metrics if metrics is not None else compute_paper_metrics(view, cfg)

    assignment: dict[str, tuple[str, int]] = {}
    members: dict[tuple[str, int], list[str]] = {}
    lifetime = {pid: patent_citation_total(pid, view) for pid in view.papers}
    for pid in sorted(view.papers):
        column = primary_field(pid, view, level)
        row = row_of(lifetime[pid], bin_tuple)
        assignment[pid] = (column, row)
        members.setdefault((column, row), []).append(pid)

    bounds = _normalize_bounds(records)
    cells: dict[tuple[str, int], Cell] = {}
    for key in sorted(members):
        ids = tuple(members[key])
        counts = [lifetime[pid] for pid in ids]
        cells[key] = Cell(
            column=key[0],
            row=key[1],
            paper_ids=ids,
            count=len(ids),
            mean_patent_citation=float(sum(counts) / len(counts)),
            glyph=_glyph(ids, records, bounds),
        )

    columns = tuple(sorted({col for col, _ in cells}))
    column_citations = {col: 0 for col in columns}
    column_papers: dict[str, list[str]] = {col: [] for col in columns}
    for (col, _), cell in cells.items():
        column_papers[col].extend(cell.paper_ids)
        for pid in cell.paper_ids:
            column_citations[col] += len(view.patents_citing.get(pid, frozenset()))

    col_diversity: dict[str, float] = {}
    for col in columns:
        if col in view.fields:
            col_diversity[col] = diversity(col, view)
        else:
            sections: dict[tuple[str, str], int] = {}
            for pid in column_papers[col]:
                for patent_id in view.patents_citing.get(pid, frozenset()):
                    for section in {c[0] for c in view.patents[patent_id].cpc_codes}:
                        sections[(patent_id, section)] = 1
            merged: dict[str, int] = {}
            for (_, section) in sections:
                merged[section] = merged.get(section, 0) + 1
            col_diversity[col] = entropy(merged)

    return PaperMatrix(
        level=level,
        bins=bin_tuple,
        columns=columns,
        cells=cells,
        diversity=col_diversity,
        column_citations=column_citations,
        paper_cell=assignment,
    )
