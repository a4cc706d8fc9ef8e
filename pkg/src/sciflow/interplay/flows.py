"""Citation flows from matrix cells to CPC groups, and field similarity."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..corpus.model import Corpus, CorpusError
from .icicle import PatentIcicle
from .matrix import PaperMatrix

HISTORICAL = "historical"
PREDICTION = "prediction"


@dataclass(frozen=True)
class FlowEdge:
    column: str
    row: int | None  # None on column aggregates
    group: str
    weight: int

    def to_dict(self) -> dict:
        return {
            "column": self.column,
            "row": self.row,
            "group": self.group,
            "weight": self.weight,
        }


@dataclass(frozen=True)
class FlowSet:
    mode: str
    cell_edges: tuple[FlowEdge, ...]
    column_edges: tuple[FlowEdge, ...]

    def group_total(self, group: str) -> int:
        return sum(e.weight for e in self.cell_edges if e.group == group)

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "cell_edges": [e.to_dict() for e in self.cell_edges],
            "column_edges": [e.to_dict() for e in self.column_edges],
        }


def _edges_from_counts(counts: dict[tuple[str, int, str], int], mode: str) -> FlowSet:
    cell_edges = tuple(
        FlowEdge(column=col, row=row, group=group, weight=counts[(col, row, group)])
        for col, row, group in sorted(counts)
        if counts[(col, row, group)] > 0
    )
    column_counts: dict[tuple[str, str], int] = {}
    for (col, _, group), weight in counts.items():
        column_counts[(col, group)] = column_counts.get((col, group), 0) + weight
    column_edges = tuple(
        FlowEdge(column=col, row=None, group=group, weight=column_counts[(col, group)])
        for col, group in sorted(column_counts)
        if column_counts[(col, group)] > 0
    )
    return FlowSet(mode=mode, cell_edges=cell_edges, column_edges=column_edges)


def build_flows(
    matrix: PaperMatrix,
    icicle: PatentIcicle,
    view: Corpus,
    mode: str = HISTORICAL,
    min_patentability: float | None = None,
    predictions: dict[str, dict[str, float]] | None = None,
) -> FlowSet:
    """Historical mode counts (patent, paper) pairs; a patent carrying k
    distinct groups feeds k edges. Prediction mode counts (paper, group)
    predictions at or above the percentile threshold.

    `predictions` maps group id -> paper id -> percentile.
    """
    if mode not in (HISTORICAL, PREDICTION):
        raise CorpusError(f"unknown flow mode {mode!r}")
    shown_groups = set(icicle.groups())
    counts: dict[tuple[str, int, str], int] = {}

    if mode == HISTORICAL:
        for patent_id, paper_id in view.patent_citations:
            cell = matrix.paper_cell.get(paper_id)
            if cell is None:
                continue
            groups = {code[2] for code in view.patents[patent_id].cpc_codes}
            for group in groups & shown_groups:
                key = (cell[0], cell[1], group)
                counts[key] = counts.get(key, 0) + 1
        return _edges_from_counts(counts, mode)

    if predictions is None:
        raise CorpusError("prediction mode needs a predictions table")
    threshold = 0.0 if min_patentability is None else float(min_patentability)
    for group in sorted(set(predictions) & shown_groups):
        for paper_id, percentile in predictions[group].items():
            if percentile < threshold:
                continue
            cell = matrix.paper_cell.get(paper_id)
            if cell is None:
                continue
            key = (cell[0], cell[1], group)
            counts[key] = counts.get(key, 0) + 1
    return _edges_from_counts(counts, mode)


def field_similarity(matrix: PaperMatrix, view: Corpus) -> np.ndarray:
    """Cosine similarity of per-CPC-group citation-count vectors between the
    matrix columns; zero rows compare as 0."""
    columns = matrix.columns
    groups = sorted(
        {
            code[2]
            for patent_id in view.patents
            for code in view.patents[patent_id].cpc_codes
        }
    )
    group_index = {g: i for i, g in enumerate(groups)}
    vectors = np.zeros((len(columns), max(len(groups), 1)), dtype=np.float64)
    col_index = {c: i for i, c in enumerate(columns)}
    for patent_id, paper_id in view.patent_citations:
        cell = matrix.paper_cell.get(paper_id)
        if cell is None:
            continue
        ci = col_index[cell[0]]
        for group in {code[2] for code in view.patents[patent_id].cpc_codes}:
            vectors[ci, group_index[group]] += 1.0

    norms = np.linalg.norm(vectors, axis=1)
    w = np.zeros((len(columns), len(columns)), dtype=np.float64)
    for i in range(len(columns)):
        for j in range(len(columns)):
            if i == j or norms[i] == 0.0 or norms[j] == 0.0:
                continue
            w[i, j] = float(vectors[i] @ vectors[j] / (norms[i] * norms[j]))
    return w
