"""Assembly of the single interplay payload consumed by the query service."""

from __future__ import annotations

from ..corpus.model import Corpus
from ..metrics.papers import MetricRecord, MetricsConfig
from .flows import HISTORICAL, build_flows, field_similarity
from .icicle import build_icicle
from .layout import patent_positions, solve_layout, target_order
from .matrix import DEFAULT_BIN_EDGES, UNASSIGNED, build_matrix


def _column_label(view: Corpus, column: str) -> str:
    if column in view.fields:
        return view.fields.get(column).label
    if column == UNASSIGNED:
        return "Unassigned"
    return column


def build_payload(
    view: Corpus,
    level: str = "L1",
    bins=DEFAULT_BIN_EDGES,
    alpha: float = 1.0,
    beta: float = 1.0,
    gamma: float = 1.0,
    mode: str = HISTORICAL,
    min_patentability: float | None = None,
    metrics: dict[str, MetricRecord] | None = None,
    predictions: dict[str, dict[str, float]] | None = None,
    metrics_cfg: MetricsConfig | None = None,
) -> dict:
    matrix = build_matrix(view, level=level, bins=bins, metrics=metrics, cfg=metrics_cfg)
    icicle = build_icicle(view)
    flows = build_flows(
        matrix,
        icicle,
        view,
        mode=mode,
        min_patentability=min_patentability,
        predictions=predictions,
    )
    w = field_similarity(matrix, view)
    targets = target_order(matrix)
    patents = patent_positions(icicle)
    solution = solve_layout(
        w, targets, patents, alpha=alpha, beta=beta, gamma=gamma, fields=matrix.columns
    )

    lo, hi = view.window
    years = list(range(lo, hi + 1))
    column_years: dict[str, dict[int, int]] = {c: {} for c in matrix.columns}
    for pid, (column, _) in matrix.paper_cell.items():
        year = view.papers[pid].year
        column_years[column][year] = column_years[column].get(year, 0) + 1
    group_years: dict[str, dict[int, int]] = {g: {} for g in icicle.groups()}
    for patent_id in view.patents:
        patent = view.patents[patent_id]
        for group in {code[2] for code in patent.cpc_codes}:
            if group in group_years:
                year = patent.application_year
                group_years[group][year] = group_years[group].get(year, 0) + 1

    return {
        "columns": [
            {
                "id": column,
                "label": _column_label(view, column),
                "x": solution.x[column],
            }
            for column in solution.ordering
        ],
        "rows": [b.to_dict() for b in matrix.bins],
        "cells": [matrix.cells[key].to_dict() for key in sorted(matrix.cells)],
        "icicle": icicle.to_dict(),
        "flows": flows.to_dict(),
        "positions": {
            "fields": {c: solution.x[c] for c in matrix.columns},
            "patents": patents,
            "ordering": list(solution.ordering),
            "objective": solution.objective,
        },
        "diversity": {c: matrix.diversity[c] for c in matrix.columns},
        "timelines": {
            "window": [lo, hi],
            "years": years,
            "fields": {
                c: [column_years[c].get(y, 0) for y in years] for c in matrix.columns
            },
            "groups": {
                g: [group_years[g].get(y, 0) for y in years]
                for g in sorted(group_years)
            },
        },
    }
