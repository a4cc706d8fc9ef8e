import numpy as np
import pytest

from sciflow.corpus.model import CorpusError
from sciflow.interplay.flows import (
    HISTORICAL,
    PREDICTION,
    build_flows,
    field_similarity,
)
from sciflow.interplay.icicle import build_icicle
from sciflow.interplay.matrix import UNASSIGNED, build_matrix

from oracles import flow_weight_oracle


@pytest.fixture
def tiny_parts(tiny):
    matrix = build_matrix(tiny, level="L1", metrics={})
    return tiny, matrix, build_icicle(tiny)


def test_historical_edges_by_hand(tiny_parts):
    view, matrix, icicle = tiny_parts
    flows = build_flows(matrix, icicle, view)
    got = {(e.column, e.row, e.group): e.weight for e in flows.cell_edges}
    assert got == {
        ("FLD.A.X", 1, "A61K"): 1,
        ("FLD.A.X", 1, "G06F"): 1,
        ("FLD.A.X", 1, "G06N"): 1,
        ("FLD.B.Y", 1, "A61K"): 2,
        ("FLD.B.Y", 1, "G06N"): 1,
    }
    assert flows.mode == HISTORICAL


def test_multi_group_patent_feeds_one_edge_per_group(tiny_parts):
    view, matrix, icicle = tiny_parts
    flows = build_flows(matrix, icicle, view)
    # T2 alone explains the G06N edges in both columns
    weights = [e.weight for e in flows.cell_edges if e.group == "G06N"]
    assert weights == [1, 1]
    assert flows.group_total("A61K") == 3


def test_historical_matches_pair_scan_oracle(tiny_parts):
    view, matrix, icicle = tiny_parts
    flows = build_flows(matrix, icicle, view)
    for edge in flows.cell_edges:
        members = set(matrix.cells[(edge.column, edge.row)].paper_ids)
        assert edge.weight == flow_weight_oracle(view, members, edge.group)


def test_historical_matches_oracle_on_synth(synth_corpus):
    matrix = build_matrix(synth_corpus, level="L1", metrics={})
    icicle = build_icicle(synth_corpus)
    flows = build_flows(matrix, icicle, synth_corpus)
    assert len(flows.cell_edges) > 10
    for edge in flows.cell_edges[:25]:
        members = set(matrix.cells[(edge.column, edge.row)].paper_ids)
        assert edge.weight == flow_weight_oracle(synth_corpus, members, edge.group)


def test_column_edges_aggregate_rows(synth_corpus):
    matrix = build_matrix(synth_corpus, level="L1", metrics={})
    icicle = build_icicle(synth_corpus)
    flows = build_flows(matrix, icicle, synth_corpus)
    want: dict[tuple[str, str], int] = {}
    for e in flows.cell_edges:
        want[(e.column, e.group)] = want.get((e.column, e.group), 0) + e.weight
    got = {(e.column, e.group): e.weight for e in flows.column_edges}
    assert got == want
    assert all(e.row is None for e in flows.column_edges)


def test_prediction_mode_thresholds(tiny_parts):
    view, matrix, icicle = tiny_parts
    predictions = {
        "G06F": {"P1": 80.0, "P2": 40.0},
        "A61K": {"P3": 90.0},
        "ZZZZ": {"P1": 99.0},  # not in the icicle, must be ignored
    }
    flows = build_flows(
        matrix, icicle, view, mode=PREDICTION,
        min_patentability=50.0, predictions=predictions,
    )
    got = {(e.column, e.row, e.group): e.weight for e in flows.cell_edges}
    assert got == {
        ("FLD.A.X", 1, "G06F"): 1,
        ("FLD.B.Y", 1, "A61K"): 1,
    }
    assert flows.mode == PREDICTION


def test_prediction_mode_without_threshold_keeps_everything(tiny_parts):
    view, matrix, icicle = tiny_parts
    predictions = {"G06F": {"P1": 80.0, "P2": 40.0}}
    flows = build_flows(matrix, icicle, view, mode=PREDICTION, predictions=predictions)
    got = {(e.column, e.row, e.group): e.weight for e in flows.cell_edges}
    assert got == {
        ("FLD.A.X", 0, "G06F"): 1,  # P2 sits in the zero-citation row
        ("FLD.A.X", 1, "G06F"): 1,
    }


def test_prediction_mode_requires_table(tiny_parts):
    view, matrix, icicle = tiny_parts
    with pytest.raises(CorpusError, match="predictions"):
        build_flows(matrix, icicle, view, mode=PREDICTION)


def test_unknown_mode_rejected(tiny_parts):
    view, matrix, icicle = tiny_parts
    with pytest.raises(CorpusError, match="mode"):
        build_flows(matrix, icicle, view, mode="future")


def test_field_similarity_by_hand(tiny_parts):
    view, matrix, icicle = tiny_parts
    w = field_similarity(matrix, view)
    cols = matrix.columns
    assert cols == (UNASSIGNED, "FLD.A.X", "FLD.B.Y")
    # FLD.A.X gathers [A61K, G06F, G06N] = [1, 1, 1]; FLD.B.Y = [2, 0, 1]
    want = 3.0 / (np.sqrt(3.0) * np.sqrt(5.0))
    assert w[1, 2] == pytest.approx(want)
    assert w[2, 1] == pytest.approx(want)
    assert w[0, 1] == 0.0  # unassigned column has no citing patents
    assert np.diag(w).tolist() == [0.0, 0.0, 0.0]


def test_field_similarity_is_symmetric(synth_corpus):
    matrix = build_matrix(synth_corpus, level="L1", metrics={})
    w = field_similarity(matrix, synth_corpus)
    np.testing.assert_allclose(w, w.T, atol=1e-12)
    assert (w >= 0).all() and (w <= 1.0 + 1e-12).all()
