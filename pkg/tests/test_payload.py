import json

import pytest

from sciflow.interplay.payload import build_payload

PAYLOAD_KEYS = {
    "columns", "rows", "cells", "icicle", "flows", "positions", "diversity",
    "timelines",
}


@pytest.fixture(scope="module")
def tiny_payload():
    from conftest import tiny_corpus

    return build_payload(tiny_corpus(), metrics={})


def test_exact_top_level_keys(tiny_payload):
    assert set(tiny_payload) == PAYLOAD_KEYS


def test_payload_is_plain_json(tiny_payload):
    # numpy scalars would blow up here
    text = json.dumps(tiny_payload)
    assert json.loads(text) == tiny_payload


def test_columns_follow_layout_ordering(tiny_payload):
    ordering = tiny_payload["positions"]["ordering"]
    assert [c["id"] for c in tiny_payload["columns"]] == ordering
    for col in tiny_payload["columns"]:
        assert set(col) == {"id", "label", "x"}
        assert col["x"] == tiny_payload["positions"]["fields"][col["id"]]


def test_column_labels_resolve(tiny_payload):
    labels = {c["id"]: c["label"] for c in tiny_payload["columns"]}
    assert labels["FLD.A.X"] == "Topic X"
    assert labels["(unassigned)"] == "Unassigned"


def test_rows_are_bin_dicts(tiny_payload):
    assert tiny_payload["rows"][0] == {"lo": 0, "hi": 0, "label": "0"}
    assert tiny_payload["rows"][-1] == {"lo": 21, "hi": None, "label": "21+"}


def test_cells_sorted_and_conserving(tiny_payload):
    keys = [(c["column"], c["row"]) for c in tiny_payload["cells"]]
    assert keys == sorted(keys)
    assert sum(c["count"] for c in tiny_payload["cells"]) == 5


def test_positions_block(tiny_payload):
    pos = tiny_payload["positions"]
    assert set(pos) == {"fields", "patents", "ordering", "objective"}
    assert set(pos["patents"]) == {"A61K", "G06F", "G06N"}
    assert sorted(pos["ordering"]) == sorted(pos["fields"])


def test_timeline_fields_conserve_papers(tiny_payload):
    timelines = tiny_payload["timelines"]
    assert timelines["window"] == [2001, 2020]
    assert len(timelines["years"]) == 20
    total = sum(sum(series) for series in timelines["fields"].values())
    assert total == 5
    assert set(timelines["groups"]) == {"A61K", "G06F", "G06N"}


def test_diversity_covers_columns(tiny_payload):
    assert set(tiny_payload["diversity"]) == {
        c["id"] for c in tiny_payload["columns"]
    }


def test_prediction_mode_payload():
    from conftest import tiny_corpus

    predictions = {"G06F": {"P1": 80.0, "P2": 10.0}}
    payload = build_payload(
        tiny_corpus(), mode="prediction", min_patentability=50.0,
        predictions=predictions, metrics={},
    )
    assert payload["flows"]["mode"] == "prediction"
    edges = payload["flows"]["cell_edges"]
    assert edges == [{"column": "FLD.A.X", "row": 1, "group": "G06F", "weight": 1}]


def test_synth_payload_sane(synth_corpus):
    payload = build_payload(synth_corpus, metrics={})
    assert set(payload) == PAYLOAD_KEYS
    assert sum(c["count"] for c in payload["cells"]) == len(synth_corpus.papers)
    assert len(payload["columns"]) >= 4
    json.dumps(payload)


def test_alternate_level_and_bins(synth_corpus):
    payload = build_payload(synth_corpus, level="L0", bins=(0, 2), metrics={})
    assert {c["row"] for c in payload["cells"]} <= {0, 1}
    assert len(payload["rows"]) == 2
