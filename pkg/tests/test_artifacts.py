import json

import sciflow
from sciflow.artifacts import (
    canonical_json,
    config_hash,
    header,
    read_json_artifact,
    read_jsonl,
    write_json_artifact,
    write_jsonl,
)


def test_canonical_json_is_sorted_and_compact():
    text = canonical_json({"b": 1, "a": [1, 2]})
    assert text == '{"a":[1,2],"b":1}'
    assert canonical_json({"s": "naïve"}) == '{"s":"naïve"}'  # no ascii escaping


def test_config_hash_ignores_key_order_but_not_values():
    a = config_hash({"x": 1, "y": 2})
    b = config_hash({"y": 2, "x": 1})
    c = config_hash({"x": 1, "y": 3})
    assert a == b
    assert a != c
    assert len(a) == 64


def test_header_shape():
    head = header({"k": 1}, seed=42)
    assert set(head) == {"tool_version", "config_hash", "seed"}
    assert head["seed"] == 42
    assert head["tool_version"] == sciflow.__version__


def test_jsonl_round_trip(tmp_path):
    path = tmp_path / "rows.jsonl"
    head = header({"cmd": "x"}, 7)
    rows = [{"id": "a", "v": 1}, {"id": "b", "v": None}]
    write_jsonl(path, head, rows)
    got_head, got_rows = read_jsonl(path)
    assert got_head == head
    assert got_rows == rows
    lines = path.read_text().splitlines()
    assert json.loads(lines[0]) == head  # header is the first line


def test_json_artifact_is_two_lines(tmp_path):
    path = tmp_path / "nested" / "payload.json"
    head = header({}, 0)
    payload = {"answer": [1, 2, 3]}
    write_json_artifact(path, head, payload)
    lines = path.read_text().splitlines()
    assert len(lines) == 2
    got_head, got_payload = read_json_artifact(path)
    assert got_head == head
    assert got_payload == payload
