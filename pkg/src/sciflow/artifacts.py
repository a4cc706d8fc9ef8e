"""Artifact file conventions: every analytic output starts with a one-line
JSON header {tool_version, config_hash, seed}. Corpus data files follow the
ingest schema instead and carry no header."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any, Iterable

from . import __version__

TOOL_VERSION = __version__


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def config_hash(config: dict) -> str:
    """Hash of the resolved run config. Callers strip filesystem paths first
    so the hash is stable across checkouts."""
    return hashlib.sha256(canonical_json(config).encode("utf-8")).hexdigest()


def header(config: dict, seed: int) -> dict:
    return {
        "tool_version": TOOL_VERSION,
        "config_hash": config_hash(config),
        "seed": seed,
    }


def write_jsonl(path: Path, head: dict, rows: Iterable[dict]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(canonical_json(head) + "\n")
        for row in rows:
            fh.write(canonical_json(row) + "\n")


def write_json_artifact(path: Path, head: dict, payload: Any) -> None:
    """Two lines: header, then the payload object."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(canonical_json(head) + "\n")
        fh.write(canonical_json(payload) + "\n")


def read_json_artifact(path: Path) -> tuple[dict, Any]:
    with Path(path).open(encoding="utf-8") as fh:
        head = json.loads(fh.readline())
        payload = json.loads(fh.readline())
    return head, payload


def read_jsonl(path: Path) -> tuple[dict, list[dict]]:
    with Path(path).open(encoding="utf-8") as fh:
        head = json.loads(fh.readline())
        rows = [json.loads(line) for line in fh if line.strip()]
    return head, rows
