"""Paper feature providers: signed hashed-title vectors or precomputed
embeddings loaded from a file."""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..corpus.model import Corpus, CorpusError

HASHED_TITLE = "hashed-title"
EXTERNAL_FILE = "external-file"

_TOKEN_SPLIT = re.compile(r"[^0-9a-z]+")


@dataclass(frozen=True)
class FeatureConfig:
    provider: str = HASHED_TITLE
    buckets: int = 64
    path: str | None = None

    def __post_init__(self):
        if self.provider not in (HASHED_TITLE, EXTERNAL_FILE):
            raise ValueError(f"unknown feature provider {self.provider!r}")
        if self.buckets < 1:
            raise ValueError("buckets must be >= 1")
        if self.provider == EXTERNAL_FILE and not self.path:
            raise ValueError("external-file provider needs a path")


@dataclass(frozen=True)
class FeatureMatrix:
    X: np.ndarray
    index: dict[str, int]  # paper id -> row
    provider: str

    def row(self, paper_id: str) -> np.ndarray:
        return self.X[self.index[paper_id]]


def tokenize(title: str) -> list[str]:
    return [t for t in _TOKEN_SPLIT.split(title.lower()) if t]


def token_slot(token: str, buckets: int) -> tuple[int, float]:
    """Stable bucket and sign for a token (md5, platform independent)."""
    digest = hashlib.md5(token.encode("utf-8")).digest()
    bucket = int.from_bytes(digest[:4], "big") % buckets
    sign = 1.0 if digest[4] % 2 == 0 else -1.0
    return bucket, sign


def hashed_title_row(title: str, buckets: int) -> np.ndarray:
    row = np.zeros(buckets, dtype=np.float64)
    for token in tokenize(title):
        bucket, sign = token_slot(token, buckets)
        row[bucket] += sign
    norm = np.linalg.norm(row)
    if norm > 0:
        row /= norm
    return row


def _load_external(path: Path, paper_ids: list[str]) -> np.ndarray:
    if not path.is_file():
        raise CorpusError(f"embedding file not found: {path}")
    vectors: dict[str, list[float]] = {}
    with path.open(encoding="utf-8") as fh:
        for n, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"{path}:{n}: invalid JSON: {exc}") from None
            vectors[str(row["paper_id"])] = [float(v) for v in row["vector"]]
    missing = [pid for pid in paper_ids if pid not in vectors]
    if missing:
        raise CorpusError(
            f"embedding file {path} missing {len(missing)} paper ids"
            f" (first: {missing[0]!r})"
        )
    widths = {len(vectors[pid]) for pid in paper_ids}
    if len(widths) > 1:
        raise CorpusError(f"embedding file {path} has mixed vector lengths {sorted(widths)}")
    return np.array([vectors[pid] for pid in paper_ids], dtype=np.float64)


def build_features(view: Corpus, cfg: FeatureConfig | None = None) -> FeatureMatrix:
    cfg = cfg or FeatureConfig()
    paper_ids = sorted(view.papers)
    if cfg.provider == HASHED_TITLE:
        X = np.zeros((len(paper_ids), cfg.buckets), dtype=np.float64)
        for i, pid in enumerate(paper_ids):
            X[i] = hashed_title_row(view.papers[pid].title, cfg.buckets)
    else:
        X = _load_external(Path(cfg.path), paper_ids)
    if not np.isfinite(X).all():
        raise CorpusError("feature matrix contains non-finite entries")
    return FeatureMatrix(X=X, index={pid: i for i, pid in enumerate(paper_ids)}, provider=cfg.provider)
