"""Per-group training fanout, patentability percentiles, and the P-index."""

from __future__ import annotations

import hashlib
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from ..corpus.model import Corpus, CorpusError
from .evaluate import auc, average_ranks
from .features import FeatureConfig, FeatureMatrix, build_features
from .gcn import GcnModel, TrainConfig, forward, train
from .graph import NormalizedAdjacency, normalize_adjacency

PREDICT_WINDOW = (2016, 2020)


@dataclass(frozen=True)
class SplitConfig:
    split_year: int = 2014
    test_year: int = 2015
    predict_window: tuple[int, int] = PREDICT_WINDOW
    train_fraction: float = 0.7
    seed: int = 0


@dataclass(frozen=True)
class Splits:
    train: np.ndarray
    val: np.ndarray
    test: np.ndarray
    predict: np.ndarray


def make_splits(view: Corpus, index: dict[str, int], cfg: SplitConfig) -> Splits:
    """Seeded 70/30 split of pre-split-year papers; one test year; the rest
    of the predict window scored but never trained on."""
    pool = [index[pid] for pid in sorted(view.papers) if view.papers[pid].year <= cfg.split_year]
    rng = np.random.default_rng(cfg.seed)
    perm = rng.permutation(len(pool))
    n_train = math.floor(cfg.train_fraction * len(pool))
    pool_arr = np.array(pool, dtype=np.intp)
    train_idx = np.sort(pool_arr[perm[:n_train]])
    val_idx = np.sort(pool_arr[perm[n_train:]])
    test_idx = np.array(
        sorted(
            index[pid]
            for pid in view.papers
            if view.papers[pid].year == cfg.test_year
        ),
        dtype=np.intp,
    )
    lo, hi = cfg.predict_window
    predict_idx = np.array(
        sorted(
            index[pid] for pid in view.papers if lo <= view.papers[pid].year <= hi
        ),
        dtype=np.intp,
    )
    return Splits(train=train_idx, val=val_idx, test=test_idx, predict=predict_idx)


def top_groups(view: Corpus, k: int = 50) -> list[str]:
    """CPC groups by descending count of distinct citing patents, ties by id."""
    counts: dict[str, set[str]] = {}
    for patent_id, paper_id in view.patent_citations:
        patent = view.patents[patent_id]
        for _, _, group in patent.cpc_codes:
            counts.setdefault(group, set()).add(patent_id)
    ranked = sorted(counts.items(), key=lambda kv: (-len(kv[1]), kv[0]))
    return [group for group, _ in ranked[:k]]


def group_labels(view: Corpus, group: str, index: dict[str, int]) -> np.ndarray:
    """One-hot labels, column 1 positive: cited within [0, 5] years by a
    patent carrying the group."""
    Y = np.zeros((len(index), 2), dtype=np.float64)
    Y[:, 0] = 1.0
    for pid, i in index.items():
        pub_year = view.papers[pid].year
        for patent_id in view.patents_citing.get(pid, frozenset()):
            patent = view.patents[patent_id]
            if not any(code[2] == group for code in patent.cpc_codes):
                continue
            if 0 <= patent.application_year - pub_year <= 5:
                Y[i] = (0.0, 1.0)
                break
    return Y


def group_seed(base_seed: int, group: str) -> int:
    digest = hashlib.sha256(f"{base_seed}:{group}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") % (2**32)


def percentile_scores(probs: dict[str, float]) -> dict[str, float]:
    """Rank percentile in [0, 100], average ranks on ties; a single paper
    sits at 50."""
    ids = sorted(probs)
    n = len(ids)
    if n == 0:
        return {}
    if n == 1:
        return {ids[0]: 50.0}
    ranks = average_ranks(np.array([probs[pid] for pid in ids]))
    return {pid: float((rank - 1.0) / (n - 1) * 100.0) for pid, rank in zip(ids, ranks)}


@dataclass(frozen=True)
class GroupPrediction:
    group: str
    model: GcnModel
    probs: dict[str, float]
    percentiles: dict[str, float]
    test_auc: float | None


@dataclass(frozen=True)
class PipelineResult:
    groups: tuple[str, ...]
    predictions: dict[str, GroupPrediction]
    patentability: dict[str, float]
    features: FeatureMatrix
    adjacency: NormalizedAdjacency
    splits: Splits
    split_config: SplitConfig = field(default_factory=SplitConfig)

    def prediction_rows(self) -> list[dict]:
        rows = []
        for group in self.groups:
            pred = self.predictions[group]
            for pid in sorted(pred.probs):
                rows.append(
                    {
                        "paper_id": pid,
                        "group": group,
                        "prob": pred.probs[pid],
                        "percentile": pred.percentiles[pid],
                    }
                )
        return rows


def _train_one_group(
    view: Corpus,
    group: str,
    features: FeatureMatrix,
    adjacency: NormalizedAdjacency,
    splits: Splits,
    train_cfg: TrainConfig,
) -> GroupPrediction:
    Y = group_labels(view, group, features.index)
    cfg = replace(train_cfg, seed=group_seed(train_cfg.seed, group))
    model = train(features.X, adjacency.matrix, Y, splits, cfg)
    Z = forward(features.X, adjacency.matrix, model.W0, model.W1, mode="eval")
    test_auc = (
        auc(Z[splits.test, 1], Y[splits.test, 1].astype(int))
        if len(splits.test)
        else None
    )
    id_of = {i: pid for pid, i in features.index.items()}
    probs = {id_of[int(i)]: float(Z[int(i), 1]) for i in splits.predict}
    return GroupPrediction(
        group=group,
        model=model,
        probs=probs,
        percentiles=percentile_scores(probs),
        test_auc=test_auc,
    )


def run_pipeline(
    view: Corpus,
    k_groups: int = 50,
    feature_cfg: FeatureConfig | None = None,
    train_cfg: TrainConfig | None = None,
    split_cfg: SplitConfig | None = None,
    jobs: int = 1,
) -> PipelineResult:
    """Train one model per top CPC group and average the per-group
    percentiles into the patentability table. Group runs are independent,
    so the fanout order never changes the result."""
    feature_cfg = feature_cfg or FeatureConfig()
    train_cfg = train_cfg or TrainConfig()
    split_cfg = split_cfg or SplitConfig(seed=train_cfg.seed)

    features = build_features(view, feature_cfg)
    adjacency = normalize_adjacency(view)
    splits = make_splits(view, features.index, split_cfg)
    groups = top_groups(view, k_groups)

    def runner(group: str) -> GroupPrediction:
        return _train_one_group(view, group, features, adjacency, splits, train_cfg)

    if jobs > 1 and len(groups) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(runner, groups))
    else:
        results = [runner(group) for group in groups]
    predictions = {pred.group: pred for pred in results}

    patentability: dict[str, float] = {}
    if groups:
        for pid in sorted(predictions[groups[0]].percentiles):
            values = [predictions[g].percentiles[pid] for g in groups]
            patentability[pid] = float(sum(values) / len(values))

    return PipelineResult(
        groups=tuple(groups),
        predictions=predictions,
        patentability=patentability,
        features=features,
        adjacency=adjacency,
        splits=splits,
        split_config=split_cfg,
    )


def score_groups(
    view: Corpus,
    models: dict[str, "GcnModel"],
    feature_cfg: FeatureConfig | None = None,
    split_cfg: SplitConfig | None = None,
) -> PipelineResult:
    """Rebuild predictions from already-trained checkpoints; no training."""
    feature_cfg = feature_cfg or FeatureConfig()
    split_cfg = split_cfg or SplitConfig()
    features = build_features(view, feature_cfg)
    adjacency = normalize_adjacency(view)
    splits = make_splits(view, features.index, split_cfg)
    id_of = {i: pid for pid, i in features.index.items()}

    groups = tuple(sorted(models))
    predictions: dict[str, GroupPrediction] = {}
    for group in groups:
        model = models[group]
        Y = group_labels(view, group, features.index)
        Z = forward(features.X, adjacency.matrix, model.W0, model.W1, mode="eval")
        test_auc = (
            auc(Z[splits.test, 1], Y[splits.test, 1].astype(int))
            if len(splits.test)
            else None
        )
        probs = {id_of[int(i)]: float(Z[int(i), 1]) for i in splits.predict}
        predictions[group] = GroupPrediction(
            group=group,
            model=model,
            probs=probs,
            percentiles=percentile_scores(probs),
            test_auc=test_auc,
        )

    patentability: dict[str, float] = {}
    if groups:
        for pid in sorted(predictions[groups[0]].percentiles):
            values = [predictions[g].percentiles[pid] for g in groups]
            patentability[pid] = float(sum(values) / len(values))
    return PipelineResult(
        groups=groups,
        predictions=predictions,
        patentability=patentability,
        features=features,
        adjacency=adjacency,
        splits=splits,
        split_config=split_cfg,
    )


def p_index(
    researcher_id: str,
    patentability: dict[str, float],
    view: Corpus,
    predict_window: tuple[int, int] = PREDICT_WINDOW,
) -> float | None:
    """Mean patentability of the researcher's predict-window papers; None
    when there are none."""
    if researcher_id not in view.researchers:
        raise CorpusError(f"unknown researcher id {researcher_id!r}")
    lo, hi = predict_window
    values = [
        patentability[pid]
        for pid in sorted(view.papers_of_researcher.get(researcher_id, ()))
        if lo <= view.papers[pid].year <= hi and pid in patentability
    ]
    if not values:
        return None
    return float(sum(values) / len(values))


def p_index_table(
    patentability: dict[str, float],
    view: Corpus,
    predict_window: tuple[int, int] = PREDICT_WINDOW,
) -> dict[str, float | None]:
    return {
        rid: p_index(rid, patentability, view, predict_window)
        for rid in sorted(view.researchers)
    }
