"""Immutable server state plus small synchronized result caches."""

from __future__ import annotations

import threading
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Any, Callable

from ..corpus.model import Corpus, QueryFilter
from ..metrics.papers import MetricRecord, MetricsConfig, compute_paper_metrics
from ..metrics.researchers import ResearcherMetrics, compute_researcher_metrics
from ..predictor.pipeline import PREDICT_WINDOW, p_index_table


class LruCache:
    def __init__(self, capacity: int):
        self.capacity = capacity
        self._lock = threading.Lock()
        self._entries: OrderedDict[str, Any] = OrderedDict()

    def get_or_build(self, key: str, build: Callable[[], Any]) -> Any:
        with self._lock:
            if key in self._entries:
                self._entries.move_to_end(key)
                return self._entries[key]
        value = build()
        with self._lock:
            self._entries[key] = value
            self._entries.move_to_end(key)
            while len(self._entries) > self.capacity:
                self._entries.popitem(last=False)
        return value


@dataclass
class ServerState:
    corpus: Corpus
    metrics_cfg: MetricsConfig
    predictions: dict[str, dict[str, float]] | None
    patentability: dict[str, float] | None
    pindex: dict[str, float | None]
    layout_cache: LruCache = field(default_factory=lambda: LruCache(64))
    view_cache: LruCache = field(default_factory=lambda: LruCache(16))

    @classmethod
    def build(
        cls,
        corpus: Corpus,
        metrics_cfg: MetricsConfig | None = None,
        predictions: dict[str, dict[str, float]] | None = None,
        predict_window: tuple[int, int] = PREDICT_WINDOW,
    ) -> "ServerState":
        patentability = None
        if predictions:
            groups = sorted(predictions)
            scored = sorted(
                set.intersection(*(set(predictions[g]) for g in groups))
            )
            patentability = {
                pid: float(
                    sum(predictions[g][pid] for g in groups) / len(groups)
                )
                for pid in scored
            }
        pindex = (
            p_index_table(patentability, corpus, predict_window)
            if patentability is not None
            else {rid: None for rid in sorted(corpus.researchers)}
        )
        return cls(
            corpus=corpus,
            metrics_cfg=metrics_cfg or MetricsConfig(),
            predictions=predictions,
            patentability=patentability,
            pindex=pindex,
        )

    def view_for(self, qf: QueryFilter) -> "FilteredView":
        key = qf.cache_key()

        def build() -> FilteredView:
            view = self.corpus.filter(qf, patentability=self.patentability)
            return FilteredView(view=view, metrics_cfg=self.metrics_cfg)

        return self.view_cache.get_or_build(key, build)


@dataclass
class FilteredView:
    """A filtered corpus plus lazily computed metric tables."""

    view: Corpus
    metrics_cfg: MetricsConfig
    _lock: threading.Lock = field(default_factory=threading.Lock)
    _paper_metrics: dict[str, MetricRecord] | None = None
    _researcher_metrics: dict[str, ResearcherMetrics] | None = None

    @property
    def paper_metrics(self) -> dict[str, MetricRecord]:
        with self._lock:
            if self._paper_metrics is None:
                self._paper_metrics = compute_paper_metrics(self.view, self.metrics_cfg)
            return self._paper_metrics

    @property
    def researcher_metrics(self) -> dict[str, ResearcherMetrics]:
        with self._lock:
            if self._researcher_metrics is None:
                self._researcher_metrics = compute_researcher_metrics(
                    self.view, self.metrics_cfg
                )
            return self._researcher_metrics
