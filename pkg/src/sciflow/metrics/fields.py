"""Field-level diversity of the patent side of the interface."""

from __future__ import annotations

import math
from collections import Counter

from ..corpus.model import Corpus, CorpusError


def section_distribution(field_id: str, view: Corpus) -> dict[str, int]:
    """CPC-section counts over distinct (patent, section) incidences among
    patents citing any paper tagged at or below the field."""
    if field_id not in view.fields:
        raise CorpusError(f"unknown field id {field_id!r}")
    counts: Counter = Counter()
    for pid in view.papers_in_field(field_id):
        for patent_id in view.patents_citing.get(pid, frozenset()):
            patent = view.patents[patent_id]
            for section in {code[0] for code in patent.cpc_codes}:
                counts[(patent_id, section)] = 1
    merged: Counter = Counter()
    for (_, section) in counts:
        merged[section] += 1
    return dict(sorted(merged.items()))


def entropy(counts: dict[str, int] | list[int]) -> float:
    values = list(counts.values()) if isinstance(counts, dict) else list(counts)
    total = sum(values)
    if total == 0:
        return 0.0
    acc = 0.0
    for v in values:
        if v > 0:
            p = v / total
            acc -= p * math.log(p)
    return acc


def diversity(field_id: str, view: Corpus) -> float:
    return entropy(section_distribution(field_id, view))
