"""Venue-pair novelty: z-scores of observed co-reference frequencies against
degree- and year-preserving randomizations of the paper-to-venue structure."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from ..corpus.model import Corpus, CorpusError


@dataclass(frozen=True)
class NoveltyConfig:
    shuffle_count: int = 10
    rng_seed: int = 0
    percentile: float = 10.0

    def __post_init__(self):
        if self.shuffle_count < 1:
            raise ValueError("shuffle_count must be >= 1")


PairCounts = Counter  # (venue_a, venue_b) with venue_a < venue_b -> frequency


def _pair_counts(venues_by_paper: dict[str, list[str]]) -> Counter:
    """A pair counts once per paper whose reference venues contain both."""
    counts: Counter = Counter()
    for venues in venues_by_paper.values():
        distinct = sorted(set(venues))
        for pair in combinations(distinct, 2):
            counts[pair] += 1
    return counts


class NoveltyScorer:
    """Precomputes the venue-pair z-score table for one view and config.

    The randomization permutes the venue endpoints of (paper -> referenced
    venue) edges within strata of the citing paper's publication year, which
    preserves per-paper reference counts and per-year venue frequencies.
    Scores are deterministic for a given (view, seed).
    """

    def __init__(self, view: Corpus, cfg: NoveltyConfig | None = None):
        self.view = view
        self.cfg = cfg or NoveltyConfig()
        self._build()

    def _build(self) -> None:
        view = self.view
        # Edge order is fixed (papers by id, references by id) so that the
        # permutation draws are reproducible.
        edge_paper: list[str] = []
        edge_venue: list[str] = []
        strata: dict[int, list[int]] = {}
        for pid in view.papers:
            paper = view.papers[pid]
            for ref in sorted(view.references_of.get(pid, ())):
                venue = view.papers[ref].venue_id
                if venue is None:
                    continue
                strata.setdefault(paper.year, []).append(len(edge_paper))
                edge_paper.append(pid)
                edge_venue.append(venue)

        def venues_by_paper(venue_of_edge: list[str]) -> dict[str, list[str]]:
            acc: dict[str, list[str]] = {}
            for pid, venue in zip(edge_paper, venue_of_edge):
                acc.setdefault(pid, []).append(venue)
            return acc

        self._real_venues = venues_by_paper(edge_venue)
        observed = _pair_counts(self._real_venues)

        rng = np.random.default_rng(self.cfg.rng_seed)
        shuffled_counts: list[Counter] = []
        for _ in range(self.cfg.shuffle_count):
            shuffled = list(edge_venue)
            for year in sorted(strata):
                idx = strata[year]
                perm = rng.permutation(len(idx))
                stratum_venues = [edge_venue[i] for i in idx]
                for slot, take in zip(idx, perm):
                    shuffled[slot] = stratum_venues[take]
            shuffled_counts.append(_pair_counts(venues_by_paper(shuffled)))

        m = self.cfg.shuffle_count
        self._z: dict[tuple[str, str], float | None] = {}
        for pair, obs in observed.items():
            draws = np.array([counts.get(pair, 0) for counts in shuffled_counts], dtype=float)
            mu = float(draws.mean())
            sigma = float(draws.std(ddof=1)) if m > 1 else 0.0
            self._z[pair] = (obs - mu) / sigma if sigma > 0 else None

    def pair_z(self, venue_a: str, venue_b: str) -> float | None:
        pair = (venue_a, venue_b) if venue_a < venue_b else (venue_b, venue_a)
        return self._z.get(pair)

    def score(self, paper_id: str) -> float | None:
        """The configured percentile (default 10th) of the paper's pair z-scores.

        None when the references span fewer than two distinct venues or every
        pair had zero randomized variance.
        """
        if paper_id not in self.view.papers:
            raise CorpusError(f"unknown paper id {paper_id!r}")
        venues = sorted(set(self._real_venues.get(paper_id, ())))
        if len(venues) < 2:
            return None
        zs = [
            z
            for pair in combinations(venues, 2)
            if (z := self._z.get(pair)) is not None
        ]
        if not zs:
            return None
        return float(np.percentile(zs, self.cfg.percentile))


def novelty(paper_id: str, view: Corpus, cfg: NoveltyConfig | None = None) -> float | None:
    """Convenience wrapper; prefer a shared NoveltyScorer for batch scoring."""
    return NoveltyScorer(view, cfg).score(paper_id)
