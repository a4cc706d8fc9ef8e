from .fields import diversity, entropy, section_distribution
from .novelty import NoveltyConfig, NoveltyScorer, novelty
from .papers import (
    CITATION_WINDOW_YEARS,
    MetricRecord,
    MetricsConfig,
    compute_paper_metrics,
    disruption,
    paper_facts,
    patent_citation_5y,
    patent_citation_total,
    science_citation_5y,
)
from .researchers import (
    ResearcherMetrics,
    compute_researcher_metrics,
    researcher_metrics,
)

__all__ = [
    "CITATION_WINDOW_YEARS",
    "MetricRecord",
    "MetricsConfig",
    "NoveltyConfig",
    "NoveltyScorer",
    "ResearcherMetrics",
    "compute_paper_metrics",
    "compute_researcher_metrics",
    "disruption",
    "diversity",
    "entropy",
    "novelty",
    "paper_facts",
    "patent_citation_5y",
    "patent_citation_total",
    "researcher_metrics",
    "science_citation_5y",
    "section_distribution",
]
