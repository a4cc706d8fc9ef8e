"""Corpus loading, validation, and filtered views."""

from .assignees import DEFAULT_RULES, AssigneeRules, classify_assignee
from .hierarchy import CPC_LEVELS, FIELD_LEVELS, Hierarchy, HierarchyError, HierarchyNode
from .load import IngestError, load_corpus
from .model import (
    ASSIGNEE_CLASSES,
    COMPANY,
    DEFAULT_WINDOW,
    OTHER,
    UNIVERSITY,
    Corpus,
    CorpusError,
    FilterError,
    LoadReport,
    Paper,
    Patent,
    QueryFilter,
    Researcher,
    researchers_with_patent_impact,
)

__all__ = [
    "ASSIGNEE_CLASSES",
    "COMPANY",
    "CPC_LEVELS",
    "Corpus",
    "CorpusError",
    "DEFAULT_RULES",
    "DEFAULT_WINDOW",
    "FIELD_LEVELS",
    "FilterError",
    "Hierarchy",
    "HierarchyError",
    "HierarchyNode",
    "IngestError",
    "LoadReport",
    "OTHER",
    "Paper",
    "Patent",
    "QueryFilter",
    "Researcher",
    "UNIVERSITY",
    "AssigneeRules",
    "classify_assignee",
    "load_corpus",
    "researchers_with_patent_impact",
]
