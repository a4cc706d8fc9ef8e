"""Keyword-based assignee classification with a manual override table."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .model import ASSIGNEE_CLASSES, COMPANY, OTHER, UNIVERSITY


@dataclass(frozen=True)
class AssigneeRules:
    """Two ordered keyword lists; university keywords are checked first."""

    university: tuple[str, ...]
    company: tuple[str, ...]

    @classmethod
    def from_dict(cls, raw: Mapping[str, object]) -> "AssigneeRules":
        def keywords(key: str) -> tuple[str, ...]:
            value = raw.get(key, [])
            if not isinstance(value, (list, tuple)):
                raise ValueError(f"assignee rules: {key!r} must be a list of keywords")
            return tuple(str(v).lower() for v in value)

        return cls(university=keywords("university"), company=keywords("company"))


DEFAULT_RULES = AssigneeRules(
    university=(
        "university",
        "univ.",
        "college",
        "institute of technology",
        "polytechnic",
        "school of medicine",
        "academy of sciences",
    ),
    company=(
        "inc",
        "incorporated",
        "corp",
        "corporation",
        "llc",
        "ltd",
        "limited",
        "gmbh",
        "co.",
        "company",
        "technologies",
        "pharmaceuticals",
        "labs",
    ),
)


def classify_assignee(
    name: str,
    rules: AssigneeRules = DEFAULT_RULES,
    overrides: Mapping[str, str] | None = None,
) -> str:
    """Classify an assignee name as University, Company, or Other.

    Overrides (exact name match) win; otherwise the first keyword list with a
    case-insensitive substring hit wins; no hit means Other.
    """
    if overrides:
        forced = overrides.get(name)
        if forced is not None:
            if forced not in ASSIGNEE_CLASSES:
                raise ValueError(f"override for {name!r} has unknown class {forced!r}")
            return forced
    lowered = name.lower()
    if any(kw in lowered for kw in rules.university):
        return UNIVERSITY
    if any(kw in lowered for kw in rules.company):
        return COMPANY
    return OTHER
