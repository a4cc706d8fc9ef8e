"""Patent icicle: section -> subsection -> group with distinct-patent counts."""

from __future__ import annotations

from dataclasses import dataclass

from ..corpus.model import Corpus


@dataclass(frozen=True)
class IcicleNode:
    id: str
    level: str  # section | subsection | group
    count: int
    label: str = ""
    children: tuple["IcicleNode", ...] = ()

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "level": self.level,
            "count": self.count,
            "label": self.label,
            "children": [child.to_dict() for child in self.children],
        }


@dataclass(frozen=True)
class PatentIcicle:
    roots: tuple[IcicleNode, ...] = ()

    def groups(self) -> list[str]:
        """Group ids in icicle order (alphabetical at every level)."""
        out: list[str] = []
        for section in self.roots:
            for subsection in section.children:
                out.extend(group.id for group in subsection.children)
        return out

    def to_dict(self) -> dict:
        return {"roots": [node.to_dict() for node in self.roots]}


def build_icicle(view: Corpus) -> PatentIcicle:
    """A patent with several codes under one node counts there once."""
    by_section: dict[str, set[str]] = {}
    by_subsection: dict[tuple[str, str], set[str]] = {}
    by_group: dict[tuple[str, str, str], set[str]] = {}
    for patent_id in view.patents:
        for section, subsection, group in view.patents[patent_id].cpc_codes:
            by_section.setdefault(section, set()).add(patent_id)
            by_subsection.setdefault((section, subsection), set()).add(patent_id)
            by_group.setdefault((section, subsection, group), set()).add(patent_id)

    def label_of(node_id: str) -> str:
        return view.cpc.get(node_id).label if node_id in view.cpc else node_id

    roots = []
    for section in sorted(by_section):
        subsections = []
        for sec, subsection in sorted(k for k in by_subsection if k[0] == section):
            groups = tuple(
                IcicleNode(
                    id=g,
                    level="group",
                    count=len(by_group[(sec, subsection, g)]),
                    label=label_of(g),
                )
                for (_, _, g) in sorted(k for k in by_group if k[:2] == (sec, subsection))
            )
            subsections.append(
                IcicleNode(
                    id=subsection,
                    level="subsection",
                    count=len(by_subsection[(sec, subsection)]),
                    label=label_of(subsection),
                    children=groups,
                )
            )
        roots.append(
            IcicleNode(
                id=section,
                level="section",
                count=len(by_section[section]),
                label=label_of(section),
                children=tuple(subsections),
            )
        )
    return PatentIcicle(roots=tuple(roots))
