"""Validated level-laddered forests for research fields and CPC categories."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

FIELD_LEVELS = ("L0", "L1", "L2", "L3")
CPC_LEVELS = ("section", "subsection", "group")


class HierarchyError(ValueError):
    """Raised when hierarchy nodes do not form a valid laddered forest."""


@dataclass(frozen=True)
class HierarchyNode:
    id: str
    label: str
    level: str
    parent_id: str | None = None


class Hierarchy:
    """A forest whose node levels follow a fixed top-down ladder.

    Roots sit at the first ladder level and every child sits exactly one
    level below its parent, which rules out cycles by construction.
    """

    def __init__(self, nodes: Iterable[HierarchyNode], level_order: tuple[str, ...]):
        self.level_order = tuple(level_order)
        self._depth = {lvl: i for i, lvl in enumerate(self.level_order)}
        self._nodes: dict[str, HierarchyNode] = {}
        for node in nodes:
            if node.id in self._nodes:
                raise HierarchyError(f"duplicate hierarchy node id {node.id!r}")
            if node.level not in self._depth:
                raise HierarchyError(
                    f"node {node.id!r} has level {node.level!r}, expected one of {self.level_order}"
                )
            self._nodes[node.id] = node
        self._children: dict[str, list[str]] = {nid: [] for nid in self._nodes}
        for node in self._nodes.values():
            depth = self._depth[node.level]
            if node.parent_id is None:
                if depth != 0:
                    raise HierarchyError(f"non-root node {node.id!r} has no parent")
                continue
            parent = self._nodes.get(node.parent_id)
            if parent is None:
                raise HierarchyError(f"node {node.id!r} has dangling parent {node.parent_id!r}")
            if self._depth[parent.level] != depth - 1:
                raise HierarchyError(
                    f"node {node.id!r} at {node.level!r} has parent at {parent.level!r}"
                )
            self._children[parent.id].append(node.id)
        for kids in self._children.values():
            kids.sort()

    def __contains__(self, node_id: str) -> bool:
        return node_id in self._nodes

    def __len__(self) -> int:
        return len(self._nodes)

    def __iter__(self) -> Iterator[HierarchyNode]:
        for nid in sorted(self._nodes):
            yield self._nodes[nid]

    def get(self, node_id: str) -> HierarchyNode:
        try:
            return self._nodes[node_id]
        except KeyError:
            raise HierarchyError(f"unknown hierarchy node {node_id!r}") from None

    def level_of(self, node_id: str) -> str:
        return self.get(node_id).level

    def depth_of(self, node_id: str) -> int:
        return self._depth[self.get(node_id).level]

    def children_of(self, node_id: str) -> tuple[str, ...]:
        self.get(node_id)
        return tuple(self._children[node_id])

    def roots(self) -> tuple[str, ...]:
        return tuple(sorted(n.id for n in self._nodes.values() if n.parent_id is None))

    def nodes_at(self, level: str) -> tuple[str, ...]:
        if level not in self._depth:
            raise HierarchyError(f"unknown level {level!r}")
        return tuple(sorted(n.id for n in self._nodes.values() if n.level == level))

    def chain(self, node_id: str) -> tuple[str, ...]:
        """Ids from the node up to its root, starting with the node itself."""
        out = []
        cur: str | None = node_id
        while cur is not None:
            node = self.get(cur)
            out.append(node.id)
            cur = node.parent_id
        return tuple(out)

    def ancestor_at(self, node_id: str, level: str) -> str | None:
        """Ancestor-or-self of `node_id` at `level`, or None when the node is shallower."""
        if level not in self._depth:
            raise HierarchyError(f"unknown level {level!r}")
        want = self._depth[level]
        for nid in self.chain(node_id):
            if self._depth[self.get(nid).level] == want:
                return nid
        return None

    def subtree(self, node_id: str) -> frozenset[str]:
        """All ids at or below `node_id`."""
        out = set()
        stack = [node_id]
        while stack:
            cur = stack.pop()
            if cur in out:
                continue
            self.get(cur)
            out.add(cur)
            stack.extend(self._children[cur])
        return frozenset(out)
