import pytest

from sciflow.corpus.hierarchy import (
    CPC_LEVELS,
    FIELD_LEVELS,
    Hierarchy,
    HierarchyError,
    HierarchyNode,
)

from conftest import make_cpc, make_fields


def test_roots_and_children_sorted():
    fields = make_fields()
    assert fields.roots() == ("FLD.A", "FLD.B")
    assert fields.children_of("FLD.A") == ("FLD.A.X",)
    assert fields.children_of("FLD.A.X.1") == ()


def test_levels_and_depths():
    fields = make_fields()
    assert fields.level_of("FLD.A") == "L0"
    assert fields.level_of("FLD.A.X.1") == "L2"
    assert fields.depth_of("FLD.B.Y") == 1
    assert fields.nodes_at("L1") == ("FLD.A.X", "FLD.B.Y")
    assert fields.nodes_at("L3") == ()


def test_chain_runs_node_to_root():
    fields = make_fields()
    assert fields.chain("FLD.A.X.1") == ("FLD.A.X.1", "FLD.A.X", "FLD.A")
    assert fields.chain("FLD.B") == ("FLD.B",)


def test_ancestor_at():
    cpc = make_cpc()
    assert cpc.ancestor_at("G06F", "section") == "G"
    assert cpc.ancestor_at("G06F", "subsection") == "G06"
    assert cpc.ancestor_at("G06F", "group") == "G06F"
    # asking below the node's own level has no answer
    assert cpc.ancestor_at("G06", "group") is None


def test_subtree_includes_self_and_descendants():
    fields = make_fields()
    assert fields.subtree("FLD.A") == frozenset({"FLD.A", "FLD.A.X", "FLD.A.X.1"})
    assert fields.subtree("FLD.A.X.1") == frozenset({"FLD.A.X.1"})


def test_duplicate_id_rejected():
    nodes = [
        HierarchyNode("X", "x", "L0"),
        HierarchyNode("X", "again", "L0"),
    ]
    with pytest.raises(HierarchyError, match="duplicate"):
        Hierarchy(nodes, FIELD_LEVELS)


def test_unknown_level_rejected():
    with pytest.raises(HierarchyError, match="level"):
        Hierarchy([HierarchyNode("X", "x", "L9")], FIELD_LEVELS)


def test_non_root_without_parent_rejected():
    with pytest.raises(HierarchyError, match="no parent"):
        Hierarchy([HierarchyNode("X", "x", "L1")], FIELD_LEVELS)


def test_dangling_parent_rejected():
    nodes = [HierarchyNode("X", "x", "L1", parent_id="GHOST")]
    with pytest.raises(HierarchyError, match="dangling"):
        Hierarchy(nodes, FIELD_LEVELS)


def test_parent_must_sit_one_level_up():
    nodes = [
        HierarchyNode("A", "a", "section"),
        HierarchyNode("A61K", "k", "group", parent_id="A"),
    ]
    with pytest.raises(HierarchyError):
        Hierarchy(nodes, CPC_LEVELS)


def test_get_unknown_node():
    with pytest.raises(HierarchyError, match="unknown"):
        make_fields().get("NOPE")
