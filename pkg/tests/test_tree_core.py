import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from treedyn.errors import InvalidTreeError
from treedyn.tree_core import (
    ReducedShape,
    Subtree,
    Tree,
    difference_components,
    hull,
    is_surrounding,
    median,
    path,
    projection,
    reduce,
    subdivide,
)


def path_tree(n: int) -> Tree:
    return Tree.from_edges([(i, i + 1) for i in range(n - 1)], range(n))


prufer_trees = st.lists(st.integers(0, 7), min_size=0, max_size=6).map(
    lambda seq: Tree.from_graph(nx.from_prufer_sequence([x % (len(seq) + 2) for x in seq]))
    if seq
    else path_tree(2)
)


def test_rejects_cycles_and_disconnected_graphs():
    with pytest.raises(InvalidTreeError):
        Tree.from_edges([(1, 2), (2, 3), (3, 1)])
    with pytest.raises(InvalidTreeError):
        Tree.from_edges([(1, 2), (3, 4)])
    with pytest.raises(InvalidTreeError):
        Tree.from_edges([(1, 1)])
    with pytest.raises(InvalidTreeError):
        Tree.from_edges([(1, 2), (2, 1)])


def test_single_node_and_empty_trees():
    assert Tree.from_edges([], ["x"]).leaves == ()
    assert Tree(frozenset(), frozenset()).nodes == frozenset()


def test_path_and_hull_on_star(star3):
    assert path(star3, "a", "b") == ("a", "o", "b")
    assert hull(star3, ["a", "b"]).node_set == {"a", "o", "b"}
    assert hull(star3, ["a"]).node_set == {"a"}


def test_hull_rejects_unknown_and_empty(star3):
    with pytest.raises(InvalidTreeError):
        hull(star3, [])
    with pytest.raises(InvalidTreeError):
        hull(star3, ["zz"])


def test_subtree_must_be_connected(star3):
    with pytest.raises(InvalidTreeError):
        Subtree(star3, frozenset({"a", "b"}))


def test_reduce_shapes(star3, h_tree):
    assert reduce(star3) == ReducedShape(3, 3)
    assert reduce(path_tree(5)) == ReducedShape(2, 1)
    assert reduce(h_tree) == ReducedShape(4, 5)
    assert reduce(Tree.from_edges([], ["x"])) == ReducedShape(0, 0)


def test_median_and_projection(star3, h_tree):
    assert median(star3, "a", "b", "c") == "o"
    assert median(h_tree, "a", "b", "e") == "c"
    assert median(h_tree, "a", "a", "e") == "a"
    nearest = projection(h_tree, {"d", "e", "f"})
    assert nearest["a"] == "d" and nearest["c"] == "d" and nearest["e"] == "e"


def test_difference_components_of_star_leaves(star3):
    blocks = [hull(star3, [x]) for x in "abc"]
    comps = difference_components(star3, blocks)
    assert len(comps) == 1
    assert comps[0].nodes == {"o"}
    assert is_surrounding(star3, blocks)


def test_open_arcs_between_adjacent_blocks():
    t = path_tree(4)
    blocks = [hull(t, [0, 1]), hull(t, [2, 3])]
    comps = difference_components(t, blocks)
    assert [(c.nodes, c.edges) for c in comps] == [(frozenset(), frozenset({(1, 2)}))]
    assert is_surrounding(t, blocks)


def test_three_blocks_on_a_path_do_not_surround():
    t = path_tree(5)
    blocks = [hull(t, [0]), hull(t, [2]), hull(t, [4])]
    assert len(difference_components(t, blocks)) == 2
    assert not is_surrounding(t, blocks)


def test_single_block_is_surrounding(star3):
    assert is_surrounding(star3, [hull(star3, ["a", "b"])])


def test_overlapping_blocks_rejected(star3):
    with pytest.raises(InvalidTreeError):
        difference_components(star3, [hull(star3, ["a", "b"]), hull(star3, ["b", "c"])])


@given(prufer_trees, st.data())
def test_hull_is_idempotent_and_monotone(tree, data):
    nodes = list(tree.ordered_nodes)
    small = data.draw(st.sets(st.sampled_from(nodes), min_size=1))
    extra = data.draw(st.sets(st.sampled_from(nodes)))
    h = hull(tree, small).node_set
    assert hull(tree, h).node_set == h
    assert h <= hull(tree, small | extra).node_set


@given(prufer_trees)
def test_reduce_is_invariant_under_subdivision(tree):
    fine = subdivide(tree)
    assert len(fine.nodes) == len(tree.nodes) + len(tree.edges)
    assert reduce(fine) == reduce(tree)


@given(prufer_trees, st.data())
def test_connected_union_of_hulls_is_its_own_hull(tree, data):
    nodes = list(tree.ordered_nodes)
    pieces = data.draw(st.lists(st.sets(st.sampled_from(nodes), min_size=1), min_size=1, max_size=4))
    union = frozenset().union(*(hull(tree, s).node_set for s in pieces))
    if nx.is_connected(tree.graph.subgraph(union)):
        assert hull(tree, union).node_set == union
    else:
        assert hull(tree, union).node_set > union


def test_connected_union_of_overlapping_hulls(h_tree):
    union = hull(h_tree, ["a", "c"]).node_set | hull(h_tree, ["c", "e"]).node_set
    assert hull(h_tree, union).node_set == union == {"a", "c", "d", "e"}


@given(prufer_trees, st.data())
def test_blocks_spanning_the_tree_leave_a_nonempty_difference(tree, data):
    leaves = list(tree.leaves)
    grown = data.draw(st.sets(st.sampled_from(leaves)))
    used = set(leaves)
    blocks = []
    for leaf in leaves:
        block = {leaf}
        (neighbor,) = tree.neighbors(leaf)
        if leaf in grown and neighbor not in used:
            block.add(neighbor)
            used.add(neighbor)
        blocks.append(Subtree(tree, frozenset(block)))
    assert hull(tree, used).node_set == tree.nodes
    assert len(difference_components(tree, blocks)) >= 1
