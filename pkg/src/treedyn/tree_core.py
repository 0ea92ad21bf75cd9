"""
Finite combinatorial trees: connected hulls, surrounding-set tests and the
reduced shape (endpoint and edge counts of the underlying branched manifold).

Node identifiers are opaque hashables. A deterministic total order on them is
given by :func:`node_key`, so mixed ``int``/``str`` identifiers still sort.
"""

import logging
from collections import deque
from collections.abc import Hashable, Iterable
from dataclasses import dataclass
from functools import cached_property

import networkx as nx

from .errors import InvalidTreeError

logger = logging.getLogger(__name__)

Node = Hashable
Edge = tuple[Node, Node]


def node_key(node: Node) -> tuple[str, Node]:
    return (type(node).__name__, node)


def edge_key(u: Node, v: Node) -> Edge:
    """Canonical orientation of the undirected edge {u, v}."""
    return (u, v) if node_key(u) <= node_key(v) else (v, u)


@dataclass(frozen=True)
class Tree:
    """An immutable finite tree. Edges are stored in canonical orientation."""

    nodes: frozenset
    edges: frozenset

    def __post_init__(self):
        for u, v in self.edges:
            if u == v:
                raise InvalidTreeError(f"self-loop at node {u!r}")
            if u not in self.nodes or v not in self.nodes:
                raise InvalidTreeError(f"edge ({u!r}, {v!r}) uses an unknown node")
            if (u, v) != edge_key(u, v):
                raise InvalidTreeError(f"edge ({u!r}, {v!r}) is not canonical")
        if not self.nodes:
            if self.edges:
                raise InvalidTreeError("edges given for an empty tree")
            return
        if len(self.edges) != len(self.nodes) - 1:
            raise InvalidTreeError(
                f"{len(self.nodes)} nodes need {len(self.nodes) - 1} edges, "
                f"got {len(self.edges)}"
            )
        if not nx.is_connected(self.graph):
            raise InvalidTreeError("graph is not connected")

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[Node, Node]], nodes: Iterable[Node] = ()) -> "Tree":
        """Build a tree from an edge list (plus isolated nodes, for the one-node tree)."""
        node_set = set(nodes)
        canonical = set()
        for u, v in edges:
            if u == v:
                raise InvalidTreeError(f"self-loop at node {u!r}")
            e = edge_key(u, v)
            if e in canonical:
                raise InvalidTreeError(f"duplicate edge ({u!r}, {v!r})")
            canonical.add(e)
            node_set.update(e)
        return cls(frozenset(node_set), frozenset(canonical))

    @classmethod
    def from_graph(cls, graph: nx.Graph) -> "Tree":
        return cls.from_edges(graph.edges(), graph.nodes())

    @cached_property
    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.nodes)
        g.add_edges_from(self.edges)
        return g

    @cached_property
    def ordered_nodes(self) -> tuple[Node, ...]:
        return tuple(sorted(self.nodes, key=node_key))

    @cached_property
    def ordered_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges, key=lambda e: (node_key(e[0]), node_key(e[1]))))

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.ordered_edges)}

    def degree(self, node: Node) -> int:
        return self.graph.degree[node]

    def neighbors(self, node: Node) -> tuple[Node, ...]:
        return tuple(sorted(self.graph.neighbors(node), key=node_key))

    @property
    def leaves(self) -> tuple[Node, ...]:
        return tuple(n for n in self.ordered_nodes if self.degree(n) == 1)

    def induced(self, node_set: Iterable[Node]) -> "Tree":
        return Tree.from_graph(self.graph.subgraph(node_set))


@dataclass(frozen=True)
class Subtree:
    """A nonempty node set of ``parent`` whose induced subgraph is connected."""

    parent: Tree
    node_set: frozenset

    def __post_init__(self):
        if not self.node_set:
            raise InvalidTreeError("subtree must be nonempty")
        unknown = self.node_set - self.parent.nodes
        if unknown:
            raise InvalidTreeError(f"unknown nodes {sorted(unknown, key=node_key)!r}")
        if not nx.is_connected(self.parent.graph.subgraph(self.node_set)):
            raise InvalidTreeError("subtree node set is not connected")

    def as_tree(self) -> Tree:
        return self.parent.induced(self.node_set)


@dataclass(frozen=True)
class ReducedShape:
    """Counts taken after suppressing degree-2 nodes."""

    end_count: int
    edge_count: int


@dataclass(frozen=True)
class DifferenceComponent:
    """A component of [Z] minus Z.

    ``nodes`` are the residual hull nodes in the component; ``edges`` are the
    hull edges whose interiors it contains. An open arc between two blocks has
    no nodes and exactly one edge.
    """

    nodes: frozenset
    edges: frozenset


def path(tree: Tree, u: Node, v: Node) -> tuple[Node, ...]:
    """The unique node path from u to v."""
    if u == v:
        return (u,)
    return tuple(nx.shortest_path(tree.graph, u, v))


def hull(tree: Tree, points: Iterable[Node]) -> Subtree:
    """Connected hull: the union of all paths between the given nodes."""
    point_set = frozenset(points)
    if not point_set:
        raise InvalidTreeError("hull of an empty point set")
    unknown = point_set - tree.nodes
    if unknown:
        raise InvalidTreeError(f"unknown nodes {sorted(unknown, key=node_key)!r}")

    ordered = sorted(point_set, key=node_key)
    root = ordered[0]
    covered = {root}
    for p in ordered[1:]:
        if p not in covered:
            covered.update(path(tree, root, p))
    return Subtree(tree, frozenset(covered))


def _check_disjoint(blocks: list[Subtree]) -> None:
    seen: set = set()
    for block in blocks:
        if seen & block.node_set:
            raise InvalidTreeError("blocks overlap")
        seen |= block.node_set


def difference_components(tree: Tree, blocks: list[Subtree]) -> tuple[DifferenceComponent, ...]:
    """Components of hull(union of blocks) minus the blocks."""
    if not blocks:
        raise InvalidTreeError("at least one block is required")
    _check_disjoint(blocks)

    owner = {n: i for i, block in enumerate(blocks) for n in block.node_set}
    span = hull(tree, owner).node_set
    residual = span - owner.keys()

    residual_graph = tree.graph.subgraph(residual)
    components = []
    for comp in nx.connected_components(residual_graph):
        comp_edges = frozenset(
            edge_key(u, v) for u in comp for v in tree.graph.neighbors(u) if v in span
        )
        components.append(DifferenceComponent(frozenset(comp), comp_edges))

    for u, v in tree.ordered_edges:
        if u in owner and v in owner and owner[u] != owner[v]:
            components.append(DifferenceComponent(frozenset(), frozenset({(u, v)})))

    components.sort(
        key=lambda c: sorted((node_key(a), node_key(b)) for a, b in c.edges)
    )
    return tuple(components)


def is_surrounding(tree: Tree, blocks: list[Subtree]) -> bool:
    """True iff [Z] minus Z is connected; a single block counts as surrounding."""
    if not blocks:
        raise InvalidTreeError("at least one block is required")
    if len(blocks) == 1:
        return True
    return len(difference_components(tree, blocks)) == 1


def reduce(tree: Tree) -> ReducedShape:
    if not tree.nodes:
        raise InvalidTreeError("empty tree has no reduced shape")
    if len(tree.nodes) == 1:
        logger.debug("Reduced shape of a one-node tree is degenerate (0, 0)")
        return ReducedShape(end_count=0, edge_count=0)

    ends = sum(1 for n in tree.nodes if tree.degree(n) == 1)
    branching = sum(1 for n in tree.nodes if tree.degree(n) != 2)
    # In a tree the suppressed graph is again a tree on the non-degree-2 nodes.
    return ReducedShape(end_count=ends, edge_count=branching - 1)


def subdivide(tree: Tree) -> Tree:
    """Insert one new node in the middle of every edge."""
    edges = []
    taken = set(tree.nodes)
    for u, v in tree.ordered_edges:
        mid = f"{u}~{v}"
        while mid in taken:
            mid += "'"
        taken.add(mid)
        edges.extend([(u, mid), (mid, v)])
    return Tree.from_edges(edges, tree.nodes)


def median(tree: Tree, a: Node, b: Node, c: Node) -> Node:
    """The unique node lying on all three paths between a, b and c."""
    common = set(path(tree, a, b)) & set(path(tree, b, c)) & set(path(tree, a, c))
    if len(common) != 1:
        raise InvalidTreeError(f"median of {a!r}, {b!r}, {c!r} is not a single node")
    return common.pop()


def projection(tree: Tree, target: Iterable[Node]) -> dict[Node, Node]:
    """Map every node to the nearest node of the connected set ``target``."""
    target = frozenset(target)
    nearest = {n: n for n in target}
    queue = deque(sorted(target, key=node_key))
    while queue:
        u = queue.popleft()
        for v in tree.neighbors(u):
            if v not in nearest:
                nearest[v] = nearest[u]
                queue.append(v)
    return nearest
