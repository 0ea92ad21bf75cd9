"""
Periodic-orbit patterns: a tree marked by a periodic orbit listed in time
order, normalized to the orbit's connected hull.
"""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

import networkx as nx

from .errors import InvalidTreeError, PatternError
from .tree_core import Node, ReducedShape, Tree, edge_key, hull, node_key, reduce

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Pattern:
    """Orbit A_0, ..., A_{N-1} on its hull; theta sends A_i to A_{i+1 mod N}."""

    tree: Tree
    orbit: tuple

    def __post_init__(self):
        if not self.orbit:
            raise PatternError("orbit must be nonempty")
        if len(set(self.orbit)) != len(self.orbit):
            raise PatternError("repeated orbit node")
        marked = set(self.orbit)
        if not marked <= self.tree.nodes:
            raise PatternError("orbit node missing from tree")
        for n in self.tree.nodes:
            if n in marked:
                continue
            if self.tree.degree(n) < 3:
                raise PatternError(
                    f"unmarked node {n!r} has degree {self.tree.degree(n)}; pattern is not normalized"
                )

    @property
    def period(self) -> int:
        return len(self.orbit)

    @cached_property
    def index(self) -> dict[Node, int]:
        return {a: i for i, a in enumerate(self.orbit)}

    @cached_property
    def theta(self) -> dict[Node, Node]:
        n = self.period
        return {a: self.orbit[(i + 1) % n] for i, a in enumerate(self.orbit)}

    @cached_property
    def shape(self) -> ReducedShape:
        return reduce(self.tree)


@dataclass(frozen=True)
class Block:
    """Orbit nodes A_s with s congruent to ``residue`` modulo ``modulus``."""

    residue: int
    modulus: int
    nodes: tuple


def _normalize(tree: Tree, orbit: tuple) -> Tree:
    spanned = hull(tree, orbit).as_tree()
    g = spanned.graph.copy()
    marked = set(orbit)
    for n in spanned.ordered_nodes:
        if n not in marked and g.degree[n] == 2:
            a, b = g.neighbors(n)
            g.remove_node(n)
            g.add_edge(a, b)
    return Tree.from_graph(g)


def validate(tree: Tree | Iterable[tuple[Node, Node]], orbit: Sequence[Node]) -> Pattern:
    """Normalize raw inputs into a Pattern, pruning and suppressing unmarked nodes."""
    orbit = tuple(orbit)
    if not orbit:
        raise PatternError("orbit must be nonempty")
    if len(set(orbit)) != len(orbit):
        raise PatternError("repeated orbit node")
    if not isinstance(tree, Tree):
        try:
            tree = Tree.from_edges(tree, orbit if len(orbit) == 1 else ())
        except InvalidTreeError as e:
            raise PatternError(f"invalid tree: {e}") from e
    missing = [a for a in orbit if a not in tree.nodes]
    if missing:
        raise PatternError(f"orbit node missing from tree: {missing[0]!r}")

    return Pattern(_normalize(tree, orbit), orbit)


def neighboring_pairs(p: Pattern) -> tuple[tuple[Node, Node], ...]:
    """Pairs of orbit nodes whose open connecting path avoids the orbit."""
    marked = set(p.orbit)
    pairs = set()
    for a in p.orbit:
        stack = [(a, None)]
        while stack:
            u, came_from = stack.pop()
            for v in p.tree.neighbors(u):
                if v == came_from:
                    continue
                if v in marked:
                    pairs.add(edge_key(a, v))
                else:
                    stack.append((v, u))
    return tuple(sorted(pairs, key=lambda e: (node_key(e[0]), node_key(e[1]))))


def blocks(p: Pattern, m: int) -> tuple[Block, ...]:
    n = p.period
    if not 1 <= m <= n or n % m:
        raise PatternError(f"{m} does not divide the period {n}")
    return tuple(Block(r, m, p.orbit[r::m]) for r in range(m))


def time_shift(p: Pattern, s: int) -> Pattern:
    """The same pattern with A_s relabelled as A_0."""
    s %= p.period
    return Pattern(p.tree, p.orbit[s:] + p.orbit[:s])


def is_interval(p: Pattern) -> bool:
    return all(p.tree.degree(n) <= 2 for n in p.tree.nodes)


def _encode(tree: Tree, root: Node, labels: dict[Node, str]) -> str:
    def walk(u: Node, parent: Node | None) -> str:
        children = sorted(walk(v, u) for v in tree.neighbors(u) if v != parent)
        return "(" + labels[u] + "".join(children) + ")"

    return walk(root, None)


def canonical_form(p: Pattern) -> str:
    """Canonical string of p up to tree isomorphism and rotation of time."""
    n = p.period
    centers = nx.center(p.tree.graph) if len(p.tree.nodes) > 1 else [p.orbit[0]]
    best = None
    for s in range(n):
        labels = {a: f"{(i - s) % n}" for i, a in enumerate(p.orbit)}
        for node in p.tree.nodes:
            labels.setdefault(node, "*")
        for c in centers:
            code = _encode(p.tree, c, labels)
            if best is None or code < best:
                best = code
    return best
