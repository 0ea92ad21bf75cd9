"""
Line-oriented pattern files and the text dump of synthesized maps.

Grammar, one record per line::

    # comment
    node <id>
    edge <id> <id>
    cycle <id> ... <id>      # exactly once, orbit in time order
    ambient                  # optional; later node/edge lines extend the tree

Identifiers are nonempty alphanumeric tokens. Nodes and edges before the
``ambient`` line form the pattern tree; all of them together form the
ambient tree whose End/Edg enter the forcing numbers.
"""

import itertools
import logging
import re
from dataclasses import dataclass
from pathlib import Path

import networkx as nx

from .errors import InvalidTreeError, PatternError, PatternFileError
from .pattern import Pattern, validate
from .plmap import PLTreeMap
from .tree_core import Node, Tree, hull
from .synthesis.base import SynthesizedMap

logger = logging.getLogger(__name__)

IDENTIFIER = re.compile(r"^[A-Za-z0-9]+$")


@dataclass(frozen=True)
class PatternFile:
    pattern: Pattern
    ambient: Tree


def _identifiers(tokens: list[str], line: int) -> list[str]:
    for t in tokens:
        if not IDENTIFIER.match(t):
            raise PatternFileError(f"invalid identifier {t!r}", line)
    return tokens


def _records(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        yield number, tokens[0], tokens[1:]


def _tree(nodes: dict[str, int], edges: list[tuple[str, str, int]], what: str) -> Tree:
    """Assemble a tree from records; ``nodes`` maps each id to the line that introduced it."""
    graph = nx.Graph()
    graph.add_nodes_from(nodes)
    for u, v, line in edges:
        if u == v:
            raise PatternFileError(f"{what} is not a tree: self-loop at node {u}", line)
        if graph.has_edge(u, v):
            raise PatternFileError(f"{what} is not a tree: duplicate edge {u} {v}", line)
        if nx.has_path(graph, u, v):
            raise PatternFileError(f"{what} is not a tree: edge {u} {v} closes a cycle", line)
        graph.add_edge(u, v)

    if graph.number_of_nodes() > 1 and not nx.is_connected(graph):
        first = min(graph, key=nodes.__getitem__)
        reached = nx.node_connected_component(graph, first)
        stray = min((n for n in graph if n not in reached), key=nodes.__getitem__)
        raise PatternFileError(f"{what} is not a tree: {stray} is not connected to {first}", nodes[stray])
    try:
        return Tree.from_graph(graph)
    except InvalidTreeError as e:
        raise PatternFileError(f"{what} is not a tree: {e}") from e


def parse_tree_text(text: str, allow_cycle: bool = False) -> tuple[Tree, Tree, list[str] | None]:
    """Parse node/edge records into (pattern tree, ambient tree, cycle or None)."""
    nodes: dict[str, int] = {}
    edges: list[tuple[str, str, int]] = []
    base_nodes: dict[str, int] | None = None
    base_edges: list[tuple[str, str, int]] | None = None
    cycle: list[str] | None = None
    cycle_line = 0

    for line, keyword, args in _records(text):
        match keyword:
            case "node":
                if len(args) != 1:
                    raise PatternFileError("node takes exactly one identifier", line)
                nodes.setdefault(_identifiers(args, line)[0], line)
            case "edge":
                if len(args) != 2:
                    raise PatternFileError("edge takes exactly two identifiers", line)
                u, v = _identifiers(args, line)
                nodes.setdefault(u, line)
                nodes.setdefault(v, line)
                edges.append((u, v, line))
            case "cycle":
                if not allow_cycle:
                    raise PatternFileError("cycle line not allowed in a tree file", line)
                if cycle is not None:
                    raise PatternFileError(f"second cycle line (first on line {cycle_line})", line)
                if base_nodes is not None:
                    raise PatternFileError("cycle line inside the ambient section", line)
                if not args:
                    raise PatternFileError("cycle needs at least one identifier", line)
                cycle, cycle_line = _identifiers(args, line), line
            case "ambient":
                if args:
                    raise PatternFileError("ambient takes no arguments", line)
                if base_nodes is not None:
                    raise PatternFileError("second ambient line", line)
                base_nodes, base_edges = dict(nodes), list(edges)
            case _:
                raise PatternFileError(f"unknown record {keyword!r}", line)

    if base_nodes is None:
        base_nodes, base_edges = nodes, edges
    for a in cycle or ():
        base_nodes.setdefault(a, cycle_line)
        nodes.setdefault(a, cycle_line)
    return _tree(base_nodes, base_edges, "pattern tree"), _tree(nodes, edges, "ambient tree"), cycle


def parse_pattern_text(text: str) -> PatternFile:
    """
    Parse a pattern file.

    Args:
        text: File contents.

    Returns:
        The normalized pattern and the ambient tree.

    Raises:
        PatternFileError: On any malformed record, with its 1-based line number.
    """
    tree, ambient, cycle = parse_tree_text(text, allow_cycle=True)
    if cycle is None:
        raise PatternFileError("missing cycle line")
    try:
        pattern = validate(tree, cycle)
    except PatternError as e:
        raise PatternFileError(str(e)) from e
    logger.debug("Parsed pattern of period %s on %s ambient nodes", pattern.period, len(ambient.nodes))
    return PatternFile(pattern, ambient)


def read_pattern_file(path: Path) -> PatternFile:
    try:
        text = path.read_text()
    except OSError as e:
        raise PatternFileError(f"cannot read {path}: {e.strerror}") from e
    return parse_pattern_text(text)


def read_tree_file(path: Path) -> Tree:
    try:
        text = path.read_text()
    except OSError as e:
        raise PatternFileError(f"cannot read {path}: {e.strerror}") from e
    return parse_tree_text(text)[1]


def _file_names(tree: Tree) -> dict[Node, str]:
    """Identifiers for the nodes of tree; names that are not identifiers become ``v<i>``."""
    names: dict[Node, str] = {}
    taken: set[str] = set()
    for n in tree.ordered_nodes:
        if IDENTIFIER.match(str(n)) and str(n) not in taken:
            names[n] = str(n)
            taken.add(str(n))
    fresh = (f"v{i}" for i in itertools.count(1))
    for n in tree.ordered_nodes:
        if n not in names:
            names[n] = next(label for label in fresh if label not in taken)
            taken.add(names[n])
    return names


def dump_pattern(p: Pattern, ambient: Tree | None = None) -> str:
    """
    Pattern file text for p inside ambient, which defaults to the pattern tree.

    The pattern section holds the hull of the orbit in the ambient tree, so
    reading the file back normalizes to p again.
    """
    ambient = ambient or p.tree
    spanned = hull(ambient, p.orbit).as_tree()
    name = _file_names(ambient)
    lines = [f"node {name[n]}" for n in spanned.ordered_nodes]
    lines += [f"edge {name[u]} {name[v]}" for u, v in spanned.ordered_edges]
    lines.append("cycle " + " ".join(name[a] for a in p.orbit))
    if ambient != spanned:
        lines.append("ambient")
        lines += [f"node {name[n]}" for n in ambient.ordered_nodes if n not in spanned.nodes]
        lines += [f"edge {name[u]} {name[v]}" for u, v in ambient.ordered_edges if (u, v) not in spanned.edges]
    return "\n".join(lines) + "\n"


def dump_map(m: PLTreeMap, header: dict[str, str] | None = None) -> str:
    """
    Text dump of a Markov map.

    Format: ``# key: value`` header lines, then ``image <node> <image>`` for
    every node and ``path <u> <v> : <nodes>`` giving the image path of every
    edge, all in node order.
    """
    lines = [f"# {k}: {v}" for k, v in (header or {}).items()]
    lines += [f"image {n} {m.node_image[n]}" for n in m.domain.ordered_nodes]
    lines += [f"path {u} {v} : " + " ".join(map(str, p)) for (u, v), p in m.edge_paths.items()]
    return "\n".join(lines) + "\n"


def dump_synthesized(result: SynthesizedMap, kind: str) -> str:
    header = {
        "kind": kind,
        "nodes": str(len(result.map.domain.nodes)),
        "declared periods": result.declared_period_set.describe(),
        "declared zero entropy": str(result.declared_entropy_zero).lower(),
        "verified up to": str(result.cutoff),
    }
    if result.pattern is not None:
        header["orbit"] = " ".join(map(str, result.pattern.orbit))
    return dump_map(result.map, header)


def builtin_tree(name: str) -> Tree | None:
    """Named ambient trees: ``interval``, ``star<k>`` (k >= 3, ``3-star`` too) and ``h``."""
    name = name.lower()
    if name == "interval":
        return Tree.from_edges([("a", "b")])
    if name == "h":
        return Tree.from_edges([("a", "c"), ("b", "c"), ("c", "d"), ("d", "e"), ("d", "f")])
    k = None
    if name.startswith("star") and name[4:].isdigit():
        k = int(name[4:])
    elif name.endswith("-star") and name[:-5].isdigit():
        k = int(name[:-5])
    if k is None:
        return None
    if k < 3:
        raise PatternFileError(f"a star needs at least 3 arms, got {k}")
    return Tree.from_edges(("o", f"z{i}") for i in range(1, k + 1))


def load_tree(name: str) -> Tree:
    """A built-in tree by name, otherwise a tree file (node/edge records)."""
    tree = builtin_tree(name)
    if tree is not None:
        return tree
    return read_tree_file(Path(name))
