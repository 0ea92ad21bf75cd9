"""
Markov piecewise-linear tree maps.

Every edge has length 1 and is mapped linearly, in the path-length
parametrization, onto the tree path between the images of its endpoints.
Nodes map to nodes, so the edges form a Markov partition and the transition
matrix counts how image paths traverse edges.

Periodic points are found exactly: a periodic point whose orbit avoids the
nodes follows a loop in the Markov graph, and the composition of the affine
branches along that loop is solved in rational arithmetic.
"""

import logging
import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType
from typing import Optional

import networkx as nx
import numpy as np

from .config import OracleConfig
from .errors import InvariantViolation, MapError
from .pattern import Pattern
from .tree_core import Edge, Node, Tree, edge_key, median, node_key, path

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TreePoint:
    """A node (``t == 0`` and ``u == v``) or a point at fraction ``t`` along edge (u, v)."""

    u: Node
    v: Node
    t: Fraction

    @classmethod
    def node(cls, n: Node) -> "TreePoint":
        return cls(n, n, Fraction(0))

    @classmethod
    def on_edge(cls, a: Node, b: Node, s: Fraction) -> "TreePoint":
        """Point at fraction s from a towards b, normalized to canonical orientation."""
        if s == 0:
            return cls.node(a)
        if s == 1:
            return cls.node(b)
        if (a, b) == edge_key(a, b):
            return cls(a, b, Fraction(s))
        return cls(b, a, 1 - Fraction(s))

    @property
    def is_node(self) -> bool:
        return self.u == self.v

    def __str__(self) -> str:
        if self.is_node:
            return str(self.u)
        return f"{self.u}-{self.v}@{self.t}"


@dataclass(frozen=True, eq=False)
class PLTreeMap:
    domain: Tree
    node_image: Mapping[Node, Node]

    def __post_init__(self):
        missing = self.domain.nodes - self.node_image.keys()
        if missing:
            raise MapError(f"node image undefined for {sorted(missing, key=node_key)!r}")
        stray = [v for v in self.node_image.values() if v not in self.domain.nodes]
        if stray:
            raise MapError(f"node image {stray[0]!r} is not a node of the domain")
        object.__setattr__(self, "node_image", MappingProxyType(dict(self.node_image)))

    @cached_property
    def edge_paths(self) -> dict[Edge, tuple[Node, ...]]:
        """For each canonical edge (u, v), the path from f(u) to f(v)."""
        f = self.node_image
        return {(u, v): path(self.domain, f[u], f[v]) for u, v in self.domain.ordered_edges}

    def check(self) -> None:
        for (u, v), p in self.edge_paths.items():
            if p != path(self.domain, self.node_image[u], self.node_image[v]):
                raise InvariantViolation(f"edge path of ({u!r}, {v!r}) is inconsistent")

    def evaluate(self, x: TreePoint) -> TreePoint:
        if x.is_node:
            return TreePoint.node(self.node_image[x.u])
        p = self.edge_paths[(x.u, x.v)]
        length = len(p) - 1
        if length == 0:
            return TreePoint.node(p[0])
        s = x.t * length
        j = math.floor(s)
        if j == length:
            return TreePoint.node(p[-1])
        return TreePoint.on_edge(p[j], p[j + 1], s - j)

    def iterate(self, x: TreePoint, times: int) -> TreePoint:
        for _ in range(times):
            x = self.evaluate(x)
        return x

    def restrict_to(self, nodes: Iterable[Node]) -> dict[Node, Node]:
        return {n: self.node_image[n] for n in nodes}


@dataclass(frozen=True)
class TransitionMatrix:
    edges: tuple[Edge, ...]
    matrix: np.ndarray

    def __post_init__(self):
        if self.matrix.ndim != 2 or self.matrix.shape[0] != self.matrix.shape[1]:
            raise MapError(f"transition matrix must be square, got shape {self.matrix.shape}")
        if (self.matrix < 0).any():
            raise MapError("transition matrix has negative entries")

    def as_lists(self) -> list[list[int]]:
        return self.matrix.astype(int).tolist()


@dataclass(frozen=True)
class SpectralResult:
    radius: float
    at_most_one: bool  # exact, from the strongly connected components

    @property
    def entropy(self) -> float:
        return math.log(self.radius) if self.radius > 0 else 0.0


@dataclass(frozen=True)
class PeriodicWitness:
    period: int
    loop: tuple[Edge, ...]  # empty for node orbits
    point: TreePoint


@dataclass
class PeriodEnumeration:
    cutoff: int
    witnesses: dict[int, PeriodicWitness] = field(default_factory=dict)
    exceeded: list[int] = field(default_factory=list)

    @property
    def periods(self) -> frozenset[int]:
        return frozenset(p for p in self.witnesses if p <= self.cutoff)

    @property
    def complete(self) -> bool:
        return not self.exceeded


def connect_the_dots(p: Pattern) -> PLTreeMap:
    """Canonical Markov model of a pattern.

    Orbit nodes follow theta. An unmarked node takes the iterated median of the
    images of the nearest orbit node in each incident direction, folding the
    directions in sorted neighbour order.
    """
    tree = p.tree
    marked = set(p.orbit)
    image = dict(p.theta)
    for b in tree.ordered_nodes:
        if b in marked:
            continue
        targets = [image[_nearest_marked(tree, b, d, marked)] for d in tree.neighbors(b)]
        acc = median(tree, targets[0], targets[1], targets[2])
        for t in targets[3:]:
            acc = median(tree, acc, t, targets[0])
        image[b] = acc
    return PLTreeMap(tree, image)


def _nearest_marked(tree: Tree, origin: Node, first: Node, marked: set) -> Node:
    """Closest marked node in the branch at ``origin`` that starts with ``first``."""
    frontier, seen = [first], {origin, first}
    while frontier:
        hits = [n for n in frontier if n in marked]
        if hits:
            return min(hits, key=node_key)
        nxt = []
        for u in frontier:
            for v in tree.neighbors(u):
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    raise InvariantViolation(f"branch of {origin!r} towards {first!r} has no orbit node")


def transition_matrix(m: PLTreeMap) -> TransitionMatrix:
    edges = m.domain.ordered_edges
    index = m.domain.edge_index
    mat = np.zeros((len(edges), len(edges)), dtype=np.int64)
    for i, e in enumerate(edges):
        p = m.edge_paths[e]
        for a, b in zip(p, p[1:]):
            mat[i, index[edge_key(a, b)]] += 1
    return TransitionMatrix(edges, mat)


def _perron_root(block: np.ndarray, tol: float, max_iter: int) -> float:
    """Perron root of an irreducible block via power iteration on block + I.

    Collatz-Wielandt bounds min(Ax/x) <= rho <= max(Ax/x) give the stopping rule,
    relative to the upper bound.
    """
    shifted = block.astype(float) + np.eye(block.shape[0])
    x = np.ones(block.shape[0])
    lo, hi = 0.0, float("inf")
    for _ in range(max_iter):
        y = shifted @ x
        ratios = y / x
        lo, hi = float(ratios.min()), float(ratios.max())
        if hi - lo <= tol * hi:
            break
        x = y / y.max()
    else:
        logger.warning("Power iteration stopped at bounds [%s, %s] before reaching tolerance", lo, hi)
    return (lo + hi) / 2 - 1


def spectral_radius(matrix: TransitionMatrix | np.ndarray, tol: float = 1e-9,
                    max_iter: int = 200_000) -> SpectralResult:
    if tol <= 0:
        raise MapError(f"tolerance must be positive, got {tol}")
    mat = matrix.matrix if isinstance(matrix, TransitionMatrix) else np.asarray(matrix)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise MapError(f"matrix must be square, got shape {mat.shape}")

    graph = nx.DiGraph()
    graph.add_nodes_from(range(mat.shape[0]))
    graph.add_edges_from(zip(*np.nonzero(mat)))

    radius, at_most_one = 0.0, True
    for comp in nx.strongly_connected_components(graph):
        idx = sorted(comp)
        block = mat[np.ix_(idx, idx)]
        if not block.any():
            continue
        if (block.sum(axis=1) != 1).any():
            at_most_one = False
        radius = max(radius, _perron_root(block, tol, max_iter))

    if at_most_one and radius > 1 + tol:
        raise InvariantViolation(f"cycle structure implies radius 1, power iteration gave {radius}")
    if not at_most_one and radius <= 1:
        raise InvariantViolation(f"branching component implies radius > 1, power iteration gave {radius}")
    return SpectralResult(radius, at_most_one)


def entropy(m: PLTreeMap, config: Optional[OracleConfig] = None) -> float:
    config = config or OracleConfig()
    return spectral_radius(transition_matrix(m), config.tol, config.max_power_iterations).entropy


class _LoopSolver:
    """Affine branches of a Markov map and the fixed points of their compositions."""

    def __init__(self, m: PLTreeMap):
        self.m = m
        self.tm = transition_matrix(m)
        self.edges = self.tm.edges
        self.adj = self.tm.matrix > 0
        self.succ = [tuple(int(j) for j in np.nonzero(row)[0]) for row in self.adj]
        self._back: dict[int, list[np.ndarray]] = {}
        # branch[(i, j)] = (slope, offset, lo, hi): local coordinate s on edge i
        # in [lo, hi] maps to slope * s + offset on edge j.
        self.branch: dict[tuple[int, int], tuple[Fraction, Fraction, Fraction, Fraction]] = {}
        index = m.domain.edge_index
        for i, e in enumerate(self.edges):
            p = m.edge_paths[e]
            length = len(p) - 1
            for k, (a, b) in enumerate(zip(p, p[1:])):
                j = index[edge_key(a, b)]
                lo, hi = Fraction(k, length), Fraction(k + 1, length)
                if (a, b) == self.edges[j]:
                    self.branch[(i, j)] = (Fraction(length), Fraction(-k), lo, hi)
                else:
                    self.branch[(i, j)] = (Fraction(-length), Fraction(k + 1), lo, hi)

    def returns(self, start: int, steps: int) -> list[np.ndarray]:
        """back[r][i]: edge i (index >= start) reaches ``start`` in exactly r steps."""
        back = self._back.get(start)
        if back is None:
            back = [np.zeros(len(self.edges), dtype=bool)]
            back[0][start] = True
            self._back[start] = back
        allowed = np.zeros(len(self.edges), dtype=bool)
        allowed[start:] = True
        sub = (self.adj & allowed[:, None] & allowed[None, :]).astype(np.int64)
        while len(back) <= steps:
            back.append((sub @ back[-1].astype(np.int64)) > 0)
        return back

    def solve(self, loop: list[int]) -> Optional[TreePoint]:
        a, b = Fraction(1), Fraction(0)
        lo, hi = Fraction(0), Fraction(1)
        for i, j in zip(loop, loop[1:] + loop[:1]):
            slope, offset, blo, bhi = self.branch[(i, j)]
            # current position on edge i is a*t + b; require it in [blo, bhi]
            ends = sorted(((blo - b) / a, (bhi - b) / a))
            lo, hi = max(lo, ends[0]), min(hi, ends[1])
            if lo > hi:
                return None
            a, b = slope * a, slope * b + offset
        if a == 1:
            if b != 0:
                return None
            t = lo + (hi - lo) / 3
        else:
            t = b / (1 - a)
        if not lo <= t <= hi:
            raise InvariantViolation(f"loop fixed point {t} escapes its domain [{lo}, {hi}]")
        u, v = self.edges[loop[0]]
        return TreePoint.on_edge(u, v, t)


def exact_period(m: PLTreeMap, x: TreePoint, bound: int) -> Optional[int]:
    y = x
    for q in range(1, bound + 1):
        y = m.evaluate(y)
        if y == x:
            return q
    return None


def _node_cycles(m: PLTreeMap, enum: PeriodEnumeration) -> None:
    for n in m.domain.ordered_nodes:
        x = TreePoint.node(n)
        q = exact_period(m, x, len(m.domain.nodes))
        if q is not None and q not in enum.witnesses:
            enum.witnesses[q] = PeriodicWitness(q, (), x)


class _BudgetExceeded(Exception):
    pass


def _search_period(solver: _LoopSolver, m: PLTreeMap, p: int, budget: int,
                   enum: PeriodEnumeration) -> None:
    steps = 0
    for start in range(len(solver.edges)):
        back = solver.returns(start, p)
        if not back[p][start]:
            continue
        loop = [start]

        def extend() -> bool:
            nonlocal steps
            steps += 1
            if steps > budget:
                raise _BudgetExceeded
            if len(loop) == p:
                if not solver.adj[loop[-1], start]:
                    return False
                x = solver.solve(loop)
                if x is None:
                    return False
                q = exact_period(m, x, p)
                if q is None:
                    raise InvariantViolation(f"loop point {x} does not return after {p} steps")
                if q not in enum.witnesses:
                    enum.witnesses[q] = PeriodicWitness(q, tuple(solver.edges[i] for i in loop), x)
                return q == p
            remaining = p - len(loop)
            for j in solver.succ[loop[-1]]:
                if j < start or not back[remaining][j]:
                    continue
                loop.append(j)
                if extend():
                    return True
                loop.pop()
            return False

        if extend():
            return


def enumerate_periods(m: PLTreeMap, cutoff: int, config: Optional[OracleConfig] = None,
                      only: Optional[Iterable[int]] = None) -> PeriodEnumeration:
    """Exact periods p <= cutoff with one witness each.

    Node orbits are read off the node map; the remaining periodic points are
    found by solving loops of the Markov graph whose smallest edge index is
    their starting edge. A period whose search exhausts the loop budget is
    reported in ``exceeded``.
    """
    if cutoff < 1:
        raise MapError(f"cutoff must be >= 1, got {cutoff}")
    config = config or OracleConfig()
    enum = PeriodEnumeration(cutoff)
    _node_cycles(m, enum)
    solver = _LoopSolver(m)

    wanted = sorted(set(only) if only is not None else range(1, cutoff + 1))
    for p in wanted:
        if p in enum.witnesses or p > cutoff:
            continue
        try:
            _search_period(solver, m, p, config.loop_budget, enum)
        except _BudgetExceeded:
            logger.warning("Loop budget exceeded for period %s", p)
            enum.exceeded.append(p)
    if only is not None:
        keep = set(wanted)
        enum.witnesses = {q: w for q, w in enum.witnesses.items() if q in keep}
    return enum


def find_fixed_point(m: PLTreeMap) -> PeriodicWitness:
    for n in m.domain.ordered_nodes:
        if m.node_image[n] == n:
            return PeriodicWitness(1, (), TreePoint.node(n))
    solver = _LoopSolver(m)
    for i, e in enumerate(solver.edges):
        if solver.adj[i, i]:
            x = solver.solve([i])
            if x is not None and m.evaluate(x) == x:
                return PeriodicWitness(1, (e,), x)
    raise InvariantViolation("tree self-map without a fixed point")
