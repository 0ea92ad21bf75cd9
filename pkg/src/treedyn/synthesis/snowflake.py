"""
Zero-entropy extension of a combinatorial snowflake.

The ambient tree is subdivided once so that every gap between the hulls of
consecutive levels contains a node. Each gap of level i then collapses onto a
representative node of the next gap of the same level; the representatives
form one cycle of period m_i per level, and every other point funnels into
one of these cycles or into the orbit. Points outside the orbit hull follow
their projection onto it.
"""

import logging
from typing import Optional

from ..config import OracleConfig
from ..errors import InvariantViolation, SynthesisError
from ..forcing import FinitePeriodSet
from ..pattern import Pattern, validate
from ..plmap import PLTreeMap
from ..snowflake import SnowflakeType, decompose
from ..tree_core import Node, Tree, hull, node_key, projection, subdivide
from .base import SynthesizedMap, Synthesizer

logger = logging.getLogger(__name__)


def _place(p: Pattern, ambient: Optional[Tree]) -> Tree:
    if ambient is None:
        return p.tree
    if validate(ambient, p.orbit).tree != p.tree:
        raise SynthesisError("ambient tree does not contain the pattern tree")
    return ambient


def snowflake_images(p: Pattern, kind: SnowflakeType, ambient: Tree) -> tuple[Tree, dict[Node, Node]]:
    tree = subdivide(ambient)
    marked = set(p.orbit)
    levels = kind.levels

    gap_of: dict[Node, tuple[int, int]] = {}
    for i, m in enumerate(levels[:-1]):
        for r in range(m):
            for v in hull(tree, p.orbit[r::m]).node_set:
                if v not in marked:
                    gap_of[v] = (i, r)

    reps: dict[tuple[int, int], Node] = {}
    for v in sorted(gap_of, key=node_key):
        reps.setdefault(gap_of[v], v)
    for i, m in enumerate(levels[:-1]):
        for r in range(m):
            if (i, r) not in reps:
                raise InvariantViolation(f"gap {r} of level {i} contains no node")

    image = dict(p.theta)
    for v, (i, r) in gap_of.items():
        image[v] = reps[(i, (r + 1) % levels[i])]

    core = hull(tree, p.orbit).node_set
    nearest = projection(tree, core)
    for v in tree.nodes - core:
        image[v] = image[nearest[v]]
    return tree, image


class SnowflakeSynthesizer(Synthesizer):
    kind = "snowflake"

    def _synthesize_impl(
        self, pattern: Pattern, ambient: Optional[Tree] = None, cutoff: Optional[int] = None
    ) -> SynthesizedMap:
        decomposition = decompose(pattern)
        if not decomposition.is_snowflake:
            raise SynthesisError("pattern is not a snowflake")
        kind = decomposition.snowflake_type
        tree, image = snowflake_images(pattern, kind, _place(pattern, ambient))
        return SynthesizedMap(
            map=PLTreeMap(tree, image),
            declared_period_set=FinitePeriodSet(frozenset(kind.levels)),
            declared_entropy_zero=True,
            cutoff=cutoff or 2 * pattern.period,
            pattern=pattern,
        )


def synth_snowflake_map(
    p: Pattern,
    ambient: Optional[Tree] = None,
    config: Optional[OracleConfig] = None,
    cutoff: Optional[int] = None,
) -> SynthesizedMap:
    return SnowflakeSynthesizer(config).synthesize(pattern=p, ambient=ambient, cutoff=cutoff)
