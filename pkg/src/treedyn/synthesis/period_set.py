"""
Maps whose period set is {1} together with n * S(key).

Fix n endpoints z_1..z_n. Each arm from z_i to the nearest branching node y_i
is rebuilt as y_i - x_i - ... - z_i, with the segment from x_i to z_i a copy
of the interval realizer of S(key). The map is the identity off the arms,
carries arm i onto arm i+1 (the outer edge [y_i, x_i] passes through the
fixed core), and returns from arm n to arm 1 through the interval realizer,
so the n-th iterate on [x_1, z_1] is the realizer itself.

On an interval with n = 2 both arms meet at a new central node. With n = 1
the construction degenerates to the realizer glued at one endpoint.
"""

import logging
from typing import Optional

from ..config import OracleConfig
from ..errors import SynthesisError
from ..forcing import KeyKind, ScaledTail, SharkovskiiKey, is_power_of_two
from ..plmap import PLTreeMap
from ..tree_core import Node, Tree, reduce
from .base import SynthesizedMap, Synthesizer
from .interval import interval_images

logger = logging.getLogger(__name__)


class _Names:
    def __init__(self, taken):
        self.taken = set(taken)

    def fresh(self, label: str) -> str:
        while label in self.taken:
            label += "'"
        self.taken.add(label)
        return label


def _walk_arm(tree: Tree, z: Node) -> list[Node]:
    """Nodes from endpoint z up to the first node of degree other than 2."""
    arm, prev, cur = [z], None, z
    while True:
        nxt = [v for v in tree.neighbors(cur) if v != prev]
        prev, cur = cur, nxt[0]
        arm.append(cur)
        if tree.degree(cur) != 2:
            return arm


def arm_images(ambient: Tree, n: int, g: tuple[int, ...]) -> tuple[Tree, dict[Node, Node], list[list[Node]]]:
    """Rebuild n arms of ``ambient`` around the interval map g; returns tree, images, arm nodes."""
    if not 1 <= n <= reduce(ambient).end_count:
        raise SynthesisError(
            f"n must lie between 1 and End = {reduce(ambient).end_count}, got {n}"
        )
    names = _Names(ambient.nodes)
    ends = ambient.leaves[:n]
    b = len(g) - 1

    edges: list[tuple[Node, Node]] = []
    if reduce(ambient).end_count == 2 and n == 2:
        core = {names.fresh(f"{ends[0]}.c")}
        roots = [next(iter(core))] * 2
    else:
        removed = set()
        roots = []
        for z in ends:
            arm = _walk_arm(ambient, z)
            removed.update(arm[:-1])
            roots.append(arm[-1])
        core = ambient.nodes - removed
        edges += [(u, v) for u, v in ambient.ordered_edges if u in core and v in core]

    arms = []
    for z, y in zip(ends, roots):
        inner = [names.fresh(f"{z}.x")] + [names.fresh(f"{z}.{j}") for j in range(1, b)] + [z]
        edges.append((y, inner[0]))
        edges += list(zip(inner, inner[1:]))
        arms.append(inner)

    image: dict[Node, Node] = {c: c for c in core}
    for i, arm in enumerate(arms):
        for j, node in enumerate(arm):
            image[node] = arms[i + 1][j] if i + 1 < n else arms[0][g[j]]
    return Tree.from_edges(edges, core), image, arms


class PeriodSetSynthesizer(Synthesizer):
    kind = "period-set"

    def _synthesize_impl(
        self, ambient: Tree, n: int, key: SharkovskiiKey | int, cutoff: Optional[int] = None
    ) -> SynthesizedMap:
        if isinstance(key, int):
            key = SharkovskiiKey.of(key)
        if key.kind is not KeyKind.INTEGER:
            raise SynthesisError(f"only finite Sharkovskii keys can be realized, got {key}")
        tree, image, _ = arm_images(ambient, n, interval_images(key.value))
        return SynthesizedMap(
            map=PLTreeMap(tree, image),
            declared_period_set=ScaledTail(n, key),
            declared_entropy_zero=is_power_of_two(key.value),
            cutoff=cutoff or max(5 * n, 8),
        )


def synth_period_set(
    ambient: Tree,
    n: int,
    key: SharkovskiiKey | int,
    config: Optional[OracleConfig] = None,
    cutoff: Optional[int] = None,
) -> SynthesizedMap:
    return PeriodSetSynthesizer(config).synthesize(ambient=ambient, n=n, key=key, cutoff=cutoff)
