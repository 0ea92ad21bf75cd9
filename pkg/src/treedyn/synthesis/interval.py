"""
Piecewise-linear interval maps with a prescribed Sharkovskii period set.

A realizer is the list of node images on the path 0 - 1 - ... - B; both
endpoints are fixed. Odd keys use the Stefan cycle, even keys the doubling
operator, whose period set is {1} together with twice the original one.
"""

import logging
from typing import Optional

from ..errors import SynthesisError
from ..forcing import SharkovskiiKey, SharkovskiiTail, is_power_of_two
from ..plmap import PLTreeMap
from ..tree_core import Tree
from .base import SynthesizedMap, Synthesizer

logger = logging.getLogger(__name__)


def path_tree(length: int) -> Tree:
    return Tree.from_edges(((i, i + 1) for i in range(length)), range(length + 1))


def stefan_images(k: int) -> tuple[int, ...]:
    """Stefan cycle of odd period k on positions 1..k, spiralling out from the centre."""
    if k < 3 or k % 2 == 0:
        raise SynthesisError(f"Stefan cycles have odd period >= 3, got {k}")
    q = k // 2
    centre = q + 1
    order = [centre]
    for j in range(1, q + 1):
        order += [centre + j, centre - j]
    images = list(range(k + 2))
    for i, pos in enumerate(order):
        images[pos] = order[(i + 1) % k]
    return tuple(images)


def doubled_images(g: tuple[int, ...]) -> tuple[int, ...]:
    """Two copies of g's interval swapped by the map, with the return branch given by g.

    Layout: fixed 0, copy one on 1..1+B, one middle edge, copy two on
    2+B..2+2B, fixed 3+2B.
    """
    b = len(g) - 1
    first, second, last = 1, 2 + b, 3 + 2 * b
    images = [0] * (last + 1)
    for t in range(b + 1):
        images[first + t] = second + t
        images[second + t] = first + g[t]
    images[last] = last
    return tuple(images)


def interval_images(key: int) -> tuple[int, ...]:
    if key < 1:
        raise SynthesisError(f"Sharkovskii key must be >= 1, got {key}")
    if key == 1:
        return (0, 1)
    if key % 2:
        return stefan_images(key)
    return doubled_images(interval_images(key // 2))


def realize_interval(key: int) -> PLTreeMap:
    """Interval map with period set S(key) fixing both endpoints."""
    images = interval_images(key)
    logger.debug("Interval realizer for key %s has %s edges", key, len(images) - 1)
    return PLTreeMap(path_tree(len(images) - 1), dict(enumerate(images)))


class IntervalSynthesizer(Synthesizer):
    kind = "interval"

    def _synthesize_impl(self, key: int, cutoff: Optional[int] = None) -> SynthesizedMap:
        return SynthesizedMap(
            map=realize_interval(key),
            declared_period_set=SharkovskiiTail(SharkovskiiKey.of(key)),
            declared_entropy_zero=is_power_of_two(key),
            cutoff=cutoff or max(2 * key, 8),
        )
