"""
Zero-entropy maps with a periodic orbit of period 2^k * m, for m <= End(X).

Built as the period-set construction for n = m with the realizer of S(2^k);
the realizer has a node cycle of period 2^k, which becomes a node orbit of
period 2^k * m on the arms.
"""

import logging
from typing import Optional

from ..config import OracleConfig
from ..errors import InvariantViolation, SynthesisError
from ..forcing import FinitePeriodSet
from ..pattern import Pattern, validate
from ..plmap import PLTreeMap, TreePoint, exact_period
from ..snowflake import SnowflakeType, decompose
from ..tree_core import Tree
from .base import SynthesizedMap, Synthesizer
from .interval import interval_images
from .period_set import arm_images

logger = logging.getLogger(__name__)


def _orbit_of_period(m: PLTreeMap, period: int) -> tuple:
    for n in m.domain.ordered_nodes:
        if exact_period(m, TreePoint.node(n), period) == period:
            orbit = [n]
            while len(orbit) < period:
                orbit.append(m.node_image[orbit[-1]])
            return tuple(orbit)
    raise InvariantViolation(f"no node orbit of period {period}")


class Prop3Synthesizer(Synthesizer):
    kind = "prop3"

    def _synthesize_impl(
        self, ambient: Tree, m: int, k: int, cutoff: Optional[int] = None
    ) -> SynthesizedMap:
        if k < 0:
            raise SynthesisError(f"k must be >= 0, got {k}")
        tree, image, _ = arm_images(ambient, m, interval_images(2**k))
        pl = PLTreeMap(tree, image)
        period = 2**k * m
        pattern = validate(tree, _orbit_of_period(pl, period))
        return SynthesizedMap(
            map=pl,
            declared_period_set=FinitePeriodSet(frozenset({1} | {m * 2**i for i in range(k + 1)})),
            declared_entropy_zero=True,
            cutoff=cutoff or 2 * period,
            pattern=pattern,
        )


def synth_prop3(
    ambient: Tree,
    m: int,
    k: int,
    config: Optional[OracleConfig] = None,
    cutoff: Optional[int] = None,
) -> tuple[SynthesizedMap, Pattern, SnowflakeType]:
    result = Prop3Synthesizer(config).synthesize(ambient=ambient, m=m, k=k, cutoff=cutoff)
    decomposition = decompose(result.pattern)
    if not decomposition.is_snowflake:
        raise InvariantViolation("orbit of a zero-entropy map is not a snowflake")
    return result, result.pattern, decomposition.snowflake_type
