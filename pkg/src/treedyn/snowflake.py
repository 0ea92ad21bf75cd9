"""
Combinatorial snowflakes: a pattern is a snowflake of type 1 = m_0 < ... < m_k = N
when, at every level of the divisor chain, the residue-class blocks have
pairwise disjoint hulls and the blocks of the next level form a surrounding
family inside each block of the current one.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

from sympy import divisors

from .errors import SnowflakeError
from .pattern import Pattern, blocks, is_interval
from .tree_core import Subtree, hull, is_surrounding

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SnowflakeType:
    levels: tuple[int, ...]

    def __post_init__(self):
        if not self.levels or self.levels[0] != 1:
            raise SnowflakeError(f"level chain must start at 1: {self.levels}")
        for a, b in zip(self.levels, self.levels[1:]):
            if b <= a or b % a:
                raise SnowflakeError(f"{self.levels} is not a strict divisibility chain")

    @property
    def period(self) -> int:
        return self.levels[-1]

    @property
    def ratios(self) -> tuple[int, ...]:
        return tuple(b // a for a, b in zip(self.levels, self.levels[1:]))


@dataclass(frozen=True)
class Decomposition:
    """Outcome of :func:`decompose`; ``rejected_steps`` witnesses a refusal."""

    snowflake_type: Optional[SnowflakeType]
    rejected_steps: tuple[tuple[int, int], ...] = field(default=())

    @property
    def is_snowflake(self) -> bool:
        return self.snowflake_type is not None


def _block_hulls(p: Pattern, m: int) -> list[Subtree]:
    return [hull(p.tree, b.nodes) for b in blocks(p, m)]


def level_valid(p: Pattern, m_prev: int, m: int) -> bool:
    n = p.period
    if m_prev >= m or m % m_prev or n % m:
        raise SnowflakeError(f"need m_prev | m | N with m_prev < m, got {m_prev}, {m}, {n}")

    hulls = _block_hulls(p, m)
    seen: set = set()
    for h in hulls:
        if seen & h.node_set:
            return False
        seen |= h.node_set

    for r in range(m_prev):
        family = hulls[r::m_prev]
        if not is_surrounding(p.tree, family):
            return False
    return True


class _ChainSearch:
    """Depth-first search over divisor chains, smallest next divisor first."""

    def __init__(self, p: Pattern):
        self.p = p
        self.divs = [int(d) for d in divisors(p.period)]
        self.valid: dict[tuple[int, int], bool] = {}

    def step(self, a: int, b: int) -> bool:
        if (a, b) not in self.valid:
            self.valid[(a, b)] = level_valid(self.p, a, b)
        return self.valid[(a, b)]

    def chains(self, prefix: tuple[int, ...] = (1,)):
        last = prefix[-1]
        if last == self.p.period:
            yield prefix
            return
        for d in self.divs:
            if d > last and d % last == 0 and self.step(last, d):
                yield from self.chains(prefix + (d,))

    @property
    def rejected(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(k for k, ok in self.valid.items() if not ok))


def decompose(p: Pattern) -> Decomposition:
    """Find the lexicographically smallest valid level chain, if any."""
    search = _ChainSearch(p)
    chain = next(search.chains(), None)
    if chain is None:
        logger.debug("Pattern of period %s is not a snowflake", p.period)
        return Decomposition(None, search.rejected)
    return Decomposition(SnowflakeType(chain), search.rejected)


def all_chains(p: Pattern) -> list[SnowflakeType]:
    return [SnowflakeType(c) for c in _ChainSearch(p).chains()]


def is_snowflake(p: Pattern) -> bool:
    return decompose(p).is_snowflake


def _positions(p: Pattern) -> list:
    """Orbit nodes in spatial order along an interval pattern."""
    if len(p.tree.nodes) == 1:
        return list(p.orbit)
    start = p.tree.leaves[0]
    order, prev, cur = [start], None, start
    while True:
        nxt = [v for v in p.tree.neighbors(cur) if v != prev]
        if not nxt:
            return order
        prev, cur = cur, nxt[0]
        order.append(cur)


def is_simple_interval_orbit(p: Pattern) -> bool:
    """Simple orbits of interval maps, by recursive halving of the orbit."""
    if not is_interval(p):
        raise SnowflakeError("simple orbits are defined for interval patterns only")
    place = {a: i for i, a in enumerate(_positions(p))}
    points = sorted(place[a] for a in p.orbit)
    perm = {place[a]: place[p.theta[a]] for a in p.orbit}
    return _simple(points, perm)


def _simple(points: list[int], perm: dict[int, int]) -> bool:
    n = len(points)
    if n == 1:
        return True
    if n % 2:
        return False
    left, right = set(points[: n // 2]), set(points[n // 2 :])
    if any(perm[x] not in right for x in left) or any(perm[x] not in left for x in right):
        return False
    second = {x: perm[perm[x]] for x in left}
    return _simple(sorted(left), second)
