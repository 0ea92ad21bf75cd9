"""
Number-theoretic content of period forcing on trees: the Sharkovskii order,
ap-numbers, forced-period thresholds, entropy lower bounds and the set of
periods admissible for zero-entropy maps.
"""

import math
from abc import ABC, abstractmethod
from collections.abc import Container
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from sympy import divisors, factorint, nextprime

from .errors import ForcingError

LN2 = math.log(2)


class KeyKind(Enum):
    INTEGER = "integer"
    TWO_INF = "2^inf"
    EMPTY = "empty"


@dataclass(frozen=True)
class SharkovskiiKey:
    kind: KeyKind
    value: int = 0

    def __post_init__(self):
        if self.kind is KeyKind.INTEGER and self.value < 1:
            raise ForcingError(f"Sharkovskii key must be >= 1, got {self.value}")

    @classmethod
    def of(cls, k: int) -> "SharkovskiiKey":
        return cls(KeyKind.INTEGER, k)

    def __str__(self) -> str:
        return str(self.value) if self.kind is KeyKind.INTEGER else self.kind.value


TWO_INF = SharkovskiiKey(KeyKind.TWO_INF)
EMPTY = SharkovskiiKey(KeyKind.EMPTY)


def _split_two(n: int) -> tuple[int, int]:
    s = 0
    while n % 2 == 0:
        n //= 2
        s += 1
    return s, n


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def _sharkovskii_rank(n: int) -> tuple[int, int, int]:
    s, odd = _split_two(n)
    if odd > 1:
        return (0, s, odd)
    return (1, -s, 0)


def sharkovskii_less(a: int, b: int) -> bool:
    """True iff a strictly precedes b: 3, 5, 7, ..., 2*3, 2*5, ..., 8, 4, 2, 1."""
    if a < 1 or b < 1:
        raise ForcingError(f"Sharkovskii order is defined on positive integers, got {a}, {b}")
    return _sharkovskii_rank(a) < _sharkovskii_rank(b)


class PeriodSet(ABC):
    """A possibly infinite set of periods, queried by membership."""

    @abstractmethod
    def __contains__(self, p: int) -> bool: ...

    @abstractmethod
    def describe(self) -> str: ...

    def up_to(self, cutoff: int) -> frozenset[int]:
        return frozenset(p for p in range(1, cutoff + 1) if p in self)


@dataclass(frozen=True)
class FinitePeriodSet(PeriodSet):
    members: frozenset[int]

    def __post_init__(self):
        if any(p < 1 for p in self.members):
            raise ForcingError("periods must be >= 1")

    def __contains__(self, p: int) -> bool:
        return p in self.members

    def describe(self) -> str:
        return "{" + ", ".join(map(str, sorted(self.members))) + "}"


@dataclass(frozen=True)
class CofinitePeriodSet(PeriodSet):
    """``members`` together with every integer >= ``start``."""

    members: frozenset[int]
    start: int

    def __contains__(self, p: int) -> bool:
        return p in self.members or p >= self.start

    def describe(self) -> str:
        head = ", ".join(map(str, sorted(m for m in self.members if m < self.start)))
        return "{" + (head + ", " if head else "") + f"n >= {self.start}" + "}"


@dataclass(frozen=True)
class SharkovskiiTail(PeriodSet):
    """S(key): key together with everything it precedes."""

    key: SharkovskiiKey

    def __contains__(self, p: int) -> bool:
        if p < 1:
            return False
        match self.key.kind:
            case KeyKind.EMPTY:
                return False
            case KeyKind.TWO_INF:
                return is_power_of_two(p)
        k = self.key.value
        return p == k or sharkovskii_less(k, p)

    def describe(self) -> str:
        return f"S({self.key})"


@dataclass(frozen=True)
class ScaledTail(PeriodSet):
    """{1} together with n * S(key)."""

    n: int
    key: SharkovskiiKey

    def __contains__(self, p: int) -> bool:
        if p == 1:
            return True
        return p % self.n == 0 and (p // self.n) in SharkovskiiTail(self.key)

    def describe(self) -> str:
        return f"{{1}} + {self.n}*S({self.key})"


def sharkovskii_tail(key: SharkovskiiKey) -> SharkovskiiTail:
    return SharkovskiiTail(key)


def _prime_factors(n: int) -> list[int]:
    return sorted(factorint(n))


def is_ap_number(n: int, end_count: int) -> bool:
    """n > 1 with no prime divisor below end_count + 1."""
    if n <= 1:
        return False
    return all(q >= end_count + 1 for q in _prime_factors(n))


def _require_ap(n: int, end_count: int) -> None:
    if not is_ap_number(n, end_count):
        raise ForcingError(f"{n} is not an ap-number for a tree with {end_count} endpoints")


def forced_period_threshold(n: int, end_count: int) -> int:
    """A period-n cycle forces every period above this value."""
    _require_ap(n, end_count)
    return 2 * end_count * (n - 1)


def entropy_lower_bound(n: int, end_count: int) -> float:
    _require_ap(n, end_count)
    return LN2 / (n * end_count - 1)


def entropy_lower_bound_weak(n: int, end_count: int) -> float:
    """The cruder bound ln2 / (n*End - n), beaten by any factorized bound."""
    _require_ap(n, end_count)
    return LN2 / (n * end_count - n)


def best_entropy_bound(n: int, end_count: int) -> Optional[float]:
    """Best bound ln2 / (k(p*End - 1)) over factorizations n = p*k with p an ap-number."""
    if n < 1:
        raise ForcingError(f"period must be >= 1, got {n}")
    bounds = [
        LN2 / ((n // p) * (p * end_count - 1))
        for p in map(int, divisors(n))
        if is_ap_number(p, end_count)
    ]
    return max(bounds) if bounds else None


def misiurewicz_threshold(end_count: int) -> int:
    """L such that periods 1..L present forces every period."""
    if end_count < 2:
        raise ForcingError(f"end count must be >= 2, got {end_count}")
    p = int(nextprime(end_count))
    return 2 * end_count * (p - 1)


def zero_entropy_admissible(n: int, end_count: int, edge_count: int) -> bool:
    """n = 2^l * m with m odd, m <= Edg and every prime of m below End + 1."""
    if n < 1:
        raise ForcingError(f"period must be >= 1, got {n}")
    _, m = _split_two(n)
    if m > edge_count and m > 1:
        return False
    return all(q < end_count + 1 for q in _prime_factors(m))


def ap_numbers(end_count: int, bound: int) -> list[int]:
    return [n for n in range(2, bound + 1) if is_ap_number(n, end_count)]


def admissible_periods(end_count: int, edge_count: int, bound: int) -> list[int]:
    return [n for n in range(1, bound + 1) if zero_entropy_admissible(n, end_count, edge_count)]


def multiples_witness(periods: Container[int], cutoff: int) -> Optional[int]:
    """Smallest n whose multiples up to cutoff are all periods, or None.

    Only n <= cutoff // 3 is tried, so a witness always has at least three
    multiples n, 2n, 3n; no divisor chain of zero-entropy levels contains
    all three.
    """
    if cutoff < 1:
        raise ForcingError(f"cutoff must be >= 1, got {cutoff}")
    for n in range(1, cutoff // 3 + 1):
        if all(q in periods for q in range(n, cutoff + 1, n)):
            return n
    return None
