"""
Exhaustive small-scale sweep over normalized patterns.

Every pattern with N orbit nodes and at most ``max_endpoints`` ends is
generated once up to isomorphism and time rotation, then checked against the
zero-entropy dichotomy, the realization of its permutation by the
connect-the-dots model, the ap-period entropy bound and forcing tail, the
simple-orbit criterion on intervals, and the positive-entropy test of a period
n whose multiples are all periods.
"""

import itertools
import logging
from collections import Counter
from collections.abc import Iterator
from dataclasses import dataclass, field
from typing import Any, Optional

import networkx as nx

from .analysis import entropy_bound_holds
from .config import OracleConfig, SweepLimits
from .errors import BudgetExceededError, InvariantViolation, TreeDynError
from .forcing import forced_period_threshold, is_ap_number, multiples_witness, zero_entropy_admissible
from .pattern import Pattern, canonical_form, is_interval
from .plmap import PLTreeMap, connect_the_dots, enumerate_periods, spectral_radius, transition_matrix
from .snowflake import all_chains, decompose, is_simple_interval_orbit
from .synthesis import synth_snowflake_map
from .tree_core import Tree, path

logger = logging.getLogger(__name__)


def _single_node() -> Iterator[Tree]:
    yield Tree.from_edges((), (0,))


def _trees(order: int) -> Iterator[Tree]:
    if order == 1:
        yield from _single_node()
        return
    for g in nx.nonisomorphic_trees(order):
        yield Tree.from_graph(g)


def enumerate_patterns(max_period: int, max_endpoints: int) -> Iterator[Pattern]:
    """
    All normalized patterns with period <= max_period and at most max_endpoints ends.

    Trees carry N orbit nodes plus b <= max_endpoints - 2 unmarked branch
    nodes of degree >= 3; each tree is paired with every cyclic order fixing
    A_0, and duplicates up to isomorphism and time rotation are dropped.
    """
    for n in range(1, max_period + 1):
        seen: set[str] = set()
        for b in range(max(0, max_endpoints - 2) + 1):
            for tree in _trees(n + b):
                if len(tree.leaves) > max_endpoints:
                    continue
                branching = [v for v in tree.ordered_nodes if tree.degree(v) >= 3]
                for unmarked in itertools.combinations(branching, b):
                    marked = [v for v in tree.ordered_nodes if v not in unmarked]
                    first, rest = marked[0], marked[1:]
                    for order in itertools.permutations(rest):
                        p = Pattern(tree, (first,) + order)
                        key = canonical_form(p)
                        if key in seen:
                            continue
                        seen.add(key)
                        yield p


def _reduced_edges(tree: Tree) -> list[tuple]:
    """Node paths of the edges left after suppressing degree-2 nodes."""
    corners = [v for v in tree.ordered_nodes if tree.degree(v) != 2]
    edges = []
    for a, b in itertools.combinations(corners, 2):
        p = path(tree, a, b)
        if all(tree.degree(v) == 2 for v in p[1:-1]):
            edges.append(p)
    return edges


class LazyPeriods:
    """Period membership of a map, searched one period at a time and cached."""

    def __init__(self, model: PLTreeMap, config: OracleConfig):
        self.model = model
        self.config = config
        self.known: dict[int, bool] = {}

    def __contains__(self, q: object) -> bool:
        if not isinstance(q, int) or q < 1:
            return False
        if q not in self.known:
            enum = enumerate_periods(self.model, q, self.config, only=[q])
            # an exhausted budget counts as absent
            self.known[q] = q in enum.periods
        return self.known[q]


def describe(p: Pattern) -> str:
    edges = ",".join(f"{u}-{v}" for u, v in p.tree.ordered_edges)
    return f"orbit={','.join(map(str, p.orbit))} edges={edges}"


@dataclass
class SweepResult:
    max_period: int
    max_endpoints: int
    forcing_cutoff: int
    patterns: Counter = field(default_factory=Counter)
    snowflakes: Counter = field(default_factory=Counter)
    checks: Counter = field(default_factory=Counter)
    counterexamples: list[dict[str, str]] = field(default_factory=list)
    multi_chain: list[dict[str, Any]] = field(default_factory=list)
    budget_exceeded: list[dict[str, Any]] = field(default_factory=list)
    multiples_unresolved: list[dict[str, Any]] = field(default_factory=list)

    def fail(self, check: str, p: Pattern, detail: str) -> None:
        logger.error("Counterexample to %s: %s (%s)", check, describe(p), detail)
        self.counterexamples.append({"check": check, "pattern": describe(p), "detail": detail})

    def to_report(self) -> dict[str, Any]:
        return {
            "limits": {
                "max_period": self.max_period,
                "max_endpoints": self.max_endpoints,
                "forcing_cutoff": self.forcing_cutoff,
            },
            "patterns": sum(self.patterns.values()),
            "by_period": {
                str(n): {"patterns": self.patterns[n], "snowflakes": self.snowflakes[n]}
                for n in sorted(self.patterns)
            },
            "checks": dict(sorted(self.checks.items())),
            "counterexamples": self.counterexamples,
            "multi_chain": self.multi_chain,
            "budget_exceeded": self.budget_exceeded,
            "multiples_unresolved": self.multiples_unresolved,
        }


class PatternChecker:
    """Runs every sweep check on one pattern, recording outcomes in a SweepResult."""

    def __init__(self, result: SweepResult, config: OracleConfig):
        self.result = result
        self.config = config

    def check(self, p: Pattern) -> None:
        res = self.result
        n = p.period
        shape = p.shape
        res.patterns[n] += 1

        decomposition = decompose(p)
        chains = all_chains(p)
        if len(chains) > 1:
            res.multi_chain.append({"pattern": describe(p), "chains": [list(c.levels) for c in chains]})

        model = connect_the_dots(p)
        res.checks["realization"] += 1
        if model.restrict_to(p.orbit) != p.theta:
            res.fail("realization", p, "connect-the-dots does not extend the permutation")

        try:
            spectral = spectral_radius(
                transition_matrix(model), self.config.tol, self.config.max_power_iterations
            )
        except InvariantViolation as e:
            res.fail("spectral_consistency", p, str(e))
            return

        if decomposition.is_snowflake:
            res.snowflakes[n] += 1
            self._check_snowflake(p, decomposition.snowflake_type.levels)
        else:
            res.checks["nonsnowflake_positive_entropy"] += 1
            if spectral.at_most_one:
                res.fail("nonsnowflake_positive_entropy", p, f"radius {spectral.radius:.12g}")
            else:
                self._check_multiples(p, model)

        if is_interval(p):
            res.checks["interval_simple_orbit"] += 1
            if decomposition.is_snowflake != is_simple_interval_orbit(p):
                res.fail("interval_simple_orbit", p, f"snowflake={decomposition.is_snowflake}")

        if shape.end_count >= 2 and is_ap_number(n, shape.end_count):
            res.checks["ap_entropy_bound"] += 1
            if not entropy_bound_holds(spectral.radius, n, shape.end_count, self.config.tol):
                res.fail("ap_entropy_bound", p, f"radius {spectral.radius:.12g}")
            self._check_forcing_tail(p, model)

    def _check_snowflake(self, p: Pattern, levels: tuple[int, ...]) -> None:
        res = self.result
        n, shape = p.period, p.shape

        res.checks["snowflake_admissible"] += 1
        if not zero_entropy_admissible(n, shape.end_count, shape.edge_count):
            res.fail("snowflake_admissible", p, f"levels {list(levels)}")

        res.checks["snowflake_ratio_bound"] += 1
        if n > 1 and any(r > shape.end_count for r in _ratios(levels)):
            res.fail("snowflake_ratio_bound", p, f"levels {list(levels)} with End={shape.end_count}")

        if n % 2 and n > 1:
            res.checks["odd_edge_bound"] += 1
            marked = set(p.orbit)
            if any(len(marked.intersection(e)) > 1 for e in _reduced_edges(p.tree)):
                res.fail("odd_edge_bound", p, "a reduced edge carries two orbit points")

        res.checks["snowflake_synthesis"] += 1
        try:
            synth = synth_snowflake_map(p, config=self.config, cutoff=2 * n)
        except BudgetExceededError as e:
            res.budget_exceeded.append({"pattern": describe(p), "periods": e.periods})
        except (InvariantViolation, TreeDynError) as e:
            res.fail("snowflake_synthesis", p, str(e))
        else:
            if synth.enumeration.periods != frozenset(levels):
                res.fail("snowflake_synthesis", p, f"periods {sorted(synth.enumeration.periods)}")
            res.checks["zero_entropy_no_multiples"] += 1
            witness = multiples_witness(synth.enumeration.periods, synth.enumeration.cutoff)
            if witness is not None:
                res.fail("zero_entropy_no_multiples", p, f"every multiple of {witness} is a period")

    def _check_multiples(self, p: Pattern, model: PLTreeMap) -> None:
        """Positive entropy: look for n with every multiple up to the forcing cutoff a period."""
        res = self.result
        cutoff = self.config.forcing_cutoff
        res.checks["positive_entropy_multiples"] += 1
        periods = LazyPeriods(model, self.config)
        if multiples_witness(periods, cutoff) is None:
            res.multiples_unresolved.append({
                "pattern": describe(p),
                "periods": sorted(q for q, found in periods.known.items() if found),
            })

    def _check_forcing_tail(self, p: Pattern, model) -> None:
        res = self.result
        n, end = p.period, p.shape.end_count
        cutoff = self.config.forcing_cutoff
        threshold = forced_period_threshold(n, end)
        if threshold >= cutoff:
            return
        res.checks["forcing_tail"] += 1
        wanted = range(threshold + 1, cutoff + 1)
        enum = enumerate_periods(model, cutoff, self.config, only=wanted)
        if enum.exceeded:
            res.budget_exceeded.append({"pattern": describe(p), "periods": sorted(enum.exceeded)})
        missing = [q for q in wanted if q not in enum.periods and q not in enum.exceeded]
        if missing:
            res.fail("forcing_tail", p, f"periods above {threshold} missing: {missing}")


def _ratios(levels: tuple[int, ...]) -> list[int]:
    return [b // a for a, b in zip(levels, levels[1:])]


def check_limits(max_period: int, max_endpoints: int, limits: Optional[SweepLimits] = None) -> None:
    limits = limits or SweepLimits()
    if not 1 <= max_period <= limits.max_period:
        raise TreeDynError(f"max period must lie in 1..{limits.max_period}, got {max_period}")
    if not 2 <= max_endpoints <= limits.max_endpoints:
        raise TreeDynError(f"max endpoints must lie in 2..{limits.max_endpoints}, got {max_endpoints}")


def run_sweep(
    max_period: int,
    max_endpoints: int,
    config: Optional[OracleConfig] = None,
    limits: Optional[SweepLimits] = None,
) -> SweepResult:
    """
    Enumerate every pattern within the limits and check it.

    Args:
        max_period: Largest period N enumerated.
        max_endpoints: Largest number of ends of the pattern hull.
        config: Oracle settings; ``forcing_cutoff`` bounds the forcing-tail check.
        limits: Caps on the accepted limits.

    Returns:
        Counts per period and per check, plus every counterexample found.
    """
    check_limits(max_period, max_endpoints, limits)
    config = config or OracleConfig()
    result = SweepResult(max_period, max_endpoints, config.forcing_cutoff)
    checker = PatternChecker(result, config)
    for p in enumerate_patterns(max_period, max_endpoints):
        checker.check(p)
    logger.info(
        "Sweep checked %s patterns, %s counterexamples",
        sum(result.patterns.values()),
        len(result.counterexamples),
    )
    return result
