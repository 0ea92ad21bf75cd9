import logging
import math
from typing import Any, Optional

from .config import OracleConfig
from .errors import BudgetExceededError, InvariantViolation, SynthesisError
from .forcing import (
    admissible_periods,
    ap_numbers,
    best_entropy_bound,
    entropy_lower_bound,
    entropy_lower_bound_weak,
    forced_period_threshold,
    is_ap_number,
    misiurewicz_threshold,
    multiples_witness,
    zero_entropy_admissible,
)
from .pattern import Pattern
from .plmap import (
    PeriodEnumeration,
    PeriodicWitness,
    connect_the_dots,
    enumerate_periods,
    spectral_radius,
    transition_matrix,
)
from .snowflake import decompose
from .synthesis import synth_snowflake_map
from .tree_core import ReducedShape, Tree, reduce

logger = logging.getLogger(__name__)

Report = dict[str, Any]


def _num(x: Optional[float]) -> Optional[float]:
    return None if x is None else round(x, 12)


def witness_record(w: PeriodicWitness) -> Report:
    return {
        "period": w.period,
        "loop": [f"{u}-{v}" for u, v in w.loop],
        "point": str(w.point),
    }


def periods_record(enum: PeriodEnumeration) -> Report:
    return {
        "cutoff": enum.cutoff,
        "periods": sorted(enum.periods),
        "witnesses": {str(p): witness_record(enum.witnesses[p]) for p in sorted(enum.periods)},
        "budget_exceeded": sorted(enum.exceeded),
    }


def forcing_record(n: int, shape: ReducedShape) -> Report:
    """Forcing arithmetic for period n on an ambient tree of the given shape."""
    end, edg = shape.end_count, shape.edge_count
    ap = end >= 2 and is_ap_number(n, end)
    return {
        "ap_number": ap,
        "forced_threshold": forced_period_threshold(n, end) if ap else None,
        "entropy_lower_bound": _num(entropy_lower_bound(n, end)) if ap else None,
        "entropy_lower_bound_weak": _num(entropy_lower_bound_weak(n, end)) if ap else None,
        "best_entropy_bound": _num(best_entropy_bound(n, end)) if end >= 2 else None,
        "misiurewicz_threshold": misiurewicz_threshold(end) if end >= 2 else None,
        "zero_entropy_admissible": zero_entropy_admissible(n, end, edg),
    }


def thresholds_record(end_count: int, edge_count: int, bound: int) -> Report:
    return {
        "end_count": end_count,
        "edge_count": edge_count,
        "bound": bound,
        "misiurewicz_threshold": misiurewicz_threshold(end_count),
        "ap_numbers": ap_numbers(end_count, bound),
        "admissible_periods": admissible_periods(end_count, edge_count, bound),
    }


class PatternAnalyzer:
    """Runs every analysis on one pattern and assembles a deterministic report."""

    def __init__(self, config: Optional[OracleConfig] = None):
        self.config = config or OracleConfig()

    def analyze(
        self,
        pattern: Pattern,
        ambient: Optional[Tree] = None,
        cutoff: Optional[int] = None,
    ) -> Report:
        """
        Analyze a pattern inside its ambient tree.

        Args:
            pattern: The normalized pattern.
            ambient: Tree whose End/Edg enter the forcing numbers; defaults to the hull.
            cutoff: Largest period searched by the oracle; defaults to twice the period.

        Returns:
            The report as a JSON-ready dictionary.
        """
        ambient = ambient or pattern.tree
        shape = reduce(ambient)
        n = pattern.period
        cutoff = cutoff or 2 * n
        logger.info("Analyzing pattern of period %s (End=%s, Edg=%s)", n, shape.end_count, shape.edge_count)

        report: Report = {
            "pattern": {
                "period": n,
                "orbit": [str(a) for a in pattern.orbit],
                "hull_nodes": len(pattern.tree.nodes),
                "end_count": shape.end_count,
                "edge_count": shape.edge_count,
            },
            "snowflake": self._snowflake(pattern),
            "forcing": forcing_record(n, shape),
            "oracle": self._oracle(pattern, cutoff),
        }
        if report["snowflake"]["is_snowflake"]:
            report["synthesis"] = self._synthesis(pattern, ambient)
        return report

    def _snowflake(self, pattern: Pattern) -> Report:
        decomposition = decompose(pattern)
        kind = decomposition.snowflake_type
        return {
            "is_snowflake": decomposition.is_snowflake,
            "levels": list(kind.levels) if kind else None,
            "rejected_steps": [list(s) for s in decomposition.rejected_steps],
        }

    def _oracle(self, pattern: Pattern, cutoff: int) -> Report:
        model = connect_the_dots(pattern)
        tm = transition_matrix(model)
        spectral = spectral_radius(tm, self.config.tol, self.config.max_power_iterations)
        enum = enumerate_periods(model, cutoff, self.config)
        return {
            "radius": _num(spectral.radius),
            "entropy": _num(spectral.entropy),
            "radius_at_most_one": spectral.at_most_one,
            "multiples_witness": multiples_witness(enum.periods, cutoff),
            **periods_record(enum),
        }

    def _synthesis(self, pattern: Pattern, ambient: Tree) -> Report:
        try:
            result = synth_snowflake_map(pattern, ambient, self.config)
        except BudgetExceededError as e:
            logger.warning("Synthesis verification incomplete: %s", e)
            return {"verified": False, "budget_exceeded": e.periods}
        except (SynthesisError, InvariantViolation) as e:
            logger.error("Snowflake synthesis failed: %s", e)
            return {"verified": False, "error": str(e)}
        return {
            "verified": True,
            "declared_periods": result.declared_period_set.describe(),
            "radius": _num(result.spectral.radius),
            "radius_at_most_one": result.spectral.at_most_one,
            "map_nodes": len(result.map.domain.nodes),
            **periods_record(result.enumeration),
        }


def budget_exceeded(report: Report) -> bool:
    """True when any period search in the report ran out of loop budget."""
    sections = [report.get("oracle", {}), report.get("synthesis", {})]
    return any(s.get("budget_exceeded") for s in sections)


def entropy_bound_holds(radius: float, n: int, end_count: int, tol: float) -> bool:
    """Whether a model radius respects the lower bound forced by an ap-period."""
    return radius >= math.exp(entropy_lower_bound(n, end_count)) - tol
