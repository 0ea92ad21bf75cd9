import logging
from typing import Optional

from .config import OracleConfig
from .plmap import enumerate_periods, spectral_radius, transition_matrix
from .synthesis.base import SynthesizedMap
from .types import VerificationResult

logger = logging.getLogger(__name__)


def _fmt(periods) -> str:
    return "{" + ", ".join(map(str, sorted(periods))) + "}"


def verify_synthesized(
    result: SynthesizedMap, config: Optional[OracleConfig] = None
) -> VerificationResult:
    """
    Re-check a synthesized map with the Markov oracle.

    Fills ``result.spectral`` and ``result.enumeration`` and compares them with
    the declared period set (up to ``result.cutoff``), the declared entropy
    claim and, when present, the orbit the map has to carry.
    """
    config = config or OracleConfig()
    problems = []

    m = result.map
    m.check()
    if result.pattern is not None:
        theta = result.pattern.theta
        if m.restrict_to(theta) != theta:
            problems.append("map does not restrict to the pattern permutation on the orbit")

    result.spectral = spectral_radius(
        transition_matrix(m), config.tol, config.max_power_iterations
    )
    if result.spectral.at_most_one != result.declared_entropy_zero:
        problems.append(
            f"declared zero entropy {result.declared_entropy_zero}, "
            f"but radius is {result.spectral.radius:.12g}"
        )

    result.enumeration = enumerate_periods(m, result.cutoff, config)
    if result.enumeration.exceeded:
        problems.append(f"loop budget exceeded for periods {_fmt(result.enumeration.exceeded)}")
    expected = result.declared_period_set.up_to(result.cutoff)
    found = result.enumeration.periods
    if not result.enumeration.exceeded and found != expected:
        problems.append(
            f"periods up to {result.cutoff}: found {_fmt(found)}, declared {_fmt(expected)}"
        )

    return summarize_verification(problems)


def summarize_verification(problems: list[str]) -> VerificationResult:
    if not problems:
        return VerificationResult(is_valid=True, bug_report="")
    return VerificationResult(is_valid=False, bug_report="; ".join(problems))
