import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Optional

from ..config import OracleConfig
from ..errors import BudgetExceededError, InvariantViolation
from ..forcing import PeriodSet
from ..pattern import Pattern
from ..plmap import PeriodEnumeration, PLTreeMap, SpectralResult

logger = logging.getLogger(__name__)


@dataclass
class SynthesizedMap:
    """A constructed map with the claims it is expected to satisfy."""

    map: PLTreeMap
    declared_period_set: PeriodSet
    declared_entropy_zero: bool
    cutoff: int
    pattern: Optional[Pattern] = None  # the orbit the map must carry, when there is one
    spectral: Optional[SpectralResult] = None
    enumeration: Optional[PeriodEnumeration] = None


class Synthesizer(ABC):
    """Base class for constructions; every result is re-checked by the oracle."""

    kind: str = ""

    def __init__(self, config: Optional[OracleConfig] = None):
        self.config = config or OracleConfig()

    def synthesize(self, **params: Any) -> SynthesizedMap:
        """
        Build a map and verify its declared period set and entropy claim.

        This method wraps _synthesize_impl; a construction that fails its own
        verification is a bug and raises InvariantViolation.
        """
        from ..verification import verify_synthesized

        result = self._synthesize_impl(**params)
        verification = verify_synthesized(result, self.config)
        if result.enumeration is not None and result.enumeration.exceeded:
            raise BudgetExceededError(result.enumeration.exceeded)
        if not verification.is_valid:
            logger.error("Synthesized %s map failed verification", self.kind)
            raise InvariantViolation(verification.bug_report)
        logger.info(
            "Synthesized %s map on %s nodes verified up to period %s",
            self.kind,
            len(result.map.domain.nodes),
            result.cutoff,
        )
        return result

    @abstractmethod
    def _synthesize_impl(self, **params: Any) -> SynthesizedMap:
        """Actual construction. Subclasses must implement this."""
        pass
