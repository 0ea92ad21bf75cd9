from dataclasses import dataclass
from enum import Enum


class OutputFormat(Enum):
    """Report rendering format."""

    TEXT = "text"
    JSON = "json"


class SynthKind(Enum):
    """Kinds of constructive synthesis exposed by the CLI."""

    SNOWFLAKE = "snowflake"
    PERIOD_SET = "period-set"
    PROP3 = "prop3"
    INTERVAL = "interval"


@dataclass
class VerificationResult:
    """Result of re-checking a synthesized map against its declared claims."""

    is_valid: bool
    bug_report: str  # Empty if is_valid is True
