from typing import Optional

from ..config import OracleConfig
from ..types import SynthKind
from .base import Synthesizer
from .interval import IntervalSynthesizer
from .period_set import PeriodSetSynthesizer
from .prop3 import Prop3Synthesizer
from .snowflake import SnowflakeSynthesizer

SYNTHESIZERS: dict[SynthKind, type[Synthesizer]] = {
    SynthKind.SNOWFLAKE: SnowflakeSynthesizer,
    SynthKind.PERIOD_SET: PeriodSetSynthesizer,
    SynthKind.PROP3: Prop3Synthesizer,
    SynthKind.INTERVAL: IntervalSynthesizer,
}


def get_synthesizer(
    kind: SynthKind | str,
    config: Optional[OracleConfig] = None,
) -> Synthesizer:
    """
    Factory function to create a synthesizer by kind.

    Args:
        kind: One of "snowflake", "period-set", "prop3", "interval".
        config: Optional OracleConfig used when verifying the construction.

    Returns:
        An instance of the matching Synthesizer subclass.

    Raises:
        ValueError: If the kind is unknown.
    """
    try:
        kind = SynthKind(kind) if isinstance(kind, str) else kind
    except ValueError:
        available = ", ".join(k.value for k in SynthKind)
        raise ValueError(f"Unknown synthesis kind: {kind}. Available kinds: {available}") from None
    return SYNTHESIZERS[kind](config)
