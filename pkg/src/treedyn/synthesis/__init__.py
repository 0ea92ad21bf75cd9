from .base import SynthesizedMap, Synthesizer
from .interval import realize_interval
from .period_set import synth_period_set
from .prop3 import synth_prop3
from .registry import get_synthesizer
from .snowflake import synth_snowflake_map

__all__ = [
    "SynthesizedMap",
    "Synthesizer",
    "get_synthesizer",
    "realize_interval",
    "synth_period_set",
    "synth_prop3",
    "synth_snowflake_map",
]
