"""Combinatorial dynamics of tree maps: snowflake orbits, period forcing and Markov models."""

from .analysis import PatternAnalyzer
from .config import OracleConfig, SweepLimits
from .forcing import (
    SharkovskiiKey,
    SharkovskiiTail,
    entropy_lower_bound,
    forced_period_threshold,
    is_ap_number,
    misiurewicz_threshold,
    multiples_witness,
    sharkovskii_less,
    zero_entropy_admissible,
)
from .pattern import Pattern, validate
from .plmap import PLTreeMap, connect_the_dots, enumerate_periods, spectral_radius, transition_matrix
from .snowflake import SnowflakeType, decompose, is_snowflake
from .synthesis import realize_interval, synth_period_set, synth_prop3, synth_snowflake_map
from .tree_core import Tree, hull, reduce

__all__ = [
    "OracleConfig",
    "PLTreeMap",
    "Pattern",
    "PatternAnalyzer",
    "SharkovskiiKey",
    "SharkovskiiTail",
    "SnowflakeType",
    "SweepLimits",
    "Tree",
    "connect_the_dots",
    "decompose",
    "entropy_lower_bound",
    "enumerate_periods",
    "forced_period_threshold",
    "hull",
    "is_ap_number",
    "is_snowflake",
    "misiurewicz_threshold",
    "multiples_witness",
    "realize_interval",
    "reduce",
    "sharkovskii_less",
    "spectral_radius",
    "synth_period_set",
    "synth_prop3",
    "synth_snowflake_map",
    "transition_matrix",
    "validate",
    "zero_entropy_admissible",
]
