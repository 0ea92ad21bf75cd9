from dataclasses import dataclass


@dataclass(frozen=True)
class OracleConfig:
    """Centralized configuration for the Markov oracle and the analyses built on it."""

    tol: float = 1e-9
    loop_budget: int = 1_000_000  # DFS steps allowed per searched period
    max_power_iterations: int = 200_000
    forcing_cutoff: int = 40


@dataclass(frozen=True)
class SweepLimits:
    """Hard caps on the exhaustive sweep; requests beyond these are refused."""

    max_period: int = 8
    max_endpoints: int = 4
    default_period: int = 6
    default_endpoints: int = 3
