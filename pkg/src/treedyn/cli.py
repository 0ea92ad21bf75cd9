import dataclasses
import logging
import sys
from pathlib import Path
from typing import Optional

import typer

from treedyn.analysis import PatternAnalyzer, budget_exceeded, periods_record, thresholds_record
from treedyn.config import OracleConfig, SweepLimits
from treedyn.errors import BudgetExceededError, PatternFileError, TreeDynError
from treedyn.patternfile import dump_pattern, dump_synthesized, load_tree, read_pattern_file
from treedyn.report import render
from treedyn.snowflake import decompose
from treedyn.sweep import run_sweep
from treedyn.synthesis import SynthesizedMap, get_synthesizer
from treedyn.types import OutputFormat, SynthKind

app = typer.Typer(no_args_is_help=True, help="Combinatorial dynamics of tree maps.")
logger = logging.getLogger(__name__)

EXIT_COUNTEREXAMPLE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_SYNTHESIS = 4

FORMAT = typer.Option(OutputFormat.TEXT, "--format", "-f", help="Report format: text or json.")
TOL = typer.Option(OracleConfig.tol, "--tol", help="Numerical tolerance of the spectral radius.")
BUDGET = typer.Option(OracleConfig.loop_budget, "--budget", help="Loop-search steps allowed per period.")
OUT = typer.Option(None, "--out", "-o", help="Also write the report to this file.")


@app.callback()
def main(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log debug messages."),
    quiet: bool = typer.Option(False, "--quiet", "-q", help="Log warnings and errors only."),
):
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
        force=True,
    )


def _config(tol: float, budget: int, **overrides) -> OracleConfig:
    return dataclasses.replace(OracleConfig(), tol=tol, loop_budget=budget, **overrides)


def _emit(report: dict, fmt: OutputFormat, out: Optional[Path]) -> None:
    text = render(report, fmt)
    typer.echo(text, nl=False)
    if out:
        out.write_text(text)
        logger.info("Report saved to %s", out)


def _fail(code: int, message: str) -> typer.Exit:
    logger.error(message)
    return typer.Exit(code=code)


@app.command()
def analyze(
    pattern_file: Path = typer.Argument(..., help="Pattern file to analyze."),
    cutoff: Optional[int] = typer.Option(None, "--cutoff", help="Largest period searched; default 2N."),
    tol: float = TOL,
    budget: int = BUDGET,
    fmt: OutputFormat = FORMAT,
    out: Optional[Path] = OUT,
):
    """
    Decompose a pattern, compute its forcing numbers and run the Markov oracle.
    """
    try:
        parsed = read_pattern_file(pattern_file)
    except PatternFileError as e:
        raise _fail(EXIT_INPUT, f"{pattern_file}: {e}")

    report = PatternAnalyzer(_config(tol, budget)).analyze(parsed.pattern, parsed.ambient, cutoff)
    _emit(report, fmt, out)
    if budget_exceeded(report):
        raise _fail(EXIT_BUDGET, "loop budget exceeded; some periods are undecided")


@app.command()
def thresholds(
    end_count: int = typer.Argument(..., help="Number of endpoints End(X)."),
    edge_count: int = typer.Argument(..., help="Number of edges Edg(X)."),
    cutoff: int = typer.Option(50, "--cutoff", help="Bound for the ap-number and admissible lists."),
    tol: float = TOL,
    budget: int = BUDGET,
    fmt: OutputFormat = FORMAT,
    out: Optional[Path] = OUT,
):
    """
    Print the Misiurewicz threshold, ap-numbers and zero-entropy admissible periods.

    --tol and --budget are accepted for uniformity; no oracle runs here.
    """
    if end_count < 2 or edge_count < 1 or cutoff < 1:
        raise _fail(EXIT_INPUT, "need End >= 2, Edg >= 1 and a positive cutoff")
    _emit(thresholds_record(end_count, edge_count, cutoff), fmt, out)


@app.command()
def sweep(
    max_period: int = typer.Option(SweepLimits.default_period, "--max-period", help="Largest period N."),
    max_endpoints: int = typer.Option(
        SweepLimits.default_endpoints, "--max-endpoints", help="Largest number of ends of a pattern hull."
    ),
    cutoff: int = typer.Option(
        OracleConfig.forcing_cutoff, "--cutoff", help="Largest period of the forcing-tail check."
    ),
    tol: float = TOL,
    budget: int = BUDGET,
    fmt: OutputFormat = FORMAT,
    out: Optional[Path] = OUT,
):
    """
    Check every small pattern against the zero-entropy dichotomy and the forcing bounds.
    """
    try:
        result = run_sweep(max_period, max_endpoints, _config(tol, budget, forcing_cutoff=cutoff))
    except TreeDynError as e:
        raise _fail(EXIT_INPUT, f"sweep refused: {e}")

    _emit(result.to_report(), fmt, out)
    if result.counterexamples:
        raise _fail(EXIT_COUNTEREXAMPLE, f"{len(result.counterexamples)} counterexamples found")
    if result.budget_exceeded:
        raise _fail(EXIT_BUDGET, f"loop budget exceeded on {len(result.budget_exceeded)} patterns")


@app.command()
def synth(
    kind: SynthKind = typer.Argument(..., help="snowflake, period-set, prop3 or interval."),
    pattern_file: Optional[Path] = typer.Option(None, "--pattern", help="Pattern file (snowflake)."),
    tree: str = typer.Option("star3", "--tree", help="Ambient tree: interval, starK, h or a tree file."),
    n: int = typer.Option(1, "--n", help="Number of permuted arms (period-set)."),
    key: int = typer.Option(1, "--key", help="Sharkovskii key (period-set, interval)."),
    m: int = typer.Option(1, "--m", help="Odd factor of the orbit period (prop3)."),
    k: int = typer.Option(0, "--k", help="Power of two in the orbit period (prop3)."),
    map_out: Optional[Path] = typer.Option(None, "--map-out", help="Write the map dump to this file."),
    pattern_out: Optional[Path] = typer.Option(
        None, "--pattern-out", help="Write the pattern file of the orbit (snowflake, prop3)."
    ),
    cutoff: Optional[int] = typer.Option(None, "--cutoff", help="Largest period verified."),
    tol: float = TOL,
    budget: int = BUDGET,
    fmt: OutputFormat = FORMAT,
    out: Optional[Path] = OUT,
):
    """
    Build a map realizing a construction and verify it with the Markov oracle.
    """
    if pattern_out and kind not in (SynthKind.SNOWFLAKE, SynthKind.PROP3):
        raise _fail(EXIT_INPUT, f"{kind.value} synthesis has no orbit pattern to write")
    synthesizer = get_synthesizer(kind, _config(tol, budget))
    try:
        match kind:
            case SynthKind.SNOWFLAKE:
                if pattern_file is None:
                    raise _fail(EXIT_INPUT, "snowflake synthesis needs --pattern")
                parsed = read_pattern_file(pattern_file)
                params = {"pattern": parsed.pattern, "ambient": parsed.ambient}
            case SynthKind.PERIOD_SET:
                params = {"ambient": load_tree(tree), "n": n, "key": key}
            case SynthKind.PROP3:
                params = {"ambient": load_tree(tree), "m": m, "k": k}
            case SynthKind.INTERVAL:
                params = {"key": key}
        result = synthesizer.synthesize(cutoff=cutoff, **params)
    except PatternFileError as e:
        raise _fail(EXIT_INPUT, str(e))
    except BudgetExceededError as e:
        raise _fail(EXIT_BUDGET, str(e))
    except TreeDynError as e:
        raise _fail(EXIT_SYNTHESIS, f"synthesis precondition failed: {e}")

    if map_out:
        map_out.write_text(dump_synthesized(result, kind.value))
        logger.info("Map dump saved to %s", map_out)
    if pattern_out:
        pattern_out.write_text(dump_pattern(result.pattern, result.map.domain))
        logger.info("Pattern file saved to %s", pattern_out)
    _emit(_synth_report(kind, params, result), fmt, out)


def _synth_report(kind: SynthKind, params: dict, result: SynthesizedMap) -> dict:
    shown = {name: value for name, value in params.items() if isinstance(value, int)}
    report = {
        "kind": kind.value,
        "parameters": shown,
        "map_nodes": len(result.map.domain.nodes),
        "declared_periods": result.declared_period_set.describe(),
        "declared_zero_entropy": result.declared_entropy_zero,
        "radius": round(result.spectral.radius, 12),
        "radius_at_most_one": result.spectral.at_most_one,
        "verified": True,
        **periods_record(result.enumeration),
    }
    if result.pattern is not None:
        report["orbit"] = [str(a) for a in result.pattern.orbit]
        kind_of_orbit = decompose(result.pattern).snowflake_type
        report["snowflake_levels"] = list(kind_of_orbit.levels) if kind_of_orbit else None
    return report


if __name__ == "__main__":
    app()
