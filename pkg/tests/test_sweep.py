import pytest

from treedyn.config import OracleConfig
from treedyn.errors import TreeDynError
from treedyn.forcing import multiples_witness
from treedyn.pattern import is_interval
from treedyn.plmap import connect_the_dots
from treedyn.snowflake import is_snowflake
from treedyn.sweep import LazyPeriods, enumerate_patterns, run_sweep
from treedyn.synthesis import synth_snowflake_map


def test_enumeration_up_to_period_three():
    patterns = list(enumerate_patterns(3, 3))
    by_period = {}
    for p in patterns:
        by_period.setdefault(p.period, []).append(p)
    assert {n: len(ps) for n, ps in by_period.items()} == {1: 1, 2: 1, 3: 2}

    interval3, star3 = sorted(by_period[3], key=lambda p: not is_interval(p))
    assert not is_snowflake(interval3)
    assert is_snowflake(star3)


def test_enumeration_respects_endpoint_limit():
    assert all(len(p.tree.leaves) <= 2 for p in enumerate_patterns(5, 2))
    assert all(is_interval(p) for p in enumerate_patterns(5, 2))


def test_interval_sweep_has_no_counterexamples():
    result = run_sweep(4, 2)
    assert result.counterexamples == []
    assert result.budget_exceeded == []
    report = result.to_report()
    assert report["by_period"]["3"] == {"patterns": 1, "snowflakes": 0}
    assert report["checks"]["forcing_tail"] == 1
    assert report["checks"]["interval_simple_orbit"] == report["patterns"]


def test_small_tree_sweep():
    result = run_sweep(3, 3)
    assert result.counterexamples == []
    assert result.snowflakes[3] == 1
    assert result.checks["zero_entropy_no_multiples"] == result.checks["snowflake_synthesis"] == 3
    assert result.checks["positive_entropy_multiples"] == 1
    assert result.multiples_unresolved == []


def test_positive_entropy_model_has_all_multiples_of_one(stefan3):
    periods = LazyPeriods(connect_the_dots(stefan3), OracleConfig())
    assert multiples_witness(periods, 40) == 1
    assert all(periods.known[q] for q in range(1, 41))


def test_zero_entropy_synthesis_has_no_multiples_witness(star_rotation, simple4):
    for p in (star_rotation, simple4):
        enum = synth_snowflake_map(p).enumeration
        assert multiples_witness(enum.periods, enum.cutoff) is None


@pytest.mark.parametrize(("period", "ends"), [(9, 3), (3, 5), (0, 3), (3, 1)])
def test_limits_are_enforced(period, ends):
    with pytest.raises(TreeDynError):
        run_sweep(period, ends)


@pytest.mark.slow
def test_default_sweep_has_no_counterexamples():
    result = run_sweep(6, 3)
    assert result.counterexamples == []
    assert result.budget_exceeded == []
    # period 5 is never admissible with at most three ends
    assert result.snowflakes[5] == 0
    assert result.patterns[5] > 0
