import pytest

from treedyn.config import OracleConfig
from treedyn.errors import BudgetExceededError, InvariantViolation, SynthesisError
from treedyn.forcing import TWO_INF, FinitePeriodSet
from treedyn.pattern import validate
from treedyn.plmap import TreePoint, exact_period
from treedyn.synthesis import (
    get_synthesizer,
    realize_interval,
    synth_period_set,
    synth_prop3,
    synth_snowflake_map,
)
from treedyn.synthesis.base import SynthesizedMap
from treedyn.synthesis.interval import IntervalSynthesizer, interval_images, stefan_images
from treedyn.tree_core import Tree
from treedyn.verification import verify_synthesized


def test_period_set_on_three_star(star3):
    result = synth_period_set(star3, 3, 2, cutoff=15)
    assert result.enumeration.periods == {1, 3, 6}
    assert result.spectral.at_most_one


def test_period_set_with_odd_key(star3):
    result = synth_period_set(star3, 3, 3, cutoff=12)
    assert result.enumeration.periods == {1, 3, 6, 9, 12}
    assert not result.spectral.at_most_one


def test_period_set_on_interval_with_two_arms():
    result = synth_period_set(Tree.from_edges([("a", "b")]), 2, 4)
    assert result.enumeration.periods == {1, 2, 4, 8}


def test_period_set_preconditions(star3):
    with pytest.raises(SynthesisError):
        synth_period_set(star3, 4, 2)
    with pytest.raises(SynthesisError):
        synth_period_set(star3, 0, 2)
    with pytest.raises(SynthesisError):
        synth_period_set(star3, 3, TWO_INF)


def test_prop3_on_three_star(star3):
    result, pattern, kind = synth_prop3(star3, 3, 1)
    assert pattern.period == 6
    assert kind.levels == (1, 3, 6)
    assert result.enumeration.periods == {1, 3, 6}
    assert result.map.restrict_to(pattern.orbit) == pattern.theta


def test_prop3_preconditions(star3):
    with pytest.raises(SynthesisError):
        synth_prop3(star3, 4, 0)
    with pytest.raises(SynthesisError):
        synth_prop3(star3, 3, -1)


def test_stefan_cycle_images():
    images = stefan_images(5)
    assert images[0] == 0 and images[6] == 6
    x, seen = 3, []
    for _ in range(5):
        seen.append(x)
        x = images[x]
    assert x == 3 and sorted(seen) == [1, 2, 3, 4, 5]
    with pytest.raises(SynthesisError):
        stefan_images(4)


@pytest.mark.parametrize(
    ("key", "cutoff", "periods"),
    [
        (1, 6, {1}),
        (2, 8, {1, 2}),
        (3, 8, set(range(1, 9))),
        (4, 8, {1, 2, 4}),
        (6, 12, {1, 2, 4, 6, 8, 10, 12}),
    ],
)
def test_interval_realizers(key, cutoff, periods):
    result = get_synthesizer("interval").synthesize(key=key, cutoff=cutoff)
    assert result.enumeration.periods == periods


def test_interval_realizer_fixes_both_ends():
    m = realize_interval(4)
    ends = m.domain.leaves
    assert all(m.node_image[e] == e for e in ends)
    with pytest.raises(SynthesisError):
        interval_images(0)


def test_snowflake_synthesis(star_rotation, simple4):
    result = synth_snowflake_map(star_rotation)
    assert result.enumeration.periods == {1, 3}
    assert result.spectral.at_most_one

    result = synth_snowflake_map(simple4)
    assert result.enumeration.periods == {1, 2, 4}
    assert result.map.restrict_to(simple4.orbit) == simple4.theta


def test_snowflake_synthesis_in_a_larger_ambient_tree(h_tree):
    p = validate(h_tree, ["a", "b", "e"])
    result = synth_snowflake_map(p, h_tree)
    assert "f" in result.map.domain.nodes
    assert result.enumeration.periods == {1, 3}


def test_snowflake_synthesis_refuses(stefan3, star_rotation):
    with pytest.raises(SynthesisError):
        synth_snowflake_map(stefan3)
    with pytest.raises(SynthesisError):
        synth_snowflake_map(star_rotation, Tree.from_edges([("a", "b"), ("b", "c")]))


def test_budget_exceeded_is_raised():
    with pytest.raises(BudgetExceededError) as info:
        IntervalSynthesizer(OracleConfig(loop_budget=1)).synthesize(key=3, cutoff=8)
    assert 2 in info.value.periods


def test_verification_catches_wrong_claims():
    result = SynthesizedMap(
        map=realize_interval(3),
        declared_period_set=FinitePeriodSet(frozenset({1, 3})),
        declared_entropy_zero=True,
        cutoff=4,
    )
    verdict = verify_synthesized(result)
    assert not verdict.is_valid
    assert "periods up to 4" in verdict.bug_report
    assert "declared zero entropy" in verdict.bug_report


def test_synthesizer_rejects_its_own_bad_output():
    class Wrong(IntervalSynthesizer):
        def _synthesize_impl(self, key, cutoff=None):
            result = super()._synthesize_impl(key, cutoff)
            result.declared_period_set = FinitePeriodSet(frozenset({1}))
            return result

    with pytest.raises(InvariantViolation):
        Wrong().synthesize(key=3, cutoff=4)


def test_registry_rejects_unknown_kinds():
    with pytest.raises(ValueError):
        get_synthesizer("bogus")


def test_prop3_orbit_is_a_node_orbit(star3):
    result, pattern, _ = synth_prop3(star3, 2, 2)
    x = TreePoint.node(pattern.orbit[0])
    assert exact_period(result.map, x, 8) == 8
