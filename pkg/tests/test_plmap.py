import math
from fractions import Fraction

import numpy as np
import pytest

from treedyn.config import OracleConfig
from treedyn.errors import MapError
from treedyn.plmap import (
    PLTreeMap,
    TreePoint,
    connect_the_dots,
    entropy,
    enumerate_periods,
    exact_period,
    find_fixed_point,
    spectral_radius,
    transition_matrix,
)
from treedyn.tree_core import Tree

GOLDEN = (1 + math.sqrt(5)) / 2


def test_tree_points_normalize_orientation():
    x = TreePoint.on_edge("b", "a", Fraction(1, 4))
    assert x == TreePoint.on_edge("a", "b", Fraction(3, 4))
    assert TreePoint.on_edge("a", "b", Fraction(0)) == TreePoint.node("a")
    assert str(TreePoint.node("a")) == "a"


def test_map_requires_total_node_image(star3):
    with pytest.raises(MapError):
        PLTreeMap(star3, {"o": "o"})
    with pytest.raises(MapError):
        PLTreeMap(star3, {"o": "o", "a": "a", "b": "b", "c": "zz"})


def test_stefan_model(stefan3):
    m = connect_the_dots(stefan3)
    assert m.restrict_to(stefan3.orbit) == stefan3.theta
    tm = transition_matrix(m)
    assert tm.edges == (("x1", "x2"), ("x2", "x3"))
    assert tm.as_lists() == [[0, 1], [1, 1]]

    spectral = spectral_radius(tm)
    assert abs(spectral.radius - GOLDEN) <= 1e-9
    assert not spectral.at_most_one
    assert math.isclose(entropy(m), math.log(GOLDEN), abs_tol=1e-9)


def test_stefan_model_has_every_period(stefan3):
    m = connect_the_dots(stefan3)
    enum = enumerate_periods(m, 8)
    assert enum.periods == frozenset(range(1, 9))
    assert enum.complete
    for p, w in enum.witnesses.items():
        assert exact_period(m, w.point, p) == p


def test_stefan_fixed_point_is_interior(stefan3):
    w = find_fixed_point(connect_the_dots(stefan3))
    assert w.period == 1
    assert w.point == TreePoint.on_edge("x2", "x3", Fraction(1, 3))


def test_star_rotation_model(star_rotation):
    m = connect_the_dots(star_rotation)
    assert m.node_image["o"] == "o"
    spectral = spectral_radius(transition_matrix(m))
    assert spectral.at_most_one
    assert spectral.radius == pytest.approx(1.0, abs=1e-9)
    assert enumerate_periods(m, 6).periods == {1, 3}
    assert find_fixed_point(m).point == TreePoint.node("o")


def test_evaluate_is_linear_along_edges(stefan3):
    m = connect_the_dots(stefan3)
    # edge x2-x3 is stretched over the path x3, x2, x1
    x = TreePoint.on_edge("x2", "x3", Fraction(1, 4))
    assert m.evaluate(x) == TreePoint.on_edge("x2", "x3", Fraction(1, 2))
    assert m.iterate(TreePoint.node("x2"), 3) == TreePoint.node("x2")


def test_only_restricts_the_searched_periods(stefan3):
    enum = enumerate_periods(connect_the_dots(stefan3), 12, only=range(9, 13))
    assert enum.periods == {9, 10, 11, 12}


def test_budget_is_reported(stefan3):
    enum = enumerate_periods(connect_the_dots(stefan3), 12, OracleConfig(loop_budget=1), only=[12])
    assert enum.exceeded == [12]
    assert not enum.complete


def test_spectral_radius_of_nilpotent_and_reducible_matrices():
    assert spectral_radius(np.array([[0, 1], [0, 0]])).radius == 0.0
    result = spectral_radius(np.array([[2, 1], [0, 1]]))
    assert result.radius == pytest.approx(2.0, abs=1e-9)
    assert not result.at_most_one
    with pytest.raises(MapError):
        spectral_radius(np.array([[1, 0]]))
    with pytest.raises(MapError):
        spectral_radius(np.eye(2), tol=0)


def test_identity_on_an_edge_has_only_fixed_points():
    m = PLTreeMap(Tree.from_edges([(0, 1)]), {0: 0, 1: 1})
    assert enumerate_periods(m, 5).periods == {1}


def test_permutation_blocks_have_radius_one():
    result = spectral_radius(np.array([[0, 1], [1, 0]]))
    assert result.at_most_one
    assert result.radius == pytest.approx(1.0, abs=1e-9)
    assert result.entropy == pytest.approx(0.0, abs=1e-9)


def test_power_iteration_stops_at_a_relative_gap():
    # bounds after three steps are 2.6 and 2.625 for the shifted golden matrix
    coarse = spectral_radius(np.array([[0, 1], [1, 1]]), tol=0.01)
    assert coarse.radius == pytest.approx(1.6125, abs=1e-12)
    scaled = spectral_radius(np.array([[0, 1000], [1000, 1000]]), tol=1e-9)
    assert scaled.radius == pytest.approx(1000 * (1 + math.sqrt(5)) / 2, rel=1e-8)
