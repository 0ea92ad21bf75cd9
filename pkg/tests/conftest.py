import pytest

from treedyn.pattern import validate
from treedyn.tree_core import Tree


@pytest.fixture
def star3() -> Tree:
    return Tree.from_edges([("o", "a"), ("o", "b"), ("o", "c")])


@pytest.fixture
def h_tree() -> Tree:
    return Tree.from_edges([("a", "c"), ("b", "c"), ("c", "d"), ("d", "e"), ("d", "f")])


@pytest.fixture
def star_rotation(star3):
    return validate(star3, ["a", "b", "c"])


@pytest.fixture
def stefan3():
    """Period-3 interval orbit: middle, right, left."""
    return validate([("x1", "x2"), ("x2", "x3")], ["x2", "x3", "x1"])


@pytest.fixture
def simple4():
    """Simple period-4 interval orbit."""
    edges = [("p1", "p2"), ("p2", "p3"), ("p3", "p4")]
    return validate(edges, ["p1", "p3", "p2", "p4"])


@pytest.fixture
def rotation4():
    """Period-4 interval orbit moving one step right until it wraps; not simple."""
    edges = [("p1", "p2"), ("p2", "p3"), ("p3", "p4")]
    return validate(edges, ["p1", "p2", "p3", "p4"])
