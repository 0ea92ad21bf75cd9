import math

from treedyn.analysis import PatternAnalyzer, budget_exceeded, thresholds_record
from treedyn.config import OracleConfig

GOLDEN = (1 + math.sqrt(5)) / 2


def test_star_rotation_report(star_rotation):
    report = PatternAnalyzer().analyze(star_rotation)
    assert report["pattern"] == {
        "period": 3,
        "orbit": ["a", "b", "c"],
        "hull_nodes": 4,
        "end_count": 3,
        "edge_count": 3,
    }
    assert report["snowflake"]["levels"] == [1, 3]
    assert report["forcing"]["ap_number"] is False
    assert report["forcing"]["zero_entropy_admissible"] is True
    assert report["forcing"]["misiurewicz_threshold"] == 24
    assert report["oracle"]["radius_at_most_one"] is True
    assert report["oracle"]["periods"] == [1, 3]
    assert report["oracle"]["multiples_witness"] is None
    assert report["synthesis"]["verified"] is True
    assert report["synthesis"]["periods"] == [1, 3]
    assert not budget_exceeded(report)


def test_stefan_report(stefan3):
    report = PatternAnalyzer().analyze(stefan3)
    assert report["snowflake"] == {"is_snowflake": False, "levels": None, "rejected_steps": [[1, 3]]}
    forcing = report["forcing"]
    assert forcing["ap_number"] is True
    assert forcing["forced_threshold"] == 8
    assert math.isclose(forcing["entropy_lower_bound"], math.log(2) / 5, abs_tol=1e-12)
    assert forcing["misiurewicz_threshold"] == 8
    oracle = report["oracle"]
    assert abs(oracle["radius"] - GOLDEN) <= 1e-9
    assert oracle["periods"] == [1, 2, 3, 4, 5, 6]
    assert oracle["multiples_witness"] == 1
    assert oracle["witnesses"]["3"]["loop"] == []
    assert "synthesis" not in report


def test_cutoff_bounds_the_period_search(stefan3):
    report = PatternAnalyzer().analyze(stefan3, cutoff=3)
    assert report["oracle"]["cutoff"] == 3
    assert report["oracle"]["periods"] == [1, 2, 3]


def test_budget_exceeded_in_report(stefan3):
    report = PatternAnalyzer(OracleConfig(loop_budget=1)).analyze(stefan3)
    assert report["oracle"]["budget_exceeded"]
    assert budget_exceeded(report)


def test_thresholds_record():
    record = thresholds_record(2, 1, 20)
    assert record["misiurewicz_threshold"] == 8
    assert record["admissible_periods"] == [1, 2, 4, 8, 16]
    assert record["ap_numbers"] == [3, 5, 7, 9, 11, 13, 15, 17, 19]
    assert thresholds_record(3, 3, 10)["misiurewicz_threshold"] == 24
