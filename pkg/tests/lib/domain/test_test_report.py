"""Tests for TestReport and combine_reports."""

import pytest
from cei_paths.domain.test_report import TestReport, combine_reports
from pydantic import ValidationError


def _random_report(name: str, p_value: float, passed: bool) -> TestReport:
    return TestReport(
        name=name, statistic=0.1, p_value=p_value, n_samples=(10, 10), passed=passed
    )


def test_exactly_one_kind_of_evidence():
    """Test that p_value and exact_pass are mutually exclusive."""
    with pytest.raises(ValidationError):
        TestReport(name="x", statistic=0.0, passed=True)
    with pytest.raises(ValidationError):
        TestReport(name="x", statistic=0.0, p_value=0.5, exact_pass=True, passed=True)


def test_exact_failure_cannot_pass():
    """Test that an exact check with exact_pass False cannot be marked passed."""
    with pytest.raises(ValidationError):
        TestReport(name="x", statistic=1.0, exact_pass=False, passed=True)


def test_dict_round_trip():
    """Test to_dict / from_dict with sorted details."""
    report = TestReport(
        name="ks",
        statistic=0.02,
        p_value=0.4,
        n_samples=(100, 200),
        seed=9,
        passed=True,
        details={"b": 2.0, "a": 1.0},
    )

    data = report.to_dict()

    assert list(data["details"]) == ["a", "b"]
    assert data["n_samples"] == [100, 200]
    assert TestReport.from_dict(data) == report


def test_combine_random_reports():
    """Test that a combined report keeps the smallest p-value and the worst verdict."""
    combined = combine_reports(
        "both", [_random_report("a", 0.3, True), _random_report("b", 0.0001, False)], seed=1
    )

    assert combined.p_value == 0.0001
    assert not combined.passed
    assert combined.details["a.p_value"] == 0.3
    assert combined.details["b.passed"] == 0.0


def test_combine_exact_reports_stays_exact():
    """Test that combining exact reports yields an exact report."""
    exact = TestReport(name="e", statistic=0.0, exact_pass=True, passed=True)

    combined = combine_reports("all", [exact], seed=0, details={"extra": 1.5})

    assert combined.exact_pass is True
    assert combined.p_value is None
    assert combined.details["extra"] == 1.5


def test_combine_with_extra_criterion():
    """Test that extra_passed can fail an otherwise passing report."""
    combined = combine_reports("x", [_random_report("a", 0.5, True)], seed=0, extra_passed=False)

    assert not combined.passed


def test_renamed():
    """Test renaming with an optional new seed."""
    report = _random_report("a", 0.5, True)

    renamed = report.renamed("b", seed=4)

    assert renamed.name == "b"
    assert renamed.seed == 4
    assert renamed.p_value == report.p_value
