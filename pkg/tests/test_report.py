"""Tests for bounded-ratio reports."""

import pytest

from lkapprox.bounds import BOUNDED_ABOVE, BOUNDED_BELOW, TWO_SIDED, RatioReport, select_n0
from lkapprox.spaces import DomainError


def make_report(kind, ratios, **kwargs):
    n_values = list(range(1, len(ratios) + 1))
    return RatioReport(
        name="test", kind=kind, n_values=n_values, computed=list(ratios),
        predicted=[1.0] * len(ratios), **kwargs
    )


class TestSelectN0:
    """Test the stabilization index."""

    def test_constant_ratio(self):
        """Test that a constant ratio starts the window at once."""
        assert select_n0(range(1, 10), [2.0] * 9) == 1

    def test_capped_at_middle(self):
        """Test that n0 never passes the middle of the range."""
        assert select_n0(range(1, 10), [2.0**n for n in range(1, 10)]) == 5

    def test_settles_late(self):
        """Test a ratio that settles after two steps."""
        ratios = [8.0, 4.0, 2.0, 2.0, 2.0, 2.0, 2.0, 2.0]
        assert select_n0(range(10, 18), ratios) == 12

    def test_single_point(self):
        """Test a single tabulated n."""
        assert select_n0([7], [3.0]) == 7

    def test_length_mismatch(self):
        """Test columns of different lengths."""
        with pytest.raises(DomainError):
            select_n0([1, 2], [1.0])


class TestRatioReport:
    """Test verdicts of ratio reports."""

    def test_bounded_above_constant(self):
        """Test a constant bounded-above ratio."""
        report = make_report(BOUNDED_ABOVE, [3.0] * 6)
        assert report.passed
        assert report.n0 == 1

    def test_bounded_above_growing(self):
        """Test that a geometrically growing ratio fails."""
        report = make_report(BOUNDED_ABOVE, [2.0**n for n in range(1, 10)])
        assert report.n0 == 5
        assert not report.passed

    def test_bounded_above_absolute_cap(self):
        """Test the absolute bound on the ratio."""
        assert not make_report(BOUNDED_ABOVE, [1.0] * 4, bound=0.5).passed
        assert make_report(BOUNDED_ABOVE, [1.0] * 4, bound=2.0).passed

    def test_bounded_below(self):
        """Test bounded-below verdicts."""
        assert make_report(BOUNDED_BELOW, [1.0] * 5).passed
        assert not make_report(BOUNDED_BELOW, [2.0**-n for n in range(1, 10)]).passed

    def test_two_sided(self):
        """Test two-sided verdicts against the limit."""
        assert make_report(TWO_SIDED, [1.0, 2.0, 1.5], n0=1, limit=4.0).passed
        assert not make_report(TWO_SIDED, [1.0, 2.0, 1.5], n0=1, limit=1.5).passed

    def test_window(self):
        """Test the judged window and its extremes."""
        report = make_report(TWO_SIDED, [5.0, 1.0, 2.0, 1.5], n0=2)
        assert report.window == (2, 4)
        assert report.min_ratio == 1.0
        assert report.max_ratio == 2.0
        assert report.spread == 2.0

    def test_rows(self):
        """Test the tabulated rows."""
        report = RatioReport(
            name="test", kind=TWO_SIDED, n_values=[1, 2], computed=[2.0, 3.0], predicted=[1.0, 2.0]
        )
        assert report.rows() == [(1, 2.0, 1.0, 2.0), (2, 3.0, 2.0, 1.5)]

    def test_verdict_line(self):
        """Test the one-line verdict."""
        line = make_report(BOUNDED_ABOVE, [3.0] * 4).verdict_line()
        assert line.startswith("test: bounded-above")
        assert line.endswith("PASS")

    def test_unknown_kind(self):
        """Test an unknown report kind."""
        with pytest.raises(DomainError):
            make_report("sideways", [1.0])

    def test_nonpositive_ratio(self):
        """Test a zero ratio."""
        with pytest.raises(DomainError):
            make_report(TWO_SIDED, [1.0, 0.0])

    def test_empty(self):
        """Test a report with no rows."""
        with pytest.raises(DomainError):
            make_report(TWO_SIDED, [])

    def test_column_mismatch(self):
        """Test columns of different lengths."""
        with pytest.raises(DomainError):
            RatioReport(name="test", kind=TWO_SIDED, n_values=[1, 2], computed=[1.0], predicted=[1.0])
