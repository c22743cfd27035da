"""Tests for slowly varying functions and their class audits."""

import numpy as np
import pytest

from lkapprox.spaces import (
    DomainError,
    ParseError,
    SVFunction,
    WeightV,
    check_sv_class,
    check_svl_class,
    sv_quotient,
)
from lkapprox.spaces.svfun import check_almost_increasing, dyadic_grid, sv_eval, weight_eval


@pytest.fixture
def grid():
    """Default audit grid t = 2**k, k = 0..32."""
    return dyadic_grid()


class TestParse:
    """Test the textual SV encoding."""

    def test_parse_scale_and_factors(self):
        """Test parsing a scale with several factors."""
        v = SVFunction.parse("2.0 * l1^0.5 * l2^-1")
        assert v.scale == 2.0
        assert v.factors == ((1, 0.5), (2, -1.0))

    def test_parse_bare_factor(self):
        """Test that a bare factor gets exponent 1."""
        assert SVFunction.parse("l1").factors == ((1, 1.0),)

    def test_parse_constant(self):
        """Test that "1" parses to the constant function."""
        v = SVFunction.parse("1")
        assert v.is_constant
        assert str(v) == "1"

    def test_str_round_trip(self):
        """Test that str() parses back to the same function."""
        assert str(SVFunction.parse("l1^0.5")) == "l1^0.5"
        assert SVFunction.parse(str(SVFunction.parse("3 * l2^-2"))) == SVFunction.parse("3 * l2^-2")

    def test_repeated_levels_merge(self):
        """Test that factors of the same level merge."""
        assert SVFunction.parse("l1 * l1^2").factors == ((1, 3.0),)

    @pytest.mark.parametrize("text", ["x3", "l0", "l1^", "", "l1 * * l2", "-2"])
    def test_parse_rejects_malformed(self, text):
        """Test rejection of malformed encodings."""
        with pytest.raises(ParseError):
            SVFunction.parse(text)


class TestEvaluation:
    """Test evaluation of v and V."""

    def test_l1_at_power_of_two(self):
        """Test l1 at t = 8."""
        assert sv_eval(SVFunction.iterated_log(1), 8.0) == pytest.approx(4.0)

    def test_l2_at_power_of_two(self):
        """Test l2 at t = 8."""
        # l1(8) = 4, l2(8) = 1 + log2 4
        assert sv_eval(SVFunction.iterated_log(2), 8.0) == pytest.approx(3.0)

    def test_constant_everywhere(self):
        """Test that a constant ignores its argument."""
        v = SVFunction.constant(2.5)
        assert np.allclose(v.eval_log2(np.array([0.0, 10.0, 1000.0])), 2.5)

    def test_value_at_one_is_scale(self):
        """Test that every factor is 1 at t = 1."""
        assert SVFunction.parse("3 * l1^-2 * l3").eval_log2(0.0) == pytest.approx(3.0)

    def test_sv_eval_below_one_raises(self):
        """Test that v is undefined below t = 1."""
        with pytest.raises(DomainError):
            sv_eval(SVFunction.iterated_log(1), 0.5)

    def test_weight_eval(self):
        """Test V(t) = v(1/t)."""
        assert weight_eval(WeightV.parse("l1"), 0.25) == pytest.approx(3.0)

    @pytest.mark.parametrize("t", [0.0, -1.0, 1.5])
    def test_weight_eval_outside_unit_interval_raises(self, t):
        """Test that V is only defined on (0, 1]."""
        with pytest.raises(DomainError):
            weight_eval(WeightV.parse("l1"), t)

    def test_at_dyadic_never_overflows(self):
        """Test V at 2**-n for large n."""
        V = WeightV.parse("l1")
        assert V.at_dyadic(10) == pytest.approx(11.0)
        assert V.at_dyadic(1000) == pytest.approx(1001.0)

    def test_array_evaluation(self):
        """Test vectorized evaluation."""
        V = WeightV.parse("l1^2")
        assert np.allclose(V.at_dyadic(np.arange(4)), [1.0, 4.0, 9.0, 16.0])


class TestAlgebra:
    """Test products, quotients and powers."""

    def test_quotient_cancels(self):
        """Test that equal factors cancel in a quotient."""
        l1 = SVFunction.iterated_log(1)
        assert sv_quotient(l1**2, l1).factors == ((1, 1.0),)
        assert sv_quotient(l1, l1).is_constant

    def test_product(self):
        """Test multiplying two functions."""
        v = SVFunction.iterated_log(1) * SVFunction.iterated_log(2, -1.0)
        assert v.factors == ((1, 1.0), (2, -1.0))

    def test_weight_quotient(self):
        """Test the quotient of two weights."""
        q = WeightV.parse("l1^2") / WeightV.parse("2 * l1")
        assert q.base.factors == ((1, 1.0),)
        assert q.base.scale == pytest.approx(0.5)

    def test_nonpositive_scale_rejected(self):
        """Test that the scale must be positive."""
        with pytest.raises(DomainError):
            SVFunction(scale=0.0)


class TestAudits:
    """Test the numerical class audits."""

    def test_log_is_sv_with_late_burn_in(self, grid):
        """Test that l1 is SV with a late burn-in for small eps."""
        report = check_sv_class(SVFunction.iterated_log(1), 0.1, grid)
        assert report.passed
        assert report.burn_in["power_increasing"] == 0
        assert report.burn_in["power_decreasing"] == 10
        assert report.marginal

    def test_constant_is_sv(self, grid):
        """Test that constants pass every SV condition at once."""
        report = check_sv_class(SVFunction.constant(), 0.1, grid)
        assert report.passed
        assert not report.marginal
        assert all(k0 == 0 for k0 in report.burn_in.values())

    def test_large_log_power_fails(self, grid):
        """Test that l1**40 fails on the default grid."""
        assert not check_sv_class(SVFunction.iterated_log(1, 40.0), 0.1, grid).passed

    def test_inverse_log_is_not_svl(self, grid):
        """Test that 1/l1 is not SVL for eps = 0.25."""
        report = check_svl_class(SVFunction.iterated_log(1, -1.0), 0.25, grid)
        assert not report.passed
        assert report.burn_in["log_increasing"] > 16

    def test_inverse_log_is_svl_for_eps_one(self, grid):
        """Test that 1/l1 passes the SVL audit once eps reaches 1."""
        report = check_svl_class(SVFunction.parse("l1^-1"), 1.0, grid)
        assert report.passed
        assert report.burn_in["log_increasing"] == 0

    def test_positive_log_power_is_svl(self, grid):
        """Test that l1 is SVL."""
        report = check_svl_class(SVFunction.iterated_log(1), 0.25, grid)
        assert report.passed
        assert not report.marginal

    def test_almost_increasing(self, grid):
        """Test the almost-increasing audit on l1."""
        report = check_almost_increasing(SVFunction.iterated_log(1), 0.25, grid)
        assert report.passed
        assert report.burn_in["increasing"] == 0
        assert report.burn_in["power_decreasing"] == 4

    def test_almost_increasing_rejects_decreasing(self, grid):
        """Test that 1/l1 is not almost increasing."""
        assert not check_almost_increasing(SVFunction.iterated_log(1, -1.0), 0.25, grid).passed

    def test_empty_grid_raises(self):
        """Test auditing on an empty grid."""
        with pytest.raises(DomainError):
            check_sv_class(SVFunction.constant(), 0.1, [])

    def test_nonpositive_eps_raises(self, grid):
        """Test that eps must be positive."""
        with pytest.raises(DomainError):
            check_svl_class(SVFunction.constant(), 0.0, grid)

    def test_report_truthiness(self, grid):
        """Test that a passing report is truthy."""
        assert check_sv_class(SVFunction.constant(), 0.1, grid)
