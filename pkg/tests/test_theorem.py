"""Tests for the approximation-order experiments."""

import math

import pytest

from lkapprox.bounds import (
    BOUNDED_ABOVE,
    BOUNDED_BELOW,
    CASE1,
    CASE2,
    F2FamilyRecipe,
    LacunaryMixtureRecipe,
    approximation_error,
    certify_weights,
    get_recipe,
    lower_bound_error,
    theorem1_lower_experiment,
    theorem1_predicted,
    theorem1_regime,
    theorem1_upper_experiment,
)
from lkapprox.bounds.theorem import CERTIFIED, REJECTED
from lkapprox.spaces import (
    AliasingError,
    BesovParams,
    DomainError,
    HypothesisError,
    SpaceParams,
    TheoremParams,
    WeightV,
    besov_functional,
    dirichlet_block,
    project_onto_cross,
)

INF = math.inf


def make_theorem_params(
    p=(2.0, 2.0),
    q=(4.0, 4.0),
    r=(1.0, 1.0),
    theta=(INF, INF),
    tau2=(2.0, 2.0),
    weights=(),
    weights2=(),
    gamma_prime=(1.0, 1.0),
):
    source = BesovParams(
        SpaceParams(p=p, tau=p, weights=tuple(WeightV.parse(w) for w in weights)),
        r=r,
        theta=theta,
    )
    target = SpaceParams(p=q, tau=tau2, weights=tuple(WeightV.parse(w) for w in weights2))
    return TheoremParams(source=source, target=target, gamma_prime=gamma_prime)


@pytest.fixture
def univariate():
    """m = 1: p = 2, q = 4, r = 1, theta = inf, tau2 = 2, V = 1."""
    return make_theorem_params(p=(2.0,), q=(4.0,), r=(1.0,), theta=(INF,), tau2=(2.0,), gamma_prime=(1.0,))


class TestRegime:
    """Test regime detection and the predicted order."""

    def test_case1(self):
        """Test that tau2 < theta on every axis gives case 1."""
        assert theorem1_regime(make_theorem_params()) == CASE1

    def test_case2(self):
        """Test that theta <= tau2 on every axis gives case 2."""
        assert theorem1_regime(make_theorem_params(theta=(1.0, 1.0))) == CASE2

    def test_mixed_regime(self):
        """Test axes that fall into different regimes."""
        with pytest.raises(HypothesisError):
            theorem1_regime(make_theorem_params(theta=(1.0, INF)))

    def test_infinite_tau2(self):
        """Test that tau2 must be finite."""
        with pytest.raises(HypothesisError):
            theorem1_regime(make_theorem_params(tau2=(2.0, INF)))

    def test_predicted_case1(self):
        """Test the case-1 order with its power of n."""
        tp = make_theorem_params(weights2=("l1", "l1"))
        # 2**(-0.75 n) (1 + n)**2 n**(1/2) at n = 4
        assert theorem1_predicted(tp, 4) == pytest.approx(6.25)

    def test_predicted_case2(self):
        """Test the case-2 order without a power of n."""
        tp = make_theorem_params(theta=(1.0, 1.0), weights2=("l1", "l1"))
        assert theorem1_predicted(tp, 4) == pytest.approx(3.125)

    def test_predicted_single_axis(self, univariate):
        """Test the order in one variable."""
        assert theorem1_predicted(univariate, 8) == pytest.approx(2.0**-6)

    def test_predicted_weight_quotient(self):
        """Test that the order carries the weight quotient."""
        tp = make_theorem_params(weights=("l1", "1"), weights2=("l1^2", "1"), r=(1.0, 2.0))
        assert theorem1_predicted(tp, 4) == pytest.approx(2.0**-3 * 5)

    def test_regime_mismatch(self):
        """Test forcing the wrong regime."""
        with pytest.raises(HypothesisError):
            theorem1_predicted(make_theorem_params(), 4, regime=CASE2)

    def test_n_below_one(self):
        """Test that n must be at least 1."""
        with pytest.raises(DomainError):
            theorem1_predicted(make_theorem_params(), 0)


class TestWeightCertification:
    """Test the audit of the weight quotients."""

    def test_svl_branch(self):
        """Test that case 1 audits the SVL conditions."""
        certification = certify_weights(make_theorem_params(weights2=("l1", "l1")))
        assert certification.branch == "svl"
        assert certification.status == CERTIFIED

    def test_almost_increasing_branch(self):
        """Test the almost-increasing branch of case 2."""
        certification = certify_weights(make_theorem_params(theta=(1.0, 1.0), weights2=("l1", "l1")))
        assert certification.branch == "almost-increasing"
        assert certification.status == CERTIFIED

    def test_rejected(self):
        """Test a quotient that fails the audit."""
        certification = certify_weights(make_theorem_params(weights=("l1", "1")))
        assert certification.status == REJECTED

    def test_rejected_stops_experiment(self):
        """Test that a rejected audit stops the experiment."""
        tp = make_theorem_params(
            p=(2.0,), q=(4.0,), r=(1.0,), theta=(INF,), tau2=(2.0,), weights=("l1",),
            gamma_prime=(1.0,),
        )
        with pytest.raises(HypothesisError):
            theorem1_lower_experiment(tp, [3, 4])


class TestLowerExperiment:
    """Test the lower-bound experiment."""

    def test_univariate_ratio_is_bounded(self, univariate):
        """Test the lower ratio in one variable."""
        report = theorem1_lower_experiment(univariate, range(3, 7), limit=4.0)
        assert report.kind == BOUNDED_BELOW
        assert report.params["regime"] == CASE1
        assert report.spread <= 4.0
        assert report.passed

    def test_bivariate_members(self):
        """Test the certified bivariate setup with l1 target weights on both axes."""
        tp = make_theorem_params(weights2=("l1", "l1"))
        report = theorem1_lower_experiment(tp, [3, 4, 5])
        assert len(report.computed) == 3
        assert all(c > 0 for c in report.computed)
        assert report.params["A"] == [1, 2]
        assert report.params["weight_audit"] == CERTIFIED

    @pytest.mark.parametrize("weights2", [(), ("l1", "1")])
    def test_bivariate_ratio_within_factor_four(self, weights2):
        """Test that the m = 2 lower ratio stays in a factor-4 window."""
        tp = make_theorem_params(weights2=weights2)
        report = theorem1_lower_experiment(tp, range(3, 7), limit=4.0, n0=3)
        assert report.passed
        assert report.spread <= 4.0

    def test_case2_uses_single_blocks(self):
        """Test that the theta <= tau2 regime keeps a ratio that does not decay."""
        tp = make_theorem_params(theta=(1.0, 1.0), tau2=(4.0, 4.0))
        report = theorem1_lower_experiment(tp, range(3, 8), limit=4.0, n0=3)
        assert report.params["regime"] == CASE2
        assert report.passed
        assert report.ratios[-1] >= 0.75 * report.ratios[0]

    def test_lower_bound_error_regimes(self):
        """Test that both regimes agree in one variable, where f1 is a single block."""
        case2 = make_theorem_params(
            p=(2.0,), q=(4.0,), r=(1.0,), theta=(1.0,), tau2=(4.0,), gamma_prime=(1.0,)
        )
        case1 = make_theorem_params(
            p=(2.0,), q=(4.0,), r=(1.0,), theta=(INF,), tau2=(4.0,), gamma_prime=(1.0,)
        )
        assert lower_bound_error(case2, 5) == pytest.approx(lower_bound_error(case1, 5), rel=1e-9)

    def test_fixed_grid_too_coarse(self, univariate):
        """Test a fixed grid too small for the extremal member."""
        with pytest.raises(AliasingError):
            theorem1_lower_experiment(univariate, [3], sizes=(8,))


class TestUpperExperiment:
    """Test the upper-bound experiment and its member recipes."""

    def test_f2_matches_lower_in_one_variable(self, univariate):
        """Test that F2 and F1 give the same error in one variable."""
        lower = theorem1_lower_experiment(univariate, range(3, 7))
        upper = theorem1_upper_experiment(univariate, range(3, 7), F2FamilyRecipe())
        assert upper.kind == BOUNDED_ABOVE
        assert upper.params["recipes"] == ["f2"]
        for a, b in zip(lower.computed, upper.computed):
            assert a == pytest.approx(b, rel=1e-9)

    def test_lacunary_member(self):
        """Test that the lacunary member is normalized and meets the cross."""
        tp = make_theorem_params()
        members = LacunaryMixtureRecipe().members(tp, 4)
        assert len(members) == 1
        member = members[0]
        assert besov_functional(member, tp.source) == pytest.approx(1.0, rel=1e-9)
        assert not project_onto_cross(member, tp.cross(4)).is_empty
        assert approximation_error(member, tp, 4) > 0

    def test_member_inside_cross_has_no_error(self):
        """Test a member that the cross reproduces exactly."""
        tp = make_theorem_params()
        assert approximation_error(dirichlet_block((1, 0)), tp, 3) == 0.0

    def test_several_recipes(self):
        """Test the upper experiment over two recipes."""
        tp = make_theorem_params()
        report = theorem1_upper_experiment(tp, [3, 4], [F2FamilyRecipe(), LacunaryMixtureRecipe()])
        assert report.params["recipes"] == ["f2", "lacunary"]
        assert all(c > 0 for c in report.computed)

    @pytest.mark.parametrize("weights2", [(), ("l1", "1")])
    def test_bivariate_ratio_bounded_above(self, weights2):
        """Test that the m = 2 upper ratio stays bounded over the window."""
        tp = make_theorem_params(weights2=weights2)
        report = theorem1_upper_experiment(
            tp, range(3, 7), [F2FamilyRecipe(), LacunaryMixtureRecipe()], limit=4.0, n0=3
        )
        assert report.passed
        assert report.spread <= 4.0

    def test_absolute_bound(self, univariate):
        """Test that an absolute bound can fail the check."""
        report = theorem1_upper_experiment(univariate, range(3, 6), F2FamilyRecipe(), bound=1e-12)
        assert not report.passed

    def test_get_recipe(self):
        """Test looking up recipes by name."""
        assert isinstance(get_recipe("f2"), F2FamilyRecipe)
        with pytest.raises(DomainError):
            get_recipe("gaussian")
