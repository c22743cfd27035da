"""Dyadic-sum lemmas, the approximation theorem and bounded-ratio verdicts."""

from lkapprox.bounds.lemmas import (
    CAP_LIMIT,
    DEFAULT_TAIL_TOL,
    LemmaParams,
    lemma1_bound,
    lemma1_caps,
    lemma1_report,
    lemma1_sum,
    lemma2_bound,
    lemma2_report,
    lemma2_sum,
)
from lkapprox.bounds.recipes import (
    RECIPES,
    F2FamilyRecipe,
    LacunaryMixtureRecipe,
    MemberRecipe,
    get_recipe,
)
from lkapprox.bounds.report import (
    BOUNDED_ABOVE,
    BOUNDED_BELOW,
    SLOPE_TOL,
    TWO_SIDED,
    RatioReport,
    select_n0,
)
from lkapprox.bounds.theorem import (
    CASE1,
    CASE2,
    WeightCertification,
    approximation_error,
    certify_weights,
    lower_bound_error,
    theorem1_lower_experiment,
    theorem1_predicted,
    theorem1_regime,
    theorem1_upper_experiment,
)

__all__ = [
    # Reports
    "BOUNDED_ABOVE",
    "BOUNDED_BELOW",
    "TWO_SIDED",
    "SLOPE_TOL",
    "RatioReport",
    "select_n0",
    # Lemmas
    "CAP_LIMIT",
    "DEFAULT_TAIL_TOL",
    "LemmaParams",
    "lemma1_caps",
    "lemma1_sum",
    "lemma1_bound",
    "lemma1_report",
    "lemma2_sum",
    "lemma2_bound",
    "lemma2_report",
    # Class members
    "MemberRecipe",
    "F2FamilyRecipe",
    "LacunaryMixtureRecipe",
    "RECIPES",
    "get_recipe",
    # Theorem
    "CASE1",
    "CASE2",
    "WeightCertification",
    "theorem1_regime",
    "theorem1_predicted",
    "certify_weights",
    "approximation_error",
    "lower_bound_error",
    "theorem1_lower_experiment",
    "theorem1_upper_experiment",
]
