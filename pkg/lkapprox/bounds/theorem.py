"""Order of the best hyperbolic-cross approximation of the Besov class and its experiments.

Two regimes are distinguished by the target's ``tau2`` against the class ``theta``:
``case1`` when ``tau2_j < theta_j`` on every axis, ``case2`` when ``theta_j <= tau2_j`` on
every axis. The predicted order is

    2**(-n (r_j0 + 1/q_j0 - 1/p_j0)) prod_{j in A} V2_j(2**-n) / V1_j(2**-n)

times ``n**(sum_{j in A minus j1} (1/tau2_j - 1/theta_j))`` in case 1.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from lkapprox.bounds.recipes import MemberRecipe, tightest_shell
from lkapprox.bounds.report import BOUNDED_ABOVE, BOUNDED_BELOW, DEFAULT_LIMIT, RatioReport, log_progress
from lkapprox.spaces.besov import TheoremParams, extremal_f1, extremal_f2, normalize_member
from lkapprox.spaces.errors import DomainError, HypothesisError
from lkapprox.spaces.norms import aniso_lk_norm
from lkapprox.spaces.spectral import (
    SpectralFunction,
    cross_residual,
    minimal_sizes,
    project_onto_cross,
    synthesize,
)
from lkapprox.spaces.svfun import (
    CERT_EPS,
    ClassReport,
    check_almost_increasing,
    check_svl_class,
    dyadic_grid,
)

logger = logging.getLogger(__name__)

CASE1 = "case1"
CASE2 = "case2"
REGIMES = (CASE1, CASE2)

CERTIFIED = "certified"
INCONCLUSIVE = "inconclusive"
REJECTED = "rejected"


def theorem1_regime(tp: TheoremParams) -> str:
    """Detect the regime from ``tau2`` and ``theta``.

    Raises:
        HypothesisError: If ``tau2`` is infinite or the axes fall into different regimes
    """
    tau2, theta = tp.target.tau, tp.source.theta
    for axis, t in enumerate(tau2, start=1):
        if math.isinf(t):
            raise HypothesisError("1 <= tau2_j < inf", axis)
    if all(t < th for t, th in zip(tau2, theta)):
        return CASE1
    if all(th <= t for t, th in zip(tau2, theta)):
        return CASE2
    raise HypothesisError(
        "tau2_j < theta_j for all j, or theta_j <= tau2_j for all j",
        detail=f"tau2={tau2}, theta={theta}",
    )


def _check_regime(tp: TheoremParams, regime: Optional[str]) -> str:
    detected = theorem1_regime(tp)
    if regime is None:
        return detected
    if regime not in REGIMES:
        raise DomainError(f"unknown regime {regime!r}; expected one of {REGIMES}")
    if regime != detected:
        raise HypothesisError(
            "tau2_j < theta_j" if regime == CASE1 else "theta_j <= tau2_j",
            detail=f"parameters belong to {detected}",
        )
    return regime


def theorem1_predicted(tp: TheoremParams, n: int, regime: Optional[str] = None) -> float:
    """Predicted order of the approximation error for threshold ``n``.

    Raises:
        DomainError: If ``n < 1``
        HypothesisError: If ``regime`` does not match the parameters
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    regime = _check_regime(tp, regime)
    derived = tp.derived
    log2_value = -n * tp.leading_exponent
    for j in derived.A:
        v2 = tp.target.weights[j - 1].at_dyadic(n)
        v1 = tp.source.space.weights[j - 1].at_dyadic(n)
        log2_value += math.log2(v2) - math.log2(v1)
    value = 2.0**log2_value
    if regime == CASE1:
        power = math.fsum(
            1.0 / tp.target.tau[j - 1] - 1.0 / tp.source.theta[j - 1]
            for j in derived.A
            if j != derived.j1
        )
        value *= float(n) ** power
    return value


@dataclass(frozen=True)
class WeightCertification:
    """Numerical audit of the weight quotients ``v2_j / v1_j``.

    ``branch`` is ``"svl"`` when the quotients must be SVL, or ``"almost-increasing"`` for
    the alternative hypothesis of case 2 with more than one axis in ``A``.
    """

    status: str
    branch: str
    reports: Tuple[ClassReport, ...]


def certify_weights(
    tp: TheoremParams, regime: Optional[str] = None, eps: float = CERT_EPS
) -> WeightCertification:
    """Audit the weight hypothesis of the regime; marginal audits are inconclusive."""
    regime = _check_regime(tp, regime)
    derived = tp.derived
    quotients = [
        v2.base / v1.base for v2, v1 in zip(tp.target.weights, tp.source.space.weights)
    ]
    if regime == CASE2 and len(derived.A) > 1:
        branch = "almost-increasing"
        reports = tuple(check_almost_increasing(w, eps, dyadic_grid()) for w in quotients)
    else:
        branch = "svl"
        reports = tuple(check_svl_class(w, eps, dyadic_grid()) for w in quotients)

    if not all(r.passed for r in reports):
        status = REJECTED
    elif any(r.marginal for r in reports):
        status = INCONCLUSIVE
    else:
        status = CERTIFIED
    logger.info("weight quotients %s: %s (%s branch)", [str(w) for w in quotients], status, branch)
    return WeightCertification(status=status, branch=branch, reports=reports)


def _require_weights(tp: TheoremParams, regime: str) -> WeightCertification:
    certification = certify_weights(tp, regime)
    if certification.status == REJECTED:
        hypothesis = "v2_j / v1_j in SVL" if certification.branch == "svl" else (
            "v2_j / v1_j almost increasing and t**-eps v2_j / v1_j almost decreasing"
        )
        failed = next(i for i, r in enumerate(certification.reports, start=1) if not r.passed)
        raise HypothesisError(hypothesis, failed)
    if certification.status == INCONCLUSIVE:
        logger.warning("weight hypothesis could not be certified; continuing")
    return certification


def _grid(g: SpectralFunction, sizes: Optional[Sequence[int]], oversample: int) -> Tuple[int, ...]:
    if sizes is not None:
        return tuple(int(n) for n in sizes)
    return minimal_sizes(g.bandwidth, oversample)


def approximation_error(
    g: SpectralFunction, tp: TheoremParams, n: int, sizes: Optional[Sequence[int]] = None
) -> float:
    """Target norm of ``g`` minus its projection onto ``Q_n^gamma'``."""
    residual = cross_residual(g, tp.cross(n))
    if residual.is_empty:
        return 0.0
    grid = _grid(g, sizes, 1)
    return aniso_lk_norm(synthesize(residual, grid), tp.target)


def _echo(tp: TheoremParams, regime: str, certification: WeightCertification) -> dict:
    return {
        "p": list(tp.source.space.p),
        "tau": list(tp.source.space.tau),
        "weights": [str(w) for w in tp.source.space.weights],
        "r": list(tp.source.r),
        "theta": list(tp.source.theta),
        "q": list(tp.target.p),
        "tau2": list(tp.target.tau),
        "weights2": [str(w) for w in tp.target.weights],
        "gamma_prime": list(tp.gamma_prime),
        "gamma": [round(g, 12) for g in tp.derived.gamma],
        "A": list(tp.derived.A),
        "regime": regime,
        "weight_audit": certification.status,
    }


def _extremal_error(
    g: SpectralFunction,
    tp: TheoremParams,
    n: int,
    sizes: Optional[Sequence[int]],
    oversample: int,
) -> float:
    """Target norm of ``g`` scaled to class functional 1; ``g`` must avoid the cross."""
    grid = _grid(g, sizes, oversample)
    member, constant = normalize_member(g, tp.source, grid)
    if not project_onto_cross(member, tp.cross(n)).is_empty:
        raise DomainError(f"extremal polynomial for n={n} has spectrum inside the cross")
    logger.debug("n=%d: C1=%.6e on grid %s", n, constant, grid)
    return aniso_lk_norm(synthesize(member, grid), tp.target)


def lower_bound_error(
    tp: TheoremParams,
    n: int,
    regime: Optional[str] = None,
    sizes: Optional[Sequence[int]] = None,
    oversample: int = 1,
) -> float:
    """Approximation error of the extremal class member for threshold ``n``.

    In ``case1`` the member is ``F1 = f1 / C1``, the weighted shell sum over the
    ``A``-axes. In ``case2`` it is the best single block ``F2 = f2 / C1`` over the
    tightest shell outside the cross. Both avoid the cross, so the error is the
    member's own target norm.

    Raises:
        AliasingError: If ``sizes`` is too coarse for the member
        HypothesisError: If ``regime`` does not match the parameters
    """
    regime = _check_regime(tp, regime)
    if regime == CASE1:
        return _extremal_error(extremal_f1(tp, n), tp, n, sizes, oversample)
    return max(
        _extremal_error(extremal_f2(tp, n, s0), tp, n, sizes, oversample)
        for s0 in tightest_shell(tp, n)
    )


def theorem1_lower_experiment(
    tp: TheoremParams,
    n_values: Sequence[int],
    sizes: Optional[Sequence[int]] = None,
    oversample: int = 1,
    limit: float = DEFAULT_LIMIT,
    n0: Optional[int] = None,
) -> RatioReport:
    """Error of the regime's extremal member against the predicted order.

    See :func:`lower_bound_error` for the member used in each regime.

    Raises:
        HypothesisError: If a hypothesis or the weight audit fails
        AliasingError: If ``sizes`` is too coarse for the extremal member
    """
    regime = theorem1_regime(tp)
    certification = _require_weights(tp, regime)

    computed, predicted = [], []
    for n in n_values:
        computed.append(lower_bound_error(tp, n, regime, sizes, oversample))
        predicted.append(theorem1_predicted(tp, n, regime))
        log_progress("theorem1-lower", n, computed[-1], predicted[-1])

    return RatioReport(
        name="theorem1-lower",
        kind=BOUNDED_BELOW,
        n_values=list(n_values),
        computed=computed,
        predicted=predicted,
        limit=limit,
        n0=n0,
        params=_echo(tp, regime, certification),
    )


def theorem1_upper_experiment(
    tp: TheoremParams,
    n_values: Sequence[int],
    recipes: Union[MemberRecipe, List[MemberRecipe]],
    sizes: Optional[Sequence[int]] = None,
    limit: float = DEFAULT_LIMIT,
    bound: Optional[float] = None,
    n0: Optional[int] = None,
) -> RatioReport:
    """Largest cross-projection error over the recipe members against the predicted order.

    Args:
        tp: Theorem parameters
        n_values: Thresholds to tabulate
        recipes: One or more member recipes; every member has class functional 1
        sizes: Fixed grid; the minimal grid of each member when omitted
        limit: Allowed growth of the ratio over the window
        bound: Absolute cap ``K`` on the ratio, overriding ``limit``
        n0: Start of the judged window
    """
    if isinstance(recipes, MemberRecipe):
        recipes = [recipes]
    regime = theorem1_regime(tp)
    certification = _require_weights(tp, regime)

    computed, predicted = [], []
    for n in n_values:
        errors = []
        for recipe in recipes:
            for member in recipe.members(tp, n, sizes):
                errors.append(approximation_error(member, tp, n, sizes))
        computed.append(max(errors))
        predicted.append(theorem1_predicted(tp, n, regime))
        log_progress("theorem1-upper", n, computed[-1], predicted[-1])

    params = _echo(tp, regime, certification)
    params["recipes"] = [recipe.name for recipe in recipes]
    return RatioReport(
        name="theorem1-upper",
        kind=BOUNDED_ABOVE,
        n_values=list(n_values),
        computed=computed,
        predicted=predicted,
        limit=limit,
        bound=bound,
        n0=n0,
        params=params,
    )
