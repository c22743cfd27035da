"""Brute-force sums over dyadic index sets and their predicted orders.

``I_n`` runs over the infinite complement ``Y(gamma', n) = {s : <s, gamma'> >= n}`` and is
truncated on a per-axis box whose size follows from a geometric tail majorant; ``J_n``
runs over the finite shell ``kappa(n, gamma) = {s : <s, gamma> = n}`` and is exact.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from lkapprox.bounds.report import BOUNDED_ABOVE, BOUNDED_BELOW, DEFAULT_LIMIT, RatioReport, log_progress
from lkapprox.spaces.errors import (
    DimensionMismatchError,
    DomainError,
    EmptyIndexSetError,
    HypothesisError,
    TailToleranceError,
)
from lkapprox.spaces.norms import mixed_seq_norm
from lkapprox.spaces.spectral import CrossSpec, DotComparator, capped_box, shell_kappa
from lkapprox.spaces.svfun import (
    CERT_EPS,
    RATIO_TOL,
    ClassReport,
    WeightV,
    check_svl_class,
    dyadic_grid,
)

logger = logging.getLogger(__name__)

DEFAULT_TAIL_TOL = 1e-8
CAP_LIMIT = 2**14


@dataclass(frozen=True)
class LemmaParams:
    """Parameters of the dyadic sums.

    ``exponents`` are the ``theta_j`` of ``I_n`` or the ``eps_j`` of ``J_n``; entries in
    ``(0, inf]``. ``weights`` default to ``V == 1``.
    """

    alpha: float
    gamma: Tuple[float, ...]
    gamma_prime: Tuple[float, ...]
    exponents: Tuple[float, ...]
    weights: Tuple[WeightV, ...] = ()
    certification: Tuple[ClassReport, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        gamma = tuple(float(v) for v in self.gamma)
        gamma_prime = tuple(float(v) for v in self.gamma_prime)
        exponents = tuple(float(v) for v in self.exponents)
        weights = tuple(self.weights) if self.weights else (WeightV(),) * len(gamma)
        if not len(gamma) == len(gamma_prime) == len(exponents) == len(weights):
            raise DimensionMismatchError("gamma, gamma', exponents and weights need equal lengths")
        if not self.alpha > 0:
            raise HypothesisError("alpha > 0", detail=f"alpha={self.alpha}")
        for axis, (g, gp) in enumerate(zip(gamma, gamma_prime), start=1):
            if not 0 < gp <= g * (1 + RATIO_TOL):
                raise HypothesisError("0 < gamma'_j <= gamma_j", axis, f"gamma'={gp}, gamma={g}")
        if any(not e > 0 for e in exponents):
            raise DomainError(f"exponents must lie in (0, inf], got {exponents}")

        certification = tuple(
            check_svl_class(w.base, CERT_EPS, dyadic_grid()) for w in weights
        )
        for axis, (w, report) in enumerate(zip(weights, certification), start=1):
            if not report.passed:
                logger.warning("weight %s on axis %d failed the SVL audit", w, axis)

        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "gamma_prime", gamma_prime)
        object.__setattr__(self, "exponents", exponents)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "certification", certification)

    @property
    def dims(self) -> int:
        return len(self.gamma)

    @property
    def delta(self) -> float:
        """``min_j gamma_j / gamma'_j``."""
        return min(g / gp for g, gp in zip(self.gamma, self.gamma_prime))

    @property
    def A(self) -> Tuple[int, ...]:
        """1-based axes attaining :attr:`delta`."""
        delta = self.delta
        return tuple(
            j
            for j, (g, gp) in enumerate(zip(self.gamma, self.gamma_prime), start=1)
            if abs(g / gp - delta) <= RATIO_TOL * delta
        )

    @property
    def j1(self) -> int:
        return min(self.A)


def _log2_weights(weights: Sequence[WeightV], s: Sequence[int]) -> float:
    return math.fsum(math.log2(w.at_dyadic(sj)) for w, sj in zip(weights, s))


def _inverse_power_sum(exponents: Sequence[float]) -> float:
    return math.fsum(0.0 if math.isinf(e) else 1.0 / e for e in exponents)


def lemma1_caps(lp: LemmaParams, n: float, tail_tol: float = DEFAULT_TAIL_TOL) -> Tuple[int, ...]:
    """Per-axis truncation of ``Y(gamma', n)``.

    Terms decay at least like ``2**(-d_j s_j)`` with ``d_j = alpha gamma_j / 2`` (the
    weights absorb the other half), so the tail past the cap is below ``tail_tol``
    relative to the leading term.

    Raises:
        DomainError: If ``tail_tol <= 0``
        TailToleranceError: If a cap exceeds :data:`CAP_LIMIT`
    """
    if not tail_tol > 0:
        raise DomainError(f"tail_tol must be positive, got {tail_tol}")
    caps = []
    for g, gp in zip(lp.gamma, lp.gamma_prime):
        decay = lp.alpha * g / 2.0
        tail = (math.log2(1.0 / tail_tol) + math.log2(1.0 / (1.0 - 2.0**-decay))) / decay
        caps.append(max(0, math.ceil(n / gp)) + math.ceil(tail) + 1)
    if max(caps) > CAP_LIMIT:
        raise TailToleranceError(
            f"tail tolerance {tail_tol:g} needs caps {tuple(caps)} beyond the limit {CAP_LIMIT}"
        )
    return tuple(caps)


def lemma1_sum(
    lp: LemmaParams,
    n: float,
    tail_tol: float = DEFAULT_TAIL_TOL,
    caps: Optional[Sequence[int]] = None,
) -> float:
    """``I_n``: mixed ``l_theta`` norm of ``2**(-alpha <s, gamma>) prod_j V_j(2**-s_j)`` over ``Y(gamma', n)``.

    Args:
        lp: Sum parameters; ``exponents`` are the ``theta_j``
        n: Threshold of the complement
        tail_tol: Relative size of the truncated tail
        caps: Explicit per-axis truncation overriding :func:`lemma1_caps`
    """
    caps = tuple(caps) if caps is not None else lemma1_caps(lp, n, tail_tol)
    if len(caps) != lp.dims:
        raise DimensionMismatchError(f"need {lp.dims} caps, got {len(caps)}")

    shape = tuple(c + 1 for c in caps)
    log_terms = np.zeros(shape)
    for axis, (cap, g, w) in enumerate(zip(caps, lp.gamma, lp.weights)):
        s = np.arange(cap + 1, dtype=float)
        axis_terms = -lp.alpha * g * s + np.log2(w.at_dyadic(s))
        view = [1] * lp.dims
        view[axis] = cap + 1
        log_terms = log_terms + axis_terms.reshape(view)

    inside = DotComparator(lp.gamma_prime, n).signs(capped_box(caps, lp.dims)) >= 0
    inside = inside.reshape(shape)
    if not np.any(inside):
        return 0.0

    shift = float(np.max(log_terms[inside]))
    terms = np.where(inside, np.exp2(log_terms - shift), 0.0)
    value = 2.0**shift * mixed_seq_norm(terms, lp.exponents)
    logger.debug("I_%g with caps %s = %.6e", n, caps, value)
    return value


def lemma1_bound(lp: LemmaParams, n: int) -> float:
    """``2**(-n alpha delta) prod_{j in A} V_j(2**-n) n**(sum_{A minus j1} 1/theta_j)``."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    A = lp.A
    weights = [lp.weights[j - 1] for j in A]
    power = _inverse_power_sum([lp.exponents[j - 1] for j in A if j != lp.j1])
    return 2.0 ** (-n * lp.alpha * lp.delta + _log2_weights(weights, [n] * len(A))) * float(n) ** power


def lemma2_sum(lp: LemmaParams, n: float) -> float:
    """``J_n``: mixed ``l_eps`` norm of ``2**(-alpha <s, gamma>) prod_j V_j(2**-s_j)`` over ``kappa(n, gamma)``.

    Raises:
        EmptyIndexSetError: If ``kappa(n, gamma)`` is empty
    """
    kappa = shell_kappa(CrossSpec(lp.gamma, n))
    if not kappa:
        raise EmptyIndexSetError(f"kappa(n={n}, gamma={lp.gamma}) is empty")

    terms = {s: 2.0 ** _log2_weights(lp.weights, s) for s in kappa}
    return 2.0 ** (-lp.alpha * n) * mixed_seq_norm(terms, lp.exponents)


def lemma2_bound(lp: LemmaParams, n: int) -> float:
    """``2**(-n alpha) prod_j V_j(2**-n) n**(sum_{j >= 2} 1/eps_j)``."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    power = _inverse_power_sum(lp.exponents[1:])
    return 2.0 ** (-n * lp.alpha + _log2_weights(lp.weights, [n] * lp.dims)) * float(n) ** power


def _echo(lp: LemmaParams) -> dict:
    return {
        "alpha": lp.alpha,
        "gamma": list(lp.gamma),
        "gamma_prime": list(lp.gamma_prime),
        "exponents": list(lp.exponents),
        "weights": [str(w) for w in lp.weights],
        "delta": lp.delta,
        "A": list(lp.A),
    }


def lemma1_report(
    lp: LemmaParams,
    n_values: Sequence[int],
    tail_tol: float = DEFAULT_TAIL_TOL,
    limit: float = DEFAULT_LIMIT,
    n0: Optional[int] = None,
) -> RatioReport:
    """Tabulate ``I_n / lemma1_bound`` and judge it bounded above."""
    computed, predicted = [], []
    for n in n_values:
        computed.append(lemma1_sum(lp, n, tail_tol))
        predicted.append(lemma1_bound(lp, n))
        log_progress("lemma1", n, computed[-1], predicted[-1])

    params = _echo(lp)
    params.update(tail_tol=tail_tol, caps=list(lemma1_caps(lp, max(n_values), tail_tol)))
    return RatioReport(
        name="lemma1",
        kind=BOUNDED_ABOVE,
        n_values=list(n_values),
        computed=computed,
        predicted=predicted,
        limit=limit,
        n0=n0,
        params=params,
    )


def lemma2_report(
    lp: LemmaParams,
    n_values: Sequence[int],
    limit: float = DEFAULT_LIMIT,
    n0: Optional[int] = None,
) -> RatioReport:
    """Tabulate ``J_n / lemma2_bound`` and judge it bounded below.

    ``n`` with an empty shell are skipped and listed in :attr:`RatioReport.skipped`.
    """
    kept, computed, predicted, skipped = [], [], [], []
    for n in n_values:
        try:
            value = lemma2_sum(lp, n)
        except EmptyIndexSetError as e:
            logger.warning("skipping n=%d: %s", n, e)
            skipped.append(n)
            continue
        kept.append(n)
        computed.append(value)
        predicted.append(lemma2_bound(lp, n))
        log_progress("lemma2", n, computed[-1], predicted[-1])

    return RatioReport(
        name="lemma2",
        kind=BOUNDED_BELOW,
        n_values=kept,
        computed=computed,
        predicted=predicted,
        limit=limit,
        n0=n0,
        params=_echo(lp),
        skipped=skipped,
    )
