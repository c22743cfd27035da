"""Nikol'skii-Besov class functional, Dirichlet blocks and extremal polynomials.

A polynomial ``g`` belongs to the class when

    ||g||* + || { prod_j 2**(s_j r_j) ||delta_s(g)||* }_s ||_{l_theta} <= 1

with ``||.||*`` the anisotropic Lorentz-Karamata norm of the source space. The
functional is evaluated exactly on the sparse spectrum: each dyadic block is
synthesized on a grid above its Nyquist limit and measured separately.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from lkapprox.spaces.errors import (
    DimensionMismatchError,
    DomainError,
    EmptyIndexSetError,
    HypothesisError,
)
from lkapprox.spaces.norms import SpaceParams, aniso_lk_norm, mixed_seq_norm
from lkapprox.spaces.spectral import (
    BlockIndex,
    CrossSpec,
    DotComparator,
    SpectralFunction,
    block_decomposition,
    minimal_sizes,
    rho_set,
    shell_kappa,
    synthesize,
)
from lkapprox.spaces.svfun import RATIO_TOL

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BesovParams:
    """Source space plus smoothness ``r`` and block exponents ``theta``."""

    space: SpaceParams
    r: Tuple[float, ...]
    theta: Tuple[float, ...]

    def __post_init__(self):
        r = tuple(float(v) for v in self.r)
        theta = tuple(float(v) for v in self.theta)
        if not len(r) == len(theta) == self.space.dims:
            raise DimensionMismatchError(
                f"r, theta and the space need equal lengths, got {len(r)}, {len(theta)}, "
                f"{self.space.dims}"
            )
        if any(not v > 0 for v in r):
            raise DomainError(f"smoothness r must be positive, got {r}")
        if any(not v >= 1 for v in theta):
            raise DomainError(f"theta must lie in [1, inf], got {theta}")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "theta", theta)

    @property
    def dims(self) -> int:
        return self.space.dims


@dataclass(frozen=True)
class BesovParts:
    norm: float
    seminorm: float

    @property
    def total(self) -> float:
        return self.norm + self.seminorm


def _grid_for(g: SpectralFunction, sizes: Optional[Sequence[int]]) -> Tuple[int, ...]:
    return tuple(sizes) if sizes is not None else minimal_sizes(g.bandwidth)


def besov_parts(
    g: SpectralFunction, bp: BesovParams, sizes: Optional[Sequence[int]] = None
) -> BesovParts:
    """Norm and block seminorm of the class functional, reported separately.

    Raises:
        AliasingError: If ``sizes`` is below the Nyquist limit of ``g``
        DimensionMismatchError: If ``g`` and ``bp`` disagree on the number of variables
    """
    if g.dims != bp.dims:
        raise DimensionMismatchError(f"spectrum is {g.dims}-variate, class {bp.dims}-variate")
    if g.is_empty:
        return BesovParts(0.0, 0.0)

    grid = _grid_for(g, sizes)
    norm = aniso_lk_norm(synthesize(g, grid), bp.space)
    weighted = {}
    for s, block in block_decomposition(g).items():
        smoothness = math.fsum(sj * rj for sj, rj in zip(s, bp.r))
        weighted[s] = 2.0**smoothness * aniso_lk_norm(synthesize(block, grid), bp.space)
    seminorm = mixed_seq_norm(weighted, bp.theta)
    logger.debug("class functional on grid %s: norm=%g seminorm=%g", grid, norm, seminorm)
    return BesovParts(norm, seminorm)


def besov_functional(
    g: SpectralFunction, bp: BesovParams, sizes: Optional[Sequence[int]] = None
) -> float:
    """``||g||* + seminorm``; ``g`` is a class member when this is at most 1."""
    return besov_parts(g, bp, sizes).total


def normalize_member(
    g: SpectralFunction, bp: BesovParams, sizes: Optional[Sequence[int]] = None
) -> Tuple[SpectralFunction, float]:
    """Scale ``g`` to class functional 1; returns the scaled polynomial and the divisor."""
    constant = besov_functional(g, bp, sizes)
    if constant == 0:
        raise DomainError("cannot normalize the zero polynomial")
    return g.scaled(1.0 / constant), constant


def dirichlet_prediction(s: Sequence[int], space: SpaceParams) -> float:
    """Order ``prod_j 2**(s_j (1 - 1/p_j)) V_j(2**-s_j)`` of a Dirichlet block's norm."""
    if len(s) != space.dims:
        raise DimensionMismatchError(f"block {tuple(s)} does not have {space.dims} components")
    log2_power = math.fsum(sj * (1.0 - 1.0 / pj) for sj, pj in zip(s, space.p))
    weights = math.prod(float(w.at_dyadic(sj)) for sj, w in zip(s, space.weights))
    return 2.0**log2_power * weights


def dirichlet_block(
    s: Sequence[int], normalized_by: Optional[SpaceParams] = None
) -> SpectralFunction:
    """All-ones coefficients on ``rho(s)``, optionally divided by :func:`dirichlet_prediction`."""
    indices = rho_set(s)
    coeffs = np.ones(len(indices), dtype=complex)
    if normalized_by is not None:
        coeffs = coeffs / dirichlet_prediction(s, normalized_by)
    return SpectralFunction(len(s), indices, coeffs)


def block_norm_ratio(s: Sequence[int], space: SpaceParams, oversample: int = 1) -> float:
    """``||Dirichlet block||* / prediction``, bounded above and below in ``s``."""
    block = dirichlet_block(s)
    norm = aniso_lk_norm(synthesize(block, minimal_sizes(block.bandwidth, oversample)), space)
    return norm / dirichlet_prediction(s, space)


@dataclass(frozen=True)
class DerivedParams:
    """Quantities derived from the theorem parameters; axes are 1-based."""

    gamma: Tuple[float, ...]
    j0: int
    A: Tuple[int, ...]
    j1: int


def _axis_exponents(r, p, q) -> Tuple[float, ...]:
    return tuple(rj + 1.0 / qj - 1.0 / pj for rj, pj, qj in zip(r, p, q))


def derive_theorem_params(
    r: Sequence[float], p: Sequence[float], q: Sequence[float], gamma_prime: Sequence[float]
) -> DerivedParams:
    """``gamma_j = (r_j + 1/q_j - 1/p_j) / min_k (...)``, ``j0`` the argmin axis,
    ``A = {j : gamma_j = gamma'_j}`` and ``j1 = min A``."""
    exponents = _axis_exponents(r, p, q)
    smallest = min(exponents)
    gamma = tuple(e / smallest for e in exponents)
    j0 = exponents.index(smallest) + 1
    A = tuple(
        j for j, (g, gp) in enumerate(zip(gamma, gamma_prime), start=1)
        if abs(g / gp - 1.0) <= RATIO_TOL
    )
    if not A:
        raise HypothesisError("1 <= gamma'_j <= gamma_j", detail="no axis with gamma'_j = gamma_j")
    return DerivedParams(gamma=gamma, j0=j0, A=A, j1=min(A))


@dataclass(frozen=True)
class TheoremParams:
    """Source class, target space ``(q, tau2, V2)`` and the cross anisotropy ``gamma'``.

    Raises:
        HypothesisError: If ``1 < p_j < q_j``, ``r_j > 1/p_j - 1/q_j`` or
            ``1 <= gamma'_j <= gamma_j`` fails on some axis
    """

    source: BesovParams
    target: SpaceParams
    gamma_prime: Tuple[float, ...]
    derived: DerivedParams = field(init=False, repr=False)

    def __post_init__(self):
        gamma_prime = tuple(float(v) for v in self.gamma_prime)
        if not len(gamma_prime) == self.target.dims == self.source.dims:
            raise DimensionMismatchError("source, target and gamma' need the same number of axes")

        p, q, r = self.source.space.p, self.target.p, self.source.r
        for axis, (pj, qj) in enumerate(zip(p, q), start=1):
            if not 1 < pj < qj:
                raise HypothesisError("1 < p_j < q_j", axis, f"p={pj}, q={qj}")
        for axis, (rj, pj, qj) in enumerate(zip(r, p, q), start=1):
            if not rj > 1.0 / pj - 1.0 / qj:
                raise HypothesisError("r_j > 1/p_j - 1/q_j", axis, f"r={rj}, p={pj}, q={qj}")
        for axis, gp in enumerate(gamma_prime, start=1):
            if not gp >= 1.0 - RATIO_TOL:
                raise HypothesisError("1 <= gamma'_j <= gamma_j", axis, f"gamma'={gp}")

        derived = derive_theorem_params(r, p, q, gamma_prime)
        for axis, (gp, g) in enumerate(zip(gamma_prime, derived.gamma), start=1):
            if not gp <= g * (1.0 + RATIO_TOL):
                raise HypothesisError(
                    "1 <= gamma'_j <= gamma_j", axis, f"gamma'={gp}, gamma={g:.6g}"
                )
        object.__setattr__(self, "gamma_prime", gamma_prime)
        object.__setattr__(self, "derived", derived)

    @property
    def dims(self) -> int:
        return self.source.dims

    @property
    def leading_exponent(self) -> float:
        """``r_j0 + 1/q_j0 - 1/p_j0``."""
        return min(_axis_exponents(self.source.r, self.source.space.p, self.target.p))

    def cross(self, n: float) -> CrossSpec:
        return CrossSpec(self.gamma_prime, n)


def _extremal_weight(tp: TheoremParams, s0: BlockIndex) -> float:
    r, p = tp.source.r, tp.source.space.p
    weights = tp.source.space.weights
    log2_scale = -math.fsum(sj * (rj + 1.0 - 1.0 / pj) for sj, rj, pj in zip(s0, r, p))
    return 2.0**log2_scale / math.prod(float(w.at_dyadic(sj)) for sj, w in zip(s0, weights))


def extremal_f1(tp: TheoremParams, n: int) -> SpectralFunction:
    """Weighted Dirichlet blocks over the ``A``-axes shell ``<s, gamma> = n``.

    Blocks ``s0`` vanish outside ``A``; the polynomial is not normalized, see
    :func:`normalize_member`.

    Raises:
        DomainError: If ``n < 1``
        EmptyIndexSetError: If the shell is empty
    """
    if n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    derived = tp.derived
    gamma_a = tuple(derived.gamma[j - 1] for j in derived.A)
    kappa = shell_kappa(CrossSpec(gamma_a, n))
    if not kappa:
        raise EmptyIndexSetError(f"no block with <s, gamma> = {n} on axes {derived.A}")

    outer = (a for a in derived.A if a != derived.j1)
    prefactor = float(n) ** -math.fsum(1.0 / tp.source.theta[j - 1] for j in outer)
    total = SpectralFunction.empty(tp.dims)
    for reduced in kappa:
        s0 = [0] * tp.dims
        for axis, value in zip(derived.A, reduced):
            s0[axis - 1] = value
        total = total + dirichlet_block(s0).scaled(prefactor * _extremal_weight(tp, tuple(s0)))
    logger.debug("f1 for n=%d spans %d blocks", n, len(kappa))
    return total


def extremal_f2(tp: TheoremParams, n: float, s0: Sequence[int]) -> SpectralFunction:
    """Single weighted Dirichlet block on ``rho(s0)`` outside the cross ``Q_n^gamma'``.

    Raises:
        DomainError: If ``<s0, gamma'> < n`` (the block lies inside the cross)
    """
    block = tuple(int(v) for v in s0)
    if len(block) != tp.dims:
        raise DimensionMismatchError(f"block {block} does not have {tp.dims} components")
    if DotComparator(tp.gamma_prime, n).sign(block) < 0:
        raise DomainError(f"block {block} lies inside the cross for n={n}")
    return dirichlet_block(block).scaled(_extremal_weight(tp, block))
