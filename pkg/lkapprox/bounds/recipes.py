"""Strategies producing members of the Besov class for the upper-bound experiment."""

import logging
import math
from abc import ABC, abstractmethod
from typing import Dict, List, Optional, Sequence, Tuple, Type

from lkapprox.spaces.besov import TheoremParams, dirichlet_block, extremal_f2, normalize_member
from lkapprox.spaces.errors import DomainError, EmptyIndexSetError
from lkapprox.spaces.norms import aniso_lk_norm
from lkapprox.spaces.spectral import (
    BlockIndex,
    CrossSpec,
    SpectralFunction,
    minimal_sizes,
    shell_kappa,
    synthesize,
)

logger = logging.getLogger(__name__)


class MemberRecipe(ABC):
    """Abstract base class for class-member generators."""

    name = "recipe"

    @abstractmethod
    def build(self, tp: TheoremParams, n: int) -> List[SpectralFunction]:
        """Build unnormalized polynomials for threshold ``n``.

        Args:
            tp: Theorem parameters
            n: Cross threshold

        Returns:
            List of polynomials; each is scaled to class functional 1 by :meth:`members`
        """
        pass

    def members(
        self, tp: TheoremParams, n: int, sizes: Optional[Sequence[int]] = None
    ) -> List[SpectralFunction]:
        """Class members with functional exactly 1."""
        members = []
        for g in self.build(tp, n):
            member, constant = normalize_member(g, tp.source, sizes)
            logger.debug("%s member for n=%d normalized by %.6e", self.name, n, constant)
            members.append(member)
        return members


def tightest_shell(tp: TheoremParams, n: int) -> List[BlockIndex]:
    """Blocks with ``<s, gamma'> = n``; axis blocks ``ceil(n / gamma'_j) e_j`` when that shell is empty."""
    shell = shell_kappa(CrossSpec(tp.gamma_prime, n))
    if shell:
        return shell
    blocks = []
    for axis, gp in enumerate(tp.gamma_prime):
        s = [0] * tp.dims
        s[axis] = math.ceil(n / gp)
        blocks.append(tuple(s))
    return sorted(set(blocks))


class F2FamilyRecipe(MemberRecipe):
    """Single weighted Dirichlet blocks on the tightest shell outside the cross."""

    name = "f2"

    def build(self, tp: TheoremParams, n: int) -> List[SpectralFunction]:
        return [extremal_f2(tp, n, s0) for s0 in tightest_shell(tp, n)]


class LacunaryMixtureRecipe(MemberRecipe):
    """Dirichlet blocks on the shells ``<s, gamma'> = n + offset`` mixed into one member.

    Each block gets the coefficient that makes its weighted seminorm term equal to 1, so
    no block dominates the mixture; blocks with negative offsets sit inside the cross
    and only enter the class functional.
    """

    name = "lacunary"

    def __init__(self, offsets: Tuple[int, ...] = (-2, -1, 0)):
        self.offsets = tuple(offsets)

    def build(self, tp: TheoremParams, n: int) -> List[SpectralFunction]:
        blocks = []
        for offset in self.offsets:
            if n + offset >= 0:
                blocks.extend(shell_kappa(CrossSpec(tp.gamma_prime, n + offset)))
        if not blocks:
            raise EmptyIndexSetError(f"no shell blocks for n={n} and offsets {self.offsets}")

        mixture = SpectralFunction.empty(tp.dims)
        for s in blocks:
            block = dirichlet_block(s)
            grid = minimal_sizes(block.bandwidth)
            smoothness = math.fsum(sj * rj for sj, rj in zip(s, tp.source.r))
            term = 2.0**smoothness * aniso_lk_norm(synthesize(block, grid), tp.source.space)
            mixture = mixture + block.scaled(1.0 / term)
        return [mixture]


RECIPES: Dict[str, Type[MemberRecipe]] = {
    F2FamilyRecipe.name: F2FamilyRecipe,
    LacunaryMixtureRecipe.name: LacunaryMixtureRecipe,
}


def get_recipe(name: str) -> MemberRecipe:
    """Instantiate a recipe by name.

    Raises:
        DomainError: If ``name`` is unknown
    """
    if name not in RECIPES:
        raise DomainError(f"unknown member recipe {name!r}; known: {sorted(RECIPES)}")
    return RECIPES[name]()
