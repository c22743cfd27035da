"""Exception types raised by lkapprox."""

from typing import Optional


class LKError(Exception):
    """Base class for all lkapprox errors."""


class DomainError(LKError, ValueError):
    """An argument lies outside the domain of an operation."""


class DimensionMismatchError(LKError, ValueError):
    """Per-axis parameters do not match the number of variables."""


class AliasingError(LKError, ValueError):
    """A sampling grid is too coarse for the spectrum placed on it."""


class CatalogError(LKError, KeyError):
    """Unknown entry in the test-function catalog."""


class ParseError(LKError, ValueError):
    """Malformed textual input (SV encodings, config files)."""


class EmptyIndexSetError(LKError):
    """An index set needed by a construction has no elements."""


class TailToleranceError(LKError):
    """Requested truncation tolerance cannot be met within the cap limit."""


class HypothesisError(LKError, ValueError):
    """A hypothesis of a lemma or theorem is violated.

    Attributes:
        hypothesis: Short statement of the violated condition, e.g. "1 < p_j < q_j"
        axis: 1-based axis index where the violation was found (None if global)
    """

    def __init__(self, hypothesis: str, axis: Optional[int] = None, detail: str = ""):
        self.hypothesis = hypothesis
        self.axis = axis
        where = f" (axis {axis})" if axis is not None else ""
        message = f"hypothesis violated: {hypothesis}{where}"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)
