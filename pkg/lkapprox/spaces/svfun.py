"""Slowly varying functions built from iterated logarithms.

An :class:`SVFunction` is ``scale * prod_i l_i(t) ** lam_i`` with
``l_1(t) = 1 + log2 t`` and ``l_i(t) = 1 + log2 l_{i-1}(t)``. The family is
closed under products, quotients and real powers, which is all the algebra the
approximation bounds need (e.g. the quotient ``v2 / v1`` of two weights).

:class:`WeightV` is the companion ``V(t) = v(1/t)`` on ``(0, 1]``.

Evaluation goes through :meth:`SVFunction.eval_log2`, which takes ``u = log2 t``;
``V(2**-s)`` is therefore computed from ``s`` directly and never forms ``2**s``.
"""

import logging
import re
from dataclasses import dataclass, field
from typing import Dict, Sequence, Tuple, Union

import numpy as np

from lkapprox.spaces.errors import DomainError, ParseError

logger = logging.getLogger(__name__)

C_SLACK = 1.05
# eps used when certifying weights as SVL or almost increasing
CERT_EPS = 0.25
# relative tolerance for equality of anisotropy ratios
RATIO_TOL = 1e-9

ArrayLike = Union[float, int, np.ndarray]

_FACTOR_PATTERN = re.compile(r"^l(\d+)(?:\^([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?))?$")
_NUMBER_PATTERN = re.compile(r"^[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?$")


def _format_number(value: float) -> str:
    text = repr(float(value))
    return text[:-2] if text.endswith(".0") else text


@dataclass(frozen=True)
class SVFunction:
    """Product of powers of iterated logarithms.

    Attributes:
        factors: (level, exponent) pairs; canonicalized on construction
        scale: Positive constant multiplier, equal to the value at t = 1
    """

    factors: Tuple[Tuple[int, float], ...] = ()
    scale: float = 1.0

    def __post_init__(self):
        if not self.scale > 0 or not np.isfinite(self.scale):
            raise DomainError(f"scale must be a positive finite number, got {self.scale}")

        merged: Dict[int, float] = {}
        for level, exponent in self.factors:
            if int(level) != level or level < 1:
                raise DomainError(f"iterated-log level must be a positive integer, got {level}")
            merged[int(level)] = merged.get(int(level), 0.0) + float(exponent)

        canonical = tuple(
            (level, exponent) for level, exponent in sorted(merged.items()) if exponent != 0.0
        )
        object.__setattr__(self, "factors", canonical)
        object.__setattr__(self, "scale", float(self.scale))

    @classmethod
    def constant(cls, value: float = 1.0) -> "SVFunction":
        """Constant function ``v(t) = value``."""
        return cls(factors=(), scale=value)

    @classmethod
    def iterated_log(cls, level: int, exponent: float = 1.0) -> "SVFunction":
        """Single factor ``l_level(t) ** exponent``."""
        return cls(factors=((level, exponent),))

    @classmethod
    def parse(cls, text: str) -> "SVFunction":
        """Parse the textual encoding, e.g. ``"2.0 * l1^0.5 * l2^-1"``.

        The scale is optional; factors are joined by ``*``; exponents follow ``^``.

        Raises:
            ParseError: If a token is neither a number nor an ``l<i>[^x]`` factor
        """
        tokens = [token.strip() for token in str(text).split("*")]
        if not tokens or any(not token for token in tokens):
            raise ParseError(f"empty factor in SV encoding: {text!r}")

        scale = 1.0
        factors = []
        for token in tokens:
            if _NUMBER_PATTERN.match(token):
                scale *= float(token)
                continue
            match = _FACTOR_PATTERN.match(token)
            if match is None:
                raise ParseError(f"cannot parse SV factor {token!r} in {text!r}")
            exponent = float(match.group(2)) if match.group(2) is not None else 1.0
            factors.append((int(match.group(1)), exponent))

        try:
            return cls(factors=tuple(factors), scale=scale)
        except DomainError as e:
            raise ParseError(f"invalid SV encoding {text!r}: {e}") from e

    @property
    def max_level(self) -> int:
        return self.factors[-1][0] if self.factors else 0

    @property
    def is_constant(self) -> bool:
        return not self.factors

    def eval_log2(self, u: ArrayLike) -> ArrayLike:
        """Evaluate at ``t = 2**u`` for ``u >= 0``.

        Args:
            u: log2 of the argument, scalar or array

        Returns:
            Value(s) of the function, same shape as ``u``

        Raises:
            DomainError: If any ``u < 0`` (i.e. ``t < 1``)
        """
        u_arr = np.asarray(u, dtype=float)
        if np.any(u_arr < 0) or np.any(np.isnan(u_arr)):
            raise DomainError("slowly varying functions are defined for t >= 1 only")

        value = np.full(u_arr.shape, self.scale)
        exponents = dict(self.factors)
        level_value = 1.0 + u_arr
        for level in range(1, self.max_level + 1):
            if level > 1:
                level_value = 1.0 + np.log2(level_value)
            if level in exponents:
                value = value * level_value ** exponents[level]

        if value.ndim == 0:
            return float(value)
        return value

    def __call__(self, t: ArrayLike) -> ArrayLike:
        return sv_eval(self, t)

    def __mul__(self, other: "SVFunction") -> "SVFunction":
        if not isinstance(other, SVFunction):
            return NotImplemented
        return SVFunction(factors=self.factors + other.factors, scale=self.scale * other.scale)

    def __truediv__(self, other: "SVFunction") -> "SVFunction":
        if not isinstance(other, SVFunction):
            return NotImplemented
        return sv_quotient(self, other)

    def __pow__(self, exponent: float) -> "SVFunction":
        return SVFunction(
            factors=tuple((level, lam * exponent) for level, lam in self.factors),
            scale=self.scale**exponent,
        )

    def __str__(self) -> str:
        parts = [
            f"l{level}" if exponent == 1.0 else f"l{level}^{_format_number(exponent)}"
            for level, exponent in self.factors
        ]
        if self.scale != 1.0 or not parts:
            parts.insert(0, _format_number(self.scale))
        return " * ".join(parts)


@dataclass(frozen=True)
class WeightV:
    """Weight ``V(t) = v(1/t)`` on ``(0, 1]`` attached to an SV function."""

    base: SVFunction = field(default_factory=SVFunction)

    @classmethod
    def parse(cls, text: str) -> "WeightV":
        return cls(SVFunction.parse(text))

    def __call__(self, t: ArrayLike) -> ArrayLike:
        return weight_eval(self, t)

    def at_dyadic(self, s: ArrayLike) -> ArrayLike:
        """``V(2**-s)`` for ``s >= 0``."""
        return self.base.eval_log2(s)

    def __truediv__(self, other: "WeightV") -> "WeightV":
        if not isinstance(other, WeightV):
            return NotImplemented
        return WeightV(sv_quotient(self.base, other.base))

    def __str__(self) -> str:
        return str(self.base)


def sv_eval(v: SVFunction, t: ArrayLike) -> ArrayLike:
    """Evaluate ``v`` at ``t >= 1``.

    Raises:
        DomainError: If ``t < 1``
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 1) or np.any(np.isnan(t_arr)):
        raise DomainError(f"sv_eval requires t >= 1, got {t}")
    return v.eval_log2(np.log2(t_arr) if t_arr.ndim else float(np.log2(t_arr)))


def weight_eval(weight: WeightV, t: ArrayLike) -> ArrayLike:
    """Evaluate ``V(t) = v(1/t)`` for ``t`` in ``(0, 1]``.

    Raises:
        DomainError: If ``t`` is outside ``(0, 1]``
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr <= 0) or np.any(t_arr > 1) or np.any(np.isnan(t_arr)):
        raise DomainError(f"weight_eval requires 0 < t <= 1, got {t}")
    u = -np.log2(t_arr)
    return weight.base.eval_log2(u if t_arr.ndim else float(u))


def sv_quotient(a: SVFunction, b: SVFunction) -> SVFunction:
    """Canonical representation of ``a / b``."""
    inverted = tuple((level, -exponent) for level, exponent in b.factors)
    return SVFunction(factors=a.factors + inverted, scale=a.scale / b.scale)


def dyadic_grid(kmax: int = 32) -> np.ndarray:
    """Audit grid ``t = 2**k``, ``k = 0..kmax``."""
    return np.exp2(np.arange(kmax + 1, dtype=float))


@dataclass(frozen=True)
class ClassReport:
    """Outcome of a numerical class-membership audit.

    ``burn_in`` maps each monotonicity check to the first grid index from which the
    sequence is monotone up to ``slack`` (``None`` when no such index exists within the
    allowed half of the grid).
    """

    passed: bool
    eps: float
    slack: float
    grid_size: int
    burn_in: Dict[str, int]
    marginal: bool = False

    def __bool__(self) -> bool:
        return self.passed


def _burn_in(log_values: np.ndarray, increasing: bool, log_slack: float) -> int:
    """First index from which ``log_values`` is monotone up to ``log_slack``."""
    last_bad = -1
    if increasing:
        suffix = np.inf
        for i in range(len(log_values) - 1, -1, -1):
            if log_values[i] > suffix + log_slack:
                last_bad = max(last_bad, i)
            suffix = min(suffix, log_values[i])
    else:
        suffix = -np.inf
        for i in range(len(log_values) - 1, -1, -1):
            if log_values[i] < suffix - log_slack:
                last_bad = max(last_bad, i)
            suffix = max(suffix, log_values[i])
    return last_bad + 1


def _validate_audit(eps: float, tgrid: Sequence[float]) -> np.ndarray:
    grid = np.asarray(tgrid, dtype=float)
    if grid.size == 0:
        raise DomainError("audit grid is empty")
    if eps <= 0:
        raise DomainError(f"eps must be positive, got {eps}")
    if grid[0] < 1 or np.any(np.diff(grid) <= 0):
        raise DomainError("audit grid must be strictly increasing and start at t >= 1")
    return grid


def _audit(
    checks: Dict[str, Tuple[np.ndarray, bool]], eps: float, slack: float, size: int
) -> ClassReport:
    log_slack = float(np.log2(slack))
    burn_in = {}
    for name, (log_values, increasing) in checks.items():
        burn_in[name] = _burn_in(log_values, increasing, log_slack)

    half, quarter = (size - 1) // 2, (size - 1) // 4
    passed = all(k0 <= half for k0 in burn_in.values())
    marginal = passed and any(k0 > quarter for k0 in burn_in.values())
    return ClassReport(
        passed=passed, eps=eps, slack=slack, grid_size=size, burn_in=burn_in, marginal=marginal
    )


def check_sv_class(
    v: SVFunction, eps: float, tgrid: Sequence[float], slack: float = C_SLACK
) -> ClassReport:
    """Audit that ``t**eps v(t)`` is almost non-decreasing and ``t**-eps v(t)`` almost
    non-increasing on ``tgrid``.

    Each sequence must be monotone up to the factor ``slack`` from a burn-in index on;
    the audit passes when every burn-in lies in the first half of the grid.

    Raises:
        DomainError: If the grid is empty or malformed, or ``eps <= 0``
    """
    grid = _validate_audit(eps, tgrid)
    u = np.log2(grid)
    log_v = np.log2(v.eval_log2(u))
    checks = {
        "power_increasing": (eps * u + log_v, True),
        "power_decreasing": (-eps * u + log_v, False),
    }
    report = _audit(checks, eps, slack, grid.size)
    logger.debug("SV audit of %s (eps=%g): %s", v, eps, report.burn_in)
    return report


def check_svl_class(
    v: SVFunction, eps: float, tgrid: Sequence[float], slack: float = C_SLACK
) -> ClassReport:
    """Audit the SVL conditions: SV conditions plus ``(log2 2t)**eps v(t)`` almost
    non-decreasing.

    Raises:
        DomainError: If the grid is empty or malformed, or ``eps <= 0``
    """
    grid = _validate_audit(eps, tgrid)
    u = np.log2(grid)
    log_v = np.log2(v.eval_log2(u))
    checks = {
        "power_increasing": (eps * u + log_v, True),
        "power_decreasing": (-eps * u + log_v, False),
        "log_increasing": (eps * np.log2(1.0 + u) + log_v, True),
    }
    report = _audit(checks, eps, slack, grid.size)
    logger.debug("SVL audit of %s (eps=%g): %s", v, eps, report.burn_in)
    return report


def check_almost_increasing(
    v: SVFunction, eps: float, tgrid: Sequence[float], slack: float = C_SLACK
) -> ClassReport:
    """Audit that ``v`` is almost non-decreasing and ``t**-eps v(t)`` almost non-increasing.

    Raises:
        DomainError: If the grid is empty or malformed, or ``eps <= 0``
    """
    grid = _validate_audit(eps, tgrid)
    u = np.log2(grid)
    log_v = np.log2(v.eval_log2(u))
    checks = {
        "increasing": (log_v, True),
        "power_decreasing": (-eps * u + log_v, False),
    }
    report = _audit(checks, eps, slack, grid.size)
    logger.debug("almost-increasing audit of %s (eps=%g): %s", v, eps, report.burn_in)
    return report
